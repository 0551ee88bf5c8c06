#pragma once

#include <functional>
#include <limits>

#include "gaussbounds/error.hpp"

namespace gaussbounds {

enum class QuadratureTransform {
  None,
  /// x = lo + (hi - lo) y^2: removes an inverse-square-root singularity at lo.
  SqrtEndpoint,
  /// x = lo + w / (1 - w): maps [lo, inf) onto [0, 1).
  RationalInfinite,
};

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
  QuadratureTransform transform = QuadratureTransform::None;

  QuadratureSpec with_transform(QuadratureTransform t) const {
    QuadratureSpec out = *this;
    out.transform = t;
    return out;
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = false;
};

struct Interval {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

class QuadratureError : public Error {
 public:
  QuadratureError(const QuadratureResult& best, const std::string& what)
      : Error(ErrorKind::QuadratureFailure, what), best_(best) {}
  const QuadratureResult& best() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature.  An infinite upper
/// limit always uses the rational map.  Never throws on non-convergence: the
/// converged flag is cleared instead.  Non-finite integrand values do throw.
QuadratureResult try_integrate(const Integrand& f, Interval interval, const QuadratureSpec& spec);

/// As try_integrate, but throws QuadratureError when tolerances are not met.
QuadratureResult integrate(const Integrand& f, Interval interval, const QuadratureSpec& spec);

}  // namespace gaussbounds
