#pragma once

// Brute-force reference values for differential testing.  Nothing here shares
// code with the analytic kernels beyond the pair product itself.

#include <cstdint>
#include <functional>
#include <optional>

#include "gaussbounds/ecg.hpp"
#include "gaussbounds/quadrature.hpp"

namespace gaussbounds {

enum class OracleMethod { Mc, Radial, MarginalPair };

struct OracleEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  OracleMethod method = OracleMethod::Mc;
};

using SampleFunction = std::function<double(const CoordsXd&)>;

struct McOptions {
  long long samples = 1'000'000;
  std::uint64_t seed = 1;
  int threads = 1;
  long long block_size = 1 << 16;
};

/// S_kl E[f(r)] with r drawn from the normalized product Gaussian
/// N(m, (A_kl^-1 / 2) (x) I_3).  Blocks of samples use independent streams
/// derived from the seed and are reduced in block order, so the result does not
/// depend on the thread count.
OracleEstimate mc_expectation(const PairProduct& pp, const SampleFunction& f, const McOptions& opt = {});

/// Joint Gaussian of u = w1^T r and w = w2^T r under the product weight: each
/// Cartesian component has covariance `covariance` (2 x 2).
struct MarginalPair {
  Eigen::Matrix2d covariance;
  Vector3d mean1;
  Vector3d mean2;
};

MarginalPair marginal_pair_density(const PairProduct& pp, const PairCoupling& first,
                                   const PairCoupling& second);

/// S_kl E[g(u, w)] by sampling the six-dimensional marginal only.
OracleEstimate marginal_pair_mc(const PairProduct& pp, const PairCoupling& first,
                                const PairCoupling& second,
                                const std::function<double(const Vector3d&, const Vector3d&)>& g,
                                const McOptions& opt = {});

/// S_kl E[g(|w^T r - centre|)] as a one-dimensional radial integral over the exact
/// noncentral marginal density.  No statistical error.
OracleEstimate radial_expectation(const PairProduct& pp, const PairCoupling& coupling,
                                  const std::optional<Vector3d>& center,
                                  const std::function<double(double)>& g, const QuadratureSpec& spec = {
                                      1e-12, 1e-300, 2000, QuadratureTransform::None});

}  // namespace gaussbounds
