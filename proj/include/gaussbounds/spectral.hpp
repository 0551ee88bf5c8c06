#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaussbounds/matkit.hpp"

namespace gaussbounds {

struct GeneralizedEigen {
  VectorXd values;   ///< ascending
  MatrixXd vectors;  ///< columns, S-normalized
};

/// H c = E S c by reduction with the Cholesky factor of S.  Throws OverlapError
/// with the failing row when S is not positive definite.
GeneralizedEigen solve_generalized(const MatrixXd& h, const MatrixXd& s);

struct SpectralMatrices {
  MatrixXd h;
  MatrixXd s;
  MatrixXd h2;
  VectorXd ritz_values;
  VectorXd ground_vector;

  /// Fills ritz_values and ground_vector from h and s.
  void solve();
};

struct RayleighVariance {
  double energy = 0.0;
  double variance = 0.0;
};

/// E = c^T H c / c^T S c and sigma^2 = c^T H2 c / c^T S c - E^2 (unclamped).
RayleighVariance rayleigh_and_variance(const SpectralMatrices& m, const VectorXd& c);

/// E - sigma
double weinstein(double energy, double sigma2);
/// E - sigma^2 / (beta - E); throws BetaNotAboveE unless beta > E.
double temple(double energy, double sigma2, double beta);
/// alpha - sqrt((alpha - E)^2 + sigma^2)
double stevenson(double energy, double sigma2, double alpha);

/// Variances in (-kVarianceTolerance, 0) are clamped to zero with a warning;
/// anything more negative is an error.
inline constexpr double kVarianceTolerance = 1e-9;

struct BoundsOptions {
  /// Explicit Temple gap parameter; the second Ritz value is used otherwise.
  std::optional<double> beta;
  std::optional<double> stevenson_alpha;
};

struct BoundsReport {
  double energy_upper = 0.0;
  double variance = 0.0;
  double beta = 0.0;
  std::string beta_source;  ///< "ritz2" or "explicit"
  double weinstein_lb = 0.0;
  std::optional<double> temple_lb;
  std::optional<double> stevenson_lb;
  std::optional<double> stevenson_alpha;
  bool temple_valid = false;
  /// Weinstein's bound holds only for the eigenvalue closest to E; always set.
  bool weinstein_caveat = true;
  std::vector<std::string> warnings;
};

/// Bounds for the Ritz ground vector of `m` (solved on demand).
BoundsReport compute_bounds(SpectralMatrices& m, const BoundsOptions& opt = {});

}  // namespace gaussbounds
