#include "gaussbounds/spectral.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace gaussbounds {

GeneralizedEigen solve_generalized(const MatrixXd& h, const MatrixXd& s) {
  const Eigen::Index n = s.rows();
  if (h.rows() != n || h.cols() != n || s.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "H and S must be square and of equal size");
  }
  MatrixXd l;
  const Eigen::Index row = try_cholesky(s, l);
  if (row >= 0) {
    throw OverlapError(static_cast<long>(row),
                       "overlap matrix is not positive definite at basis row " + std::to_string(row));
  }
  const auto lower = l.triangularView<Eigen::Lower>();
  // L^-1 H L^-T
  MatrixXd reduced = lower.solve(h);
  reduced = lower.solve(reduced.transpose()).transpose();
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(reduced);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::DomainError, "symmetric eigensolver did not converge");
  }
  GeneralizedEigen out;
  out.values = eig.eigenvalues();
  out.vectors = l.transpose().triangularView<Eigen::Upper>().solve(eig.eigenvectors());
  return out;
}

void SpectralMatrices::solve() {
  const GeneralizedEigen g = solve_generalized(h, s);
  ritz_values = g.values;
  ground_vector = g.vectors.col(0);
  // Fix the sign so results are reproducible.
  Eigen::Index big = 0;
  ground_vector.cwiseAbs().maxCoeff(&big);
  if (ground_vector(big) < 0.0) ground_vector = -ground_vector;
}

RayleighVariance rayleigh_and_variance(const SpectralMatrices& m, const VectorXd& c) {
  if (c.size() != m.h.rows() || m.s.rows() != c.size() || m.h2.rows() != c.size()) {
    throw Error(ErrorKind::DimensionMismatch, "coefficient vector does not match the matrices");
  }
  if (c.isZero(0.0)) throw Error(ErrorKind::ZeroVector, "coefficient vector is zero");
  const double norm = c.dot(m.s * c);
  RayleighVariance r;
  r.energy = c.dot(m.h * c) / norm;
  r.variance = c.dot(m.h2 * c) / norm - r.energy * r.energy;
  return r;
}

double weinstein(double energy, double sigma2) {
  if (sigma2 < 0.0) throw Error(ErrorKind::NegativeVariance, "variance is negative");
  return energy - std::sqrt(sigma2);
}

double temple(double energy, double sigma2, double beta) {
  if (!(beta > energy)) {
    std::ostringstream os;
    os.precision(17);
    os << "beta " << beta << " is not above E " << energy;
    throw Error(ErrorKind::BetaNotAboveE, os.str());
  }
  return energy - sigma2 / (beta - energy);
}

double stevenson(double energy, double sigma2, double alpha) {
  if (sigma2 < 0.0) throw Error(ErrorKind::NegativeVariance, "variance is negative");
  const double d = alpha - energy;
  return alpha - std::sqrt(d * d + sigma2);
}

BoundsReport compute_bounds(SpectralMatrices& m, const BoundsOptions& opt) {
  if (m.ground_vector.size() != m.h.rows()) m.solve();
  BoundsReport rep;
  const RayleighVariance rv = rayleigh_and_variance(m, m.ground_vector);
  rep.energy_upper = rv.energy;
  rep.variance = rv.variance;
  if (rv.variance < 0.0) {
    if (rv.variance <= -kVarianceTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "variance " << rv.variance << " is below -" << kVarianceTolerance;
      throw Error(ErrorKind::NegativeVariance, os.str());
    }
    std::ostringstream os;
    os << "variance " << rv.variance << " clamped to zero";
    rep.warnings.push_back(os.str());
    rep.variance = 0.0;
  }
  rep.weinstein_lb = weinstein(rep.energy_upper, rep.variance);

  if (opt.beta) {
    rep.beta = *opt.beta;
    rep.beta_source = "explicit";
  } else if (m.ritz_values.size() >= 2) {
    rep.beta = m.ritz_values(1);
    rep.beta_source = "ritz2";
  } else {
    rep.beta = std::nan("");
    rep.beta_source = "ritz2";
    rep.warnings.push_back("a single-function basis has no second Ritz value; Temple bound skipped");
  }
  if (rep.beta > rep.energy_upper) {
    rep.temple_valid = true;
    rep.temple_lb = temple(rep.energy_upper, rep.variance, rep.beta);
  }
  if (opt.stevenson_alpha) {
    rep.stevenson_alpha = opt.stevenson_alpha;
    rep.stevenson_lb = stevenson(rep.energy_upper, rep.variance, *opt.stevenson_alpha);
  }
  return rep;
}

}  // namespace gaussbounds
