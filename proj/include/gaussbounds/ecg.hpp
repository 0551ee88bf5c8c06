#pragma once

// Floating explicitly correlated Gaussians
//
//   phi(r) = exp[-(r - s)^T (A (x) I_3) (r - s)]
//
// for n particles, with r and s stored as n x 3 coordinate blocks (one row per
// particle).  Products of two such functions are again Gaussians; PairProduct
// caches everything downstream kernels need about the product.

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "gaussbounds/matkit.hpp"
#include "gaussbounds/special_functions.hpp"

namespace gaussbounds {

template <typename Scalar>
class BasicEcg {
 public:
  using Matrix = MatX<Scalar>;
  using Block = Coords<Scalar>;

  BasicEcg(Matrix exponents, Block shift) : a_(std::move(exponents)), s_(std::move(shift)) {
    using std::abs;
    const Eigen::Index n = a_.rows();
    if (n < 1 || a_.cols() != n || s_.rows() != n) {
      throw Error(ErrorKind::DimensionMismatch,
                  "ECG needs an n x n exponent matrix and n x 3 shift");
    }
    const Scalar scale = a_.cwiseAbs().maxCoeff();
    if (!((a_ - a_.transpose()).cwiseAbs().maxCoeff() <= Scalar(1e-14) * scale)) {
      throw Error(ErrorKind::DomainError, "ECG exponent matrix is not symmetric");
    }
    if (!s_.allFinite()) throw Error(ErrorKind::DomainError, "ECG shift is not finite");
    a_ = Scalar(0.5) * (a_ + a_.transpose()).eval();
    cholesky(a_);
  }

  static BasicEcg unshifted(Matrix exponents) {
    const Eigen::Index n = exponents.rows();
    return BasicEcg(std::move(exponents), Block::Zero(n, 3));
  }

  int n_electrons() const noexcept { return static_cast<int>(a_.rows()); }
  const Matrix& exponents() const noexcept { return a_; }
  const Block& shift() const noexcept { return s_; }
  bool floating() const { return !s_.isZero(0); }

  Scalar operator()(const Block& r) const {
    using std::exp;
    const Block d = r - s_;
    return exp(-(d.transpose() * a_ * d).trace());
  }

 private:
  Matrix a_;
  Block s_;
};

/// Product phi_k phi_l = exp(-eta) exp(-r^T A r + 2 e^T r) with A = A_k + A_l.
template <typename Scalar>
struct BasicPairProduct {
  MatX<Scalar> a;         ///< A_kl
  Coords<Scalar> e;       ///< e_kl
  Scalar eta{};           ///< eta_kl
  Scalar gamma{};         ///< e^T A^-1 e - eta
  Scalar overlap{};       ///< S_kl
  MatX<Scalar> chol;      ///< lower Cholesky factor of A_kl
  MatX<Scalar> inverse;   ///< A_kl^-1
  Coords<Scalar> mean;    ///< A_kl^-1 e_kl, centre of the product Gaussian
  Scalar det{};           ///< |A_kl|

  int n_electrons() const { return static_cast<int>(a.rows()); }
};

template <typename Scalar>
struct BasicGaussianMoments {
  Coords<Scalar> mean;
  /// C = A_kl^-1 / 2; the full covariance is C (x) I_3.
  MatX<Scalar> covariance_factor;
};

/// nabla_i^2 phi = [(r - centre)^T (U (x) I_3) (r - centre) + c0] phi
template <typename Scalar>
struct BasicLaplacianPolynomial {
  MatX<Scalar> u;
  Coords<Scalar> center;
  Scalar c0{};
};

using Ecg = BasicEcg<double>;
using PairProduct = BasicPairProduct<double>;
using GaussianMoments = BasicGaussianMoments<double>;
using LaplacianPolynomial = BasicLaplacianPolynomial<double>;

template <typename Scalar>
BasicPairProduct<Scalar> pair_product(const BasicEcg<Scalar>& bra, const BasicEcg<Scalar>& ket) {
  using std::exp;
  using std::pow;
  if (bra.n_electrons() != ket.n_electrons()) {
    throw Error(ErrorKind::DimensionMismatch, "pair_product: electron counts differ");
  }
  const int n = bra.n_electrons();
  BasicPairProduct<Scalar> pp;
  pp.a = bra.exponents() + ket.exponents();
  pp.e = bra.exponents() * bra.shift() + ket.exponents() * ket.shift();
  pp.eta = (bra.shift().transpose() * bra.exponents() * bra.shift()).trace() +
           (ket.shift().transpose() * ket.exponents() * ket.shift()).trace();
  pp.chol = cholesky(pp.a);
  pp.inverse = inverse_from_cholesky(pp.chol);
  // Three n-vector solves, one per Cartesian component.
  pp.mean = pp.chol.template triangularView<Eigen::Lower>().solve(pp.e);
  const Scalar quad = pp.mean.squaredNorm();
  pp.chol.transpose().template triangularView<Eigen::Upper>().solveInPlace(pp.mean);
  pp.gamma = quad - pp.eta;
  const Scalar sqrt_det = pp.chol.diagonal().prod();
  pp.det = sqrt_det * sqrt_det;
  pp.overlap = exp(pp.gamma) * pow(Scalar(kPi), Scalar(1.5) * n) / (sqrt_det * sqrt_det * sqrt_det);
  return pp;
}

template <typename Scalar>
Scalar overlap(const BasicPairProduct<Scalar>& pp) {
  return pp.overlap;
}

template <typename Scalar>
BasicGaussianMoments<Scalar> moments(const BasicPairProduct<Scalar>& pp) {
  return {pp.mean, Scalar(0.5) * pp.inverse};
}

/// int (r - p)^T (U (x) I_3) (r - p) phi_k phi_l dr
template <typename Scalar>
Scalar quadratic_moment(const BasicPairProduct<Scalar>& pp, const MatX<Scalar>& u,
                        const Coords<Scalar>& p) {
  const int n = pp.n_electrons();
  if (u.rows() != n || u.cols() != n || p.rows() != n) {
    throw Error(ErrorKind::DimensionMismatch, "quadratic_moment");
  }
  const Coords<Scalar> d = pp.mean - p;
  const Scalar trace_part = Scalar(1.5) * (u * pp.inverse).trace();
  return pp.overlap * (trace_part + (d.transpose() * u * d).trace());
}

/// int (r-p)^T U (r-p) (r-q)^T W (r-q) phi_k phi_l dr by the Gaussian fourth-moment
/// expansion around the product centre m:
///   (3 Tr(UC) + d_p^T U d_p)(3 Tr(WC) + d_q^T W d_q) + 6 Tr(UCWC) + 4 Tr(d_p^T U C W d_q)
/// with C = A_kl^-1 / 2, d_p = m - p, d_q = m - q.
template <typename Scalar>
Scalar quartic_moment(const BasicPairProduct<Scalar>& pp, const MatX<Scalar>& u,
                      const Coords<Scalar>& p, const MatX<Scalar>& w, const Coords<Scalar>& q) {
  const int n = pp.n_electrons();
  if (u.rows() != n || u.cols() != n || w.rows() != n || w.cols() != n || p.rows() != n ||
      q.rows() != n) {
    throw Error(ErrorKind::DimensionMismatch, "quartic_moment");
  }
  const MatX<Scalar> c = Scalar(0.5) * pp.inverse;
  const Coords<Scalar> dp = pp.mean - p;
  const Coords<Scalar> dq = pp.mean - q;
  const MatX<Scalar> uc = u * c;
  const MatX<Scalar> wc = w * c;
  const Scalar qu = Scalar(3) * uc.trace() + (dp.transpose() * u * dp).trace();
  const Scalar qw = Scalar(3) * wc.trace() + (dq.transpose() * w * dq).trace();
  const Scalar cross = Scalar(6) * (uc * wc).trace() + Scalar(4) * (dp.transpose() * uc * w * dq).trace();
  return pp.overlap * (qu * qw + cross);
}

/// Laplacian over all particles: U = 4 A A, c0 = -6 Tr(A).
template <typename Scalar>
BasicLaplacianPolynomial<Scalar> laplacian_polynomial(const BasicEcg<Scalar>& f) {
  const auto& a = f.exponents();
  return {Scalar(4) * a * a, f.shift(), Scalar(-6) * a.trace()};
}

/// Laplacian of particle i: U = 4 A J_ii A, c0 = -6 A_ii.
template <typename Scalar>
BasicLaplacianPolynomial<Scalar> laplacian_polynomial(const BasicEcg<Scalar>& f, int i) {
  const auto& a = f.exponents();
  if (i < 0 || i >= f.n_electrons()) {
    throw Error(ErrorKind::IndexOutOfRange, "laplacian_polynomial particle " + std::to_string(i));
  }
  const VecX<Scalar> col = a.col(i);
  return {Scalar(4) * col * col.transpose(), f.shift(), Scalar(-6) * a(i, i)};
}

/// Relabels particles: row i of the result describes old particle perm[i].
/// A -> P A P^T, s -> P s with P(i, perm[i]) = 1.
template <typename Scalar>
BasicEcg<Scalar> permute_electrons(const BasicEcg<Scalar>& f, std::span<const int> perm) {
  const int n = f.n_electrons();
  if (static_cast<int>(perm.size()) != n) {
    throw Error(ErrorKind::InvalidPermutation, "permutation length differs from electron count");
  }
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]++) {
      throw Error(ErrorKind::InvalidPermutation, "not a permutation of 0..n-1");
    }
  }
  MatX<Scalar> a(n, n);
  Coords<Scalar> s(n, 3);
  for (int i = 0; i < n; ++i) {
    s.row(i) = f.shift().row(perm[i]);
    for (int j = 0; j < n; ++j) a(i, j) = f.exponents()(perm[i], perm[j]);
  }
  return BasicEcg<Scalar>(std::move(a), std::move(s));
}

/// sum_p eps_p kernel(bra, P ket) over the two permutations of a two-electron
/// ket; parity +1 projects onto symmetric spatial functions (singlets).
template <typename Scalar, typename Kernel>
auto symmetrized_element(Kernel&& kernel, const BasicEcg<Scalar>& bra, const BasicEcg<Scalar>& ket,
                         int parity) {
  if (bra.n_electrons() != 2 || ket.n_electrons() != 2) {
    throw Error(ErrorKind::UnsupportedElectronCount,
                "symmetrization is implemented for two electrons only");
  }
  if (parity != 1 && parity != -1) {
    throw Error(ErrorKind::DomainError, "parity must be +1 or -1");
  }
  static constexpr int swap[2] = {1, 0};
  const auto direct = kernel(bra, ket);
  const auto exchanged = kernel(bra, permute_electrons(ket, std::span<const int>(swap, 2)));
  return parity > 0 ? direct + exchanged : direct - exchanged;
}

}  // namespace gaussbounds
