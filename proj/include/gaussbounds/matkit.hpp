#pragma once

// Small dense symmetric / SPD algebra at the n x n level.  The Kronecker
// structure A (x) I_3 that appears for three Cartesian components is never
// materialized: callers use |A (x) I_3| = |A|^3 and Tr(A (x) I_3) = 3 Tr(A).

#include <Eigen/Dense>

#include <cmath>
#include <initializer_list>
#include <span>
#include <string>

#include "gaussbounds/error.hpp"

namespace gaussbounds {

template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
/// Coordinates of n particles, one row per particle.
template <typename Scalar>
using Coords = Eigen::Matrix<Scalar, Eigen::Dynamic, 3>;

using MatrixXd = MatX<double>;
using VectorXd = VecX<double>;
using CoordsXd = Coords<double>;
using Vector3d = Eigen::Vector3d;

/// Relative pivot floor for accepting a matrix as positive definite.
inline constexpr double kSpdPivotTolerance = 1e-13;

/// Writes the lower Cholesky factor of m into l and returns -1, or returns the
/// first row whose pivot falls below kSpdPivotTolerance * max |diag(m)|.
template <typename Derived>
Eigen::Index try_cholesky(const Eigen::MatrixBase<Derived>& m, MatX<typename Derived::Scalar>& l) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = m.rows();
  if (m.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "cholesky: matrix is not square");
  }
  Scalar max_diag(0);
  for (Eigen::Index i = 0; i < n; ++i) max_diag = std::max<Scalar>(max_diag, abs(m(i, i)));
  const Scalar floor = Scalar(kSpdPivotTolerance) * max_diag;

  l = MatX<Scalar>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Scalar pivot = m(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > floor) || !(pivot > Scalar(0))) return j;
    const Scalar d = sqrt(pivot);
    l(j, j) = d;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Scalar s = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / d;
    }
  }
  return -1;
}

/// Lower Cholesky factor L with L L^T = m.  Throws NotPositiveDefinite when a
/// pivot falls below kSpdPivotTolerance * max |diag(m)|.
template <typename Derived>
MatX<typename Derived::Scalar> cholesky(const Eigen::MatrixBase<Derived>& m) {
  MatX<typename Derived::Scalar> l;
  const Eigen::Index row = try_cholesky(m, l);
  if (row >= 0) {
    throw Error(ErrorKind::NotPositiveDefinite, "cholesky pivot not positive at row " + std::to_string(row));
  }
  return l;
}

/// Inverse of an SPD matrix from its lower Cholesky factor.
template <typename Derived>
MatX<typename Derived::Scalar> inverse_from_cholesky(const Eigen::MatrixBase<Derived>& l) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = l.rows();
  MatX<Scalar> linv = l.template triangularView<Eigen::Lower>().solve(MatX<Scalar>::Identity(n, n));
  MatX<Scalar> inv = linv.transpose() * linv;
  return Scalar(0.5) * (inv + inv.transpose());
}

template <typename Derived>
typename Derived::Scalar det_spd(const Eigen::MatrixBase<Derived>& m) {
  const auto l = cholesky(m);
  const auto d = l.diagonal().prod();
  return d * d;
}

template <typename Derived>
MatX<typename Derived::Scalar> inv_spd(const Eigen::MatrixBase<Derived>& m) {
  return inverse_from_cholesky(cholesky(m));
}

/// Rank-one coupling matrix J with r^T (J (x) I_3) r = |r_i - r_j|^2 (inter-particle)
/// or |r_p|^2 (single-particle).  Stored by indices; J = w w^T with w having at most
/// two nonzero entries.
class PairCoupling {
 public:
  enum class Kind { InterParticle, SingleParticle };

  static PairCoupling inter(int i, int j, int n) {
    check_index(i, n);
    check_index(j, n);
    if (i == j) {
      throw Error(ErrorKind::DegeneratePair,
                  "inter-particle coupling needs distinct indices, got " + std::to_string(i));
    }
    return PairCoupling(Kind::InterParticle, i, j, n);
  }

  static PairCoupling single(int p, int n) {
    check_index(p, n);
    return PairCoupling(Kind::SingleParticle, p, p, n);
  }

  Kind kind() const noexcept { return kind_; }
  int first() const noexcept { return i_; }
  int second() const noexcept { return j_; }
  int dim() const noexcept { return n_; }
  bool is_inter() const noexcept { return kind_ == Kind::InterParticle; }

  /// w such that J = w w^T.
  template <typename Scalar = double>
  VecX<Scalar> vector() const {
    VecX<Scalar> w = VecX<Scalar>::Zero(n_);
    w(i_) = Scalar(1);
    if (is_inter()) w(j_) = Scalar(-1);
    return w;
  }

  template <typename Scalar = double>
  MatX<Scalar> dense() const {
    const VecX<Scalar> w = vector<Scalar>();
    return w * w.transpose();
  }

  /// Tr(J M) = w^T M w, by index arithmetic.
  template <typename Derived>
  typename Derived::Scalar trace_with(const Eigen::MatrixBase<Derived>& m) const {
    if (!is_inter()) return m(i_, i_);
    return m(i_, i_) + m(j_, j_) - m(i_, j_) - m(j_, i_);
  }

  /// w^T M v for an n-vector or n x k matrix v (returns a row).
  template <typename Derived>
  auto contract(const Eigen::MatrixBase<Derived>& v) const {
    using Row = Eigen::Matrix<typename Derived::Scalar, 1, Derived::ColsAtCompileTime>;
    Row out = v.row(i_);
    if (is_inter()) out -= v.row(j_);
    return out;
  }

  bool operator==(const PairCoupling&) const = default;

 private:
  PairCoupling(Kind kind, int i, int j, int n) : kind_(kind), i_(i), j_(j), n_(n) {}

  static void check_index(int i, int n) {
    if (n < 1 || i < 0 || i >= n) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "particle index " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));
    }
  }

  Kind kind_;
  int i_;
  int j_;
  int n_;
};

/// Indices are zero-based.  For the inter-particle kind both indices are used.
inline PairCoupling build_pair_coupling(PairCoupling::Kind kind, int i, int j, int n) {
  return kind == PairCoupling::Kind::InterParticle ? PairCoupling::inter(i, j, n)
                                                   : PairCoupling::single(i, n);
}

/// det(G + a B) for rank-one B: det(G) (1 + a Tr(B G^-1)).
template <typename DG, typename DB>
typename DG::Scalar det_rank1_update(const Eigen::MatrixBase<DG>& g, typename DG::Scalar a,
                                     const Eigen::MatrixBase<DB>& b) {
  if (b.rows() != g.rows() || b.cols() != g.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "det_rank1_update");
  }
  const auto ginv = inv_spd(g);
  return det_spd(g) * (typename DG::Scalar(1) + a * (b * ginv).trace());
}

/// (A + B)^-1 for SPD A and rank-one PSD B.
template <typename DA, typename DB>
MatX<typename DA::Scalar> inv_rank1_update(const Eigen::MatrixBase<DA>& a,
                                           const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  if (b.rows() != a.rows() || b.cols() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "inv_rank1_update");
  }
  const MatX<Scalar> ainv = inv_spd(a);
  const Scalar denom = Scalar(1) + (b * ainv).trace();
  return ainv - (ainv * b * ainv) / denom;
}

/// det(G + H1 + H2) for rank-one H1, H2.
template <typename DG, typename D1, typename D2>
typename DG::Scalar det_two_rank1(const Eigen::MatrixBase<DG>& g, const Eigen::MatrixBase<D1>& h1,
                                  const Eigen::MatrixBase<D2>& h2) {
  using Scalar = typename DG::Scalar;
  if (h1.rows() != g.rows() || h2.rows() != g.rows() || h1.cols() != g.cols() ||
      h2.cols() != g.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "det_two_rank1");
  }
  const MatX<Scalar> ginv = inv_spd(g);
  const MatX<Scalar> p1 = h1 * ginv;
  const MatX<Scalar> p2 = h2 * ginv;
  const Scalar t1 = p1.trace();
  const Scalar t2 = p2.trace();
  return det_spd(g) * (Scalar(1) + t1 + t2 + t1 * t2 - (p1 * p2).trace());
}

/// Tr(M_1 M_2 ... M_k).
template <typename Scalar>
Scalar trace_product(std::span<const MatX<Scalar>> ms) {
  if (ms.empty()) throw Error(ErrorKind::DimensionMismatch, "trace_product of nothing");
  MatX<Scalar> acc = ms.front();
  for (std::size_t k = 1; k < ms.size(); ++k) {
    if (acc.cols() != ms[k].rows()) {
      throw Error(ErrorKind::DimensionMismatch, "trace_product: factor " + std::to_string(k));
    }
    acc = acc * ms[k];
  }
  if (acc.rows() != acc.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "trace_product: product is not square");
  }
  return acc.trace();
}

inline double trace_product(std::initializer_list<MatrixXd> ms) {
  return trace_product<double>(std::span<const MatrixXd>(ms.begin(), ms.size()));
}

}  // namespace gaussbounds
