#pragma once

#include <optional>
#include <vector>

#include "gaussbounds/ecg.hpp"
#include "gaussbounds/quadrature.hpp"

namespace gaussbounds {

struct Nucleus {
  double charge = 1.0;
  Vector3d position = Vector3d::Zero();
};

/// Fixed-nucleus electronic problem in atomic units.
struct SystemDefinition {
  int n_electrons = 2;
  std::vector<Nucleus> nuclei;

  /// sum_{a<b} Z_a Z_b / |R_a - R_b|
  double nuclear_repulsion() const;
};

/// One Coulomb factor 1/|w^T r - centre|: an electron pair (no centre) or an
/// electron and a nucleus.
struct CoulombChannel {
  PairCoupling coupling;
  std::optional<Vector3d> center;

  static CoulombChannel electron_pair(int i, int j, int n) {
    return {PairCoupling::inter(i, j, n), std::nullopt};
  }
  static CoulombChannel nuclear(int p, const Vector3d& position, int n) {
    return {PairCoupling::single(p, n), position};
  }

  Vector3d origin() const { return center.value_or(Vector3d::Zero()); }
};

/// Geometry of one channel against a pair product: the marginal of
/// u = w^T r - centre is isotropic Gaussian with mean `mu` and per-component
/// variance a/2.
struct ChannelFrame {
  double a = 0.0;       ///< w^T A_kl^-1 w
  Vector3d mu;          ///< w^T m - centre
  VectorXd g;           ///< A_kl^-1 w
  double beta() const { return mu.squaredNorm(); }
};

ChannelFrame channel_frame(const PairProduct& pp, const CoulombChannel& ch);

/// <phi_k| 1/r |phi_l> for one channel, closed form S erf(sqrt(beta/a))/sqrt(beta).
double inv_r(const PairProduct& pp, const CoulombChannel& ch);

/// <phi_k| -1/2 sum_i nabla_i^2 |phi_l>
double kinetic(const PairProduct& pp, const Ecg& bra, const Ecg& ket);

/// int [(r-p)^T U (r-p) + c0] (1/r_ch) phi_k phi_l dr by one-dimensional quadrature
/// over the Gaussian transform variable of 1/r_ch.
double coulomb_quadratic(const PairProduct& pp, const CoulombChannel& ch,
                         const LaplacianPolynomial& poly, const QuadratureSpec& spec = {});

struct HTerms {
  double kinetic = 0.0;
  double electron_repulsion = 0.0;
  double nuclear_attraction = 0.0;
  double nuclear_repulsion = 0.0;

  double total() const { return kinetic + electron_repulsion + nuclear_attraction + nuclear_repulsion; }
  HTerms operator+(const HTerms& o) const;
  HTerms operator-(const HTerms& o) const;
};

HTerms h_terms(const SystemDefinition& sys, const Ecg& bra, const Ecg& ket);

/// <phi_k| T_e + V_ee + V_ne + V_nn |phi_l>
double assemble_h_element(const SystemDefinition& sys, const Ecg& bra, const Ecg& ket);

}  // namespace gaussbounds
