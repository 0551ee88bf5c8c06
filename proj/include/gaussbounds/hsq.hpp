#pragma once

// Matrix elements that only appear in <H^2>: 1/r^2, products of two Coulomb
// factors, and Laplacian-Laplacian overlaps, plus the two-electron assembly.

#include <array>
#include <string_view>

#include "gaussbounds/coulomb.hpp"

namespace gaussbounds {

/// Selects the full Laplacian in del4_cross / laplacian polynomials.
inline constexpr int kAllParticles = -1;

struct InvRsqCoefficients {
  double a = 0.0;     ///< Tr(J A_kl^-1)
  double beta = 0.0;  ///< |w^T m - centre|^2
};

InvRsqCoefficients inv_r_squared_coefficients(const PairProduct& pp, const CoulombChannel& ch);

/// <phi_k| 1/r^2 |phi_l> = 2 S D(x) / (a x), x = sqrt(beta / a).
double inv_r_squared(const PairProduct& pp, const CoulombChannel& ch);
double inv_r_squared(const PairProduct& pp, int i, int j);

/// Closed form of <1/(r_ij r_p)> for unshifted functions and a nucleus at the origin:
/// (4/pi) pi^{3n/2} |A|^{-3/2} asin(sqrt(c/(ab))) / sqrt(c).
double inv_rij_rpa_zero_shift(const MatrixXd& a_kl, int i, int j, int p);

/// Scalars of the 1/(r_ij r_pa) reduction.  With kappa in [0, 1/a_pp]:
///   delta(kappa) = beta_a - kappa epsilon_a + kappa^2 omega_a
///   b(kappa)     = a_ij - kappa c
struct RijRpaCoefficients {
  double a_ij = 0.0;
  double a_pp = 0.0;
  double c = 0.0;
  double gamma_a = 0.0;
  double beta_a = 0.0;
  double mu_a = 0.0;
  double epsilon_a = 0.0;
  double omega_a = 0.0;
  double det = 0.0;  ///< |A_kl|
  int n = 0;

  double delta(double kappa) const { return beta_a - kappa * epsilon_a + kappa * kappa * omega_a; }
  double b(double kappa) const { return a_ij - kappa * c; }
  /// exp(gamma_a) pi^{3n/2} |A_kl|^{-3/2}, the overlap.
  double prefactor() const;
};

/// Coefficients for 1/(|w1^T r - centre| |r_p - a|) where the first factor is
/// either r_ij (i != j) or r_ia (i == j, same centre a).
RijRpaCoefficients rijrpa_coeffs(const PairProduct& pp, int i, int j, int p, const Vector3d& a_pos);

enum class RijRpaRoute {
  Automatic,   ///< closed form when both contractions vanish, else y-form, u-form if mu_a = 0
  ClosedForm,  ///< requires beta_a = mu_a = 0
  YForm,       ///< x = y^2 over [0, sqrt(mu_a / a_pp)]
  UForm,       ///< u over [0, inf) with the rational map
};

double inv_rij_rpa_general(const PairProduct& pp, int i, int j, int p, const Vector3d& a_pos,
                           const QuadratureSpec& q = {}, RijRpaRoute route = RijRpaRoute::Automatic);

/// <1/(|w1^T r - c1| |w2^T r - c2|)> for any two channels, as a single integral over the
/// Gaussian transform variable of the second factor.
double two_channel_integral(const PairProduct& pp, const CoulombChannel& first,
                            const CoulombChannel& second, const QuadratureSpec& q = {});

/// <1/(r_ia r_jb)> for electrons i, j (equal allowed) and nuclei at a_pos, b_pos.
double inv_ria_rjb_general(const PairProduct& pp, int i, const Vector3d& a_pos, int j,
                           const Vector3d& b_pos, const QuadratureSpec& q = {});

/// <nabla_i^2 phi_k | nabla_j^2 phi_l>; kAllParticles selects the full Laplacian.
double del4_cross(const PairProduct& pp, const Ecg& bra, const Ecg& ket, int i, int j);

/// Sixteen contributions <phi_k| X Y |phi_l> of H^2 for X, Y in {T, Vee, Vnn, Vne}.
struct H2Terms {
  static constexpr std::size_t kCount = 16;
  static constexpr std::array<std::string_view, kCount> kNames = {
      "T_T",     "T_Vee",     "T_Vnn",     "T_Vne",   "Vee_T",   "Vee_Vee",
      "Vee_Vnn", "Vee_Vne",   "Vnn_T",     "Vnn_Vee", "Vnn_Vnn", "Vnn_Vne",
      "Vne_T",   "Vne_Vee",   "Vne_Vnn",   "Vne_Vne"};

  std::array<double, kCount> values{};

  double& operator[](std::string_view name);
  double operator[](std::string_view name) const;
  double total() const;
  H2Terms operator+(const H2Terms& o) const;
  H2Terms operator-(const H2Terms& o) const;
};

H2Terms h2_terms(const SystemDefinition& sys, const Ecg& bra, const Ecg& ket,
                 const QuadratureSpec& q = {});

/// (H_el^2)_kl for two electrons.
double assemble_h2_element(const SystemDefinition& sys, const Ecg& bra, const Ecg& ket,
                           const QuadratureSpec& q = {});

}  // namespace gaussbounds
