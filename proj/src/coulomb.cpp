#include "gaussbounds/coulomb.hpp"

#include <cmath>

#include "gaussbounds/special_functions.hpp"

namespace gaussbounds {

double SystemDefinition::nuclear_repulsion() const {
  double v = 0.0;
  for (std::size_t a = 0; a < nuclei.size(); ++a) {
    for (std::size_t b = a + 1; b < nuclei.size(); ++b) {
      v += nuclei[a].charge * nuclei[b].charge / (nuclei[a].position - nuclei[b].position).norm();
    }
  }
  return v;
}

ChannelFrame channel_frame(const PairProduct& pp, const CoulombChannel& ch) {
  if (ch.coupling.dim() != pp.n_electrons()) {
    throw Error(ErrorKind::DimensionMismatch, "channel and pair product disagree on n");
  }
  ChannelFrame f;
  f.g = pp.inverse * ch.coupling.vector();
  f.a = ch.coupling.trace_with(pp.inverse);
  if (!(f.a > 0.0)) {
    throw Error(ErrorKind::DegenerateChannel, "Tr(J A^-1) is not positive");
  }
  f.mu = ch.coupling.contract(pp.mean).transpose();
  if (ch.center) f.mu -= *ch.center;
  return f;
}

double inv_r(const PairProduct& pp, const CoulombChannel& ch) {
  const ChannelFrame f = channel_frame(pp, ch);
  return pp.overlap * erf_ratio(f.mu.norm(), f.a);
}

double kinetic(const PairProduct& pp, const Ecg& /*bra*/, const Ecg& ket) {
  const LaplacianPolynomial lap = laplacian_polynomial(ket);
  return -0.5 * (quadratic_moment(pp, lap.u, lap.center) + lap.c0 * pp.overlap);
}

double coulomb_quadratic(const PairProduct& pp, const CoulombChannel& ch,
                         const LaplacianPolynomial& poly, const QuadratureSpec& spec) {
  const ChannelFrame f = channel_frame(pp, ch);
  const double mu2 = f.beta();
  const Coords<double> d0 = pp.mean - poly.center;
  const Coords<double> shift_dir = f.g * f.mu.transpose();  // m(kappa) = m - kappa g mu^T
  const double tr_u_inv = (poly.u * pp.inverse).trace();
  const double g_u_g = f.g.dot(poly.u * f.g);

  // With kappa = t^2 / (1 + t^2 a) = v^2 the t-integral of the augmented
  // Gaussian becomes (2/sqrt(pi)) S int_0^{1/sqrt(a)} exp(-v^2 |mu|^2) Q(v) dv.
  auto integrand = [&](double v) {
    const double kappa = v * v;
    const Coords<double> d = d0 - kappa * shift_dir;
    const double trace_part = 1.5 * (tr_u_inv - kappa * g_u_g);
    const double q = trace_part + (d.transpose() * poly.u * d).trace() + poly.c0;
    return std::exp(-kappa * mu2) * q;
  };
  QuadratureSpec local = spec;
  local.transform = QuadratureTransform::None;
  local.abs_tol = spec.abs_tol / std::max(pp.overlap, 1e-300);
  const QuadratureResult r = integrate(integrand, {0.0, 1.0 / std::sqrt(f.a)}, local);
  return 2.0 / kSqrtPi * pp.overlap * r.value;
}

HTerms HTerms::operator+(const HTerms& o) const {
  return {kinetic + o.kinetic, electron_repulsion + o.electron_repulsion,
          nuclear_attraction + o.nuclear_attraction, nuclear_repulsion + o.nuclear_repulsion};
}

HTerms HTerms::operator-(const HTerms& o) const {
  return {kinetic - o.kinetic, electron_repulsion - o.electron_repulsion,
          nuclear_attraction - o.nuclear_attraction, nuclear_repulsion - o.nuclear_repulsion};
}

HTerms h_terms(const SystemDefinition& sys, const Ecg& bra, const Ecg& ket) {
  const int n = sys.n_electrons;
  if (bra.n_electrons() != n || ket.n_electrons() != n) {
    throw Error(ErrorKind::DimensionMismatch, "basis functions do not match the system");
  }
  const PairProduct pp = pair_product(bra, ket);
  HTerms t;
  t.kinetic = kinetic(pp, bra, ket);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      t.electron_repulsion += inv_r(pp, CoulombChannel::electron_pair(i, j, n));
    }
    for (const Nucleus& nuc : sys.nuclei) {
      t.nuclear_attraction -= nuc.charge * inv_r(pp, CoulombChannel::nuclear(i, nuc.position, n));
    }
  }
  t.nuclear_repulsion = sys.nuclear_repulsion() * pp.overlap;
  return t;
}

double assemble_h_element(const SystemDefinition& sys, const Ecg& bra, const Ecg& ket) {
  return h_terms(sys, bra, ket).total();
}

}  // namespace gaussbounds
