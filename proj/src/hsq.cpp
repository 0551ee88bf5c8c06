#include "gaussbounds/hsq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaussbounds/special_functions.hpp"

namespace gaussbounds {

namespace {

void check_electron(int i, int n) {
  if (i < 0 || i >= n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "electron index " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));
  }
}

// asin(x)/x, with its series near zero.
double asin_ratio(double x) {
  return x < 1e-4 ? 1.0 + x * x / 6.0 + 3.0 * x * x * x * x / 40.0 : std::asin(x) / x;
}

QuadratureSpec scaled(const QuadratureSpec& q, double scale) {
  QuadratureSpec out = q;
  out.abs_tol = q.abs_tol * std::max(scale, 1e-300);
  out.transform = QuadratureTransform::None;
  return out;
}

}  // namespace

InvRsqCoefficients inv_r_squared_coefficients(const PairProduct& pp, const CoulombChannel& ch) {
  const ChannelFrame f = channel_frame(pp, ch);
  return {f.a, f.beta()};
}

double inv_r_squared(const PairProduct& pp, const CoulombChannel& ch) {
  const InvRsqCoefficients k = inv_r_squared_coefficients(pp, ch);
  const double x = std::sqrt(k.beta / k.a);
  return 2.0 * pp.overlap * dawson_ratio(x) / k.a;
}

double inv_r_squared(const PairProduct& pp, int i, int j) {
  return inv_r_squared(pp, CoulombChannel::electron_pair(i, j, pp.n_electrons()));
}

double inv_rij_rpa_zero_shift(const MatrixXd& a_kl, int i, int j, int p) {
  const int n = static_cast<int>(a_kl.rows());
  const PairCoupling jij = PairCoupling::inter(i, j, n);
  const PairCoupling jpp = PairCoupling::single(p, n);
  const MatrixXd l = cholesky(a_kl);
  const MatrixXd inv = inverse_from_cholesky(l);
  const double a = jij.trace_with(inv);
  const double b = jpp.trace_with(inv);
  const double cross = jij.vector().dot(inv * jpp.vector());
  const double c = cross * cross;
  const double ab = a * b;
  if (c > ab * (1.0 + 1e-14)) {
    throw Error(ErrorKind::DomainError, "ab < c: asin argument exceeds one");
  }
  const double x = std::sqrt(std::min(1.0, c / ab));
  const double sqrt_det = l.diagonal().prod();
  const double s = std::pow(kPi, 1.5 * n) / (sqrt_det * sqrt_det * sqrt_det);
  return 4.0 / kPi * s * asin_ratio(x) / std::sqrt(ab);
}

double RijRpaCoefficients::prefactor() const {
  return std::exp(gamma_a) * std::pow(kPi, 1.5 * n) / std::pow(det, 1.5);
}

RijRpaCoefficients rijrpa_coeffs(const PairProduct& pp, int i, int j, int p, const Vector3d& a_pos) {
  const int n = pp.n_electrons();
  check_electron(i, n);
  check_electron(j, n);
  check_electron(p, n);
  const PairCoupling w1 = i == j ? PairCoupling::single(i, n) : PairCoupling::inter(i, j, n);
  const PairCoupling w2 = PairCoupling::single(p, n);

  // Frame with the nucleus at the origin: m_a = m - 1 a^T, e_a = A m_a.
  const CoordsXd ones_a = VectorXd::Ones(n) * a_pos.transpose();
  const CoordsXd m_a = pp.mean - ones_a;
  const CoordsXd e_a = pp.a * m_a;

  RijRpaCoefficients k;
  k.n = n;
  k.det = pp.det;
  k.a_ij = w1.trace_with(pp.inverse);
  k.a_pp = w2.trace_with(pp.inverse);
  const double cross = w1.vector().dot(pp.inverse * w2.vector());
  k.c = cross * cross;

  const Eigen::RowVector3d mu1 = w1.contract(m_a);
  const Eigen::RowVector3d mu2 = w2.contract(m_a);
  k.beta_a = mu1.squaredNorm();
  k.mu_a = mu2.squaredNorm();
  k.epsilon_a = 2.0 * cross * mu1.dot(mu2);
  k.omega_a = k.c * k.mu_a;

  const double eta_a = pp.eta - 2.0 * a_pos.dot(pp.e.colwise().sum().transpose()) +
                       pp.a.sum() * a_pos.squaredNorm();
  k.gamma_a = (e_a.transpose() * m_a).trace() - eta_a;
  return k;
}

double inv_rij_rpa_general(const PairProduct& pp, int i, int j, int p, const Vector3d& a_pos,
                           const QuadratureSpec& q, RijRpaRoute route) {
  const RijRpaCoefficients k = rijrpa_coeffs(pp, i, j, p, a_pos);
  if (!(k.a_ij > 0.0) || !(k.a_pp > 0.0)) {
    throw Error(ErrorKind::DegenerateChannel, "coupling trace is not positive");
  }
  const double kappa_end = 1.0 / k.a_pp;
  if (!(k.b(kappa_end) > 0.0)) {
    throw Error(ErrorKind::DomainError, "b(u) is not positive on the integration range");
  }
  const double delta_scale = k.beta_a + std::abs(k.epsilon_a) * kappa_end + k.omega_a * kappa_end * kappa_end;
  // erf(sqrt(delta/b)) / sqrt(delta), the inner Coulomb factor.
  auto inner = [&](double kappa) {
    double d = k.delta(kappa);
    if (d < 0.0) {
      if (d < -1e-10 * delta_scale) throw Error(ErrorKind::DomainError, "delta(u) is negative");
      d = 0.0;
    }
    const double b = k.b(kappa);
    if (!(b > 0.0)) throw Error(ErrorKind::DomainError, "b(u) is not positive");
    return erf_ratio(std::sqrt(d), b);
  };

  const double s = k.prefactor();
  if (route == RijRpaRoute::Automatic) {
    if (k.beta_a == 0.0 && k.mu_a == 0.0) {
      route = RijRpaRoute::ClosedForm;
    } else {
      route = k.mu_a > 1e-30 * k.a_pp ? RijRpaRoute::YForm : RijRpaRoute::UForm;
    }
  }
  if (route == RijRpaRoute::ClosedForm) {
    if (k.beta_a != 0.0 || k.mu_a != 0.0) {
      throw Error(ErrorKind::DomainError, "closed form needs vanishing shifted contractions");
    }
    const double ab = k.a_ij * k.a_pp;
    if (k.c > ab * (1.0 + 1e-14)) throw Error(ErrorKind::DomainError, "ab < c: asin argument exceeds one");
    return 4.0 / kPi * s * asin_ratio(std::sqrt(std::min(1.0, k.c / ab))) / std::sqrt(ab);
  }
  const QuadratureSpec local = scaled(q, 1.0 / std::sqrt(k.a_ij * k.a_pp));
  if (route == RijRpaRoute::YForm) {
    if (!(k.mu_a > 0.0)) throw Error(ErrorKind::DomainError, "y-form needs mu_a > 0");
    const double root_mu = std::sqrt(k.mu_a);
    auto f = [&](double y) { return std::exp(-y * y) * inner(y * y / k.mu_a); };
    const QuadratureResult r =
        integrate(f, {0.0, std::sqrt(k.mu_a / k.a_pp)}, scaled(q, root_mu / std::sqrt(k.a_ij * k.a_pp)));
    return 2.0 / kSqrtPi * s * r.value / root_mu;
  }
  auto f = [&](double u) {
    const double t = 1.0 + u * u * k.a_pp;
    const double kappa = u * u / t;
    return std::exp(-kappa * k.mu_a) * inner(kappa) / (t * std::sqrt(t));
  };
  const QuadratureResult r = integrate(f, {0.0, std::numeric_limits<double>::infinity()},
                                       local.with_transform(QuadratureTransform::RationalInfinite));
  return 2.0 / kSqrtPi * s * r.value;
}

double two_channel_integral(const PairProduct& pp, const CoulombChannel& first,
                            const CoulombChannel& second, const QuadratureSpec& q) {
  const ChannelFrame f1 = channel_frame(pp, first);
  const ChannelFrame f2 = channel_frame(pp, second);
  if (first.coupling == second.coupling && (first.origin() - second.origin()).isZero(0.0)) {
    return inv_r_squared(pp, first);
  }
  // Adding exp(-kappa-weighted |w2^T r - c2|^2) moves the mean to m - kappa g2 mu2^T and
  // the first marginal's variance to a1 - kappa (w1^T g2)^2.
  const double cross = first.coupling.vector().dot(f2.g);
  const double c = cross * cross;
  const double mu2_sq = f2.beta();
  const Vector3d mu1 = f1.mu;
  const Vector3d shift = cross * f2.mu;
  auto f = [&](double v) {
    const double kappa = v * v;
    const double a1 = std::max(0.0, f1.a - kappa * c);
    return std::exp(-kappa * mu2_sq) * erf_ratio((mu1 - kappa * shift).norm(), a1);
  };
  const double end = 1.0 / std::sqrt(f2.a);
  const QuadratureResult r = integrate(f, {0.0, end}, scaled(q, 1.0 / std::sqrt(f1.a * f2.a)));
  return 2.0 / kSqrtPi * pp.overlap * r.value;
}

double inv_ria_rjb_general(const PairProduct& pp, int i, const Vector3d& a_pos, int j,
                           const Vector3d& b_pos, const QuadratureSpec& q) {
  const int n = pp.n_electrons();
  check_electron(i, n);
  check_electron(j, n);
  const bool same_centre = (a_pos - b_pos).isZero(0.0);
  if (same_centre && i == j) return inv_r_squared(pp, CoulombChannel::nuclear(i, a_pos, n));
  if (same_centre) return inv_rij_rpa_general(pp, i, i, j, a_pos, q);
  return two_channel_integral(pp, CoulombChannel::nuclear(i, a_pos, n),
                              CoulombChannel::nuclear(j, b_pos, n), q);
}

double del4_cross(const PairProduct& pp, const Ecg& bra, const Ecg& ket, int i, int j) {
  const LaplacianPolynomial pk = i == kAllParticles ? laplacian_polynomial(bra) : laplacian_polynomial(bra, i);
  const LaplacianPolynomial pl = j == kAllParticles ? laplacian_polynomial(ket) : laplacian_polynomial(ket, j);
  return quartic_moment(pp, pk.u, pk.center, pl.u, pl.center) +
         pl.c0 * quadratic_moment(pp, pk.u, pk.center) + pk.c0 * quadratic_moment(pp, pl.u, pl.center) +
         pk.c0 * pl.c0 * pp.overlap;
}

double& H2Terms::operator[](std::string_view name) {
  const auto it = std::find(kNames.begin(), kNames.end(), name);
  if (it == kNames.end()) throw Error(ErrorKind::DomainError, "unknown H^2 term " + std::string(name));
  return values[static_cast<std::size_t>(it - kNames.begin())];
}

double H2Terms::operator[](std::string_view name) const {
  return const_cast<H2Terms&>(*this)[name];
}

double H2Terms::total() const {
  double t = 0.0;
  for (double v : values) t += v;
  return t;
}

H2Terms H2Terms::operator+(const H2Terms& o) const {
  H2Terms out;
  for (std::size_t k = 0; k < kCount; ++k) out.values[k] = values[k] + o.values[k];
  return out;
}

H2Terms H2Terms::operator-(const H2Terms& o) const {
  H2Terms out;
  for (std::size_t k = 0; k < kCount; ++k) out.values[k] = values[k] - o.values[k];
  return out;
}

H2Terms h2_terms(const SystemDefinition& sys, const Ecg& bra, const Ecg& ket, const QuadratureSpec& q) {
  if (sys.n_electrons != 2 || bra.n_electrons() != 2 || ket.n_electrons() != 2) {
    throw Error(ErrorKind::UnsupportedElectronCount, "H^2 assembly is implemented for two electrons");
  }
  constexpr int n = 2;
  const PairProduct pp = pair_product(bra, ket);
  const LaplacianPolynomial lap_k = laplacian_polynomial(bra);
  const LaplacianPolynomial lap_l = laplacian_polynomial(ket);
  const CoulombChannel ee = CoulombChannel::electron_pair(0, 1, n);
  const double vnn = sys.nuclear_repulsion();

  const double t = kinetic(pp, bra, ket);
  const double vee = inv_r(pp, ee);
  double vne = 0.0;
  for (const Nucleus& nuc : sys.nuclei) {
    for (int i = 0; i < n; ++i) vne -= nuc.charge * inv_r(pp, CoulombChannel::nuclear(i, nuc.position, n));
  }

  H2Terms h;
  h["T_T"] = 0.25 * del4_cross(pp, bra, ket, kAllParticles, kAllParticles);
  h["T_Vee"] = -0.5 * coulomb_quadratic(pp, ee, lap_k, q);
  h["Vee_T"] = -0.5 * coulomb_quadratic(pp, ee, lap_l, q);
  h["T_Vnn"] = vnn * t;
  h["Vnn_T"] = vnn * t;
  h["Vee_Vee"] = inv_r_squared(pp, ee);
  h["Vee_Vnn"] = vnn * vee;
  h["Vnn_Vee"] = vnn * vee;
  h["Vnn_Vnn"] = vnn * vnn * pp.overlap;
  h["Vnn_Vne"] = vnn * vne;
  h["Vne_Vnn"] = vnn * vne;

  double t_vne = 0.0;
  double vne_t = 0.0;
  double vee_vne = 0.0;
  double vne_vne = 0.0;
  for (const Nucleus& na : sys.nuclei) {
    for (int i = 0; i < n; ++i) {
      const CoulombChannel ch = CoulombChannel::nuclear(i, na.position, n);
      t_vne += 0.5 * na.charge * coulomb_quadratic(pp, ch, lap_k, q);
      vne_t += 0.5 * na.charge * coulomb_quadratic(pp, ch, lap_l, q);
      vee_vne -= na.charge * inv_rij_rpa_general(pp, 0, 1, i, na.position, q);
    }
    for (const Nucleus& nb : sys.nuclei) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          vne_vne += na.charge * nb.charge * inv_ria_rjb_general(pp, i, na.position, j, nb.position, q);
        }
      }
    }
  }
  h["T_Vne"] = t_vne;
  h["Vne_T"] = vne_t;
  h["Vee_Vne"] = vee_vne;
  h["Vne_Vee"] = vee_vne;
  h["Vne_Vne"] = vne_vne;
  return h;
}

double assemble_h2_element(const SystemDefinition& sys, const Ecg& bra, const Ecg& ket,
                           const QuadratureSpec& q) {
  return h2_terms(sys, bra, ket, q).total();
}

}  // namespace gaussbounds
