#include "gaussbounds/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace gaussbounds {

namespace {

// Rybicki's sampling formula.  The truncation error scales as
// exp(-(pi / 2h)^2), which is ~1e-27 for h = 0.2.
constexpr double kRybickiStep = 0.2;
constexpr int kRybickiTerms = 24;

const std::array<double, kRybickiTerms>& rybicki_coefficients() {
  static const std::array<double, kRybickiTerms> c = [] {
    std::array<double, kRybickiTerms> out{};
    for (int i = 0; i < kRybickiTerms; ++i) {
      const double v = (2.0 * i + 1.0) * kRybickiStep;
      out[i] = std::exp(-v * v);
    }
    return out;
  }();
  return c;
}

double dawson_small(double x) {
  // D(x) = sum_k (-1)^k 2^k x^{2k+1} / (2k+1)!!
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int k = 1; k < 30; ++k) {
    term *= -2.0 * x2 / (2.0 * k + 1.0);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double dawson_rybicki(double ax) {
  const auto& c = rybicki_coefficients();
  const double n0 = 2.0 * std::floor(0.5 * ax / kRybickiStep + 0.5);
  const double xp = ax - n0 * kRybickiStep;
  double e1 = std::exp(2.0 * xp * kRybickiStep);
  const double e2 = e1 * e1;
  double d1 = n0 + 1.0;
  double d2 = d1 - 2.0;
  double sum = 0.0;
  for (int i = 0; i < kRybickiTerms; ++i) {
    sum += c[i] * (e1 / d1 + 1.0 / (d2 * e1));
    d1 += 2.0;
    d2 -= 2.0;
    e1 *= e2;
  }
  return std::exp(-xp * xp) * sum / kSqrtPi;
}

double dawson_asymptotic(double ax) {
  // D(x) ~ 1/(2x) sum_k (2k-1)!! / (2x^2)^k
  const double inv = 1.0 / (2.0 * ax * ax);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = term * (2.0 * k - 1.0) * inv;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum / (2.0 * ax);
}

}  // namespace

double erf(double x) { return std::erf(x); }

double erfi(double x) {
  // (2/sqrt(pi)) sum_k x^{2k+1} / (k! (2k+1)); all terms share the sign of x.
  const double x2 = x * x;
  double power = x;  // x^{2k+1} / k!
  double sum = x;
  for (int k = 1; k < 2000; ++k) {
    power *= x2 / k;
    const double term = power / (2.0 * k + 1.0);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    if (!std::isfinite(sum)) break;
  }
  return 2.0 * sum / kSqrtPi;
}

double dawson(double x) {
  const double ax = std::abs(x);
  double d;
  if (ax < 0.2) {
    return dawson_small(x);
  } else if (ax < 20.0) {
    d = dawson_rybicki(ax);
  } else {
    d = dawson_asymptotic(ax);
  }
  return x < 0 ? -d : d;
}

double dawson_ratio(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - (2.0 / 3.0) * x2 + (4.0 / 15.0) * x2 * x2;
  }
  return dawson(x) / x;
}

double lower_gamma_half(double x) { return kSqrtPi * std::erf(std::sqrt(x)); }

double erf_ratio(double m, double a) {
  if (a <= 0.0) {
    return m > 0.0 ? 1.0 / m : std::numeric_limits<double>::infinity();
  }
  const double sa = std::sqrt(a);
  const double x = m / sa;
  if (x < 1e-4) {
    const double x2 = x * x;
    return 2.0 / (kSqrtPi * sa) * (1.0 - x2 / 3.0 + x2 * x2 / 10.0);
  }
  return std::erf(x) / m;
}

}  // namespace gaussbounds
