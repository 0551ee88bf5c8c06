#include <catch_amalgamated.hpp>

#include <cmath>

#include "gaussbounds/special_functions.hpp"

using namespace gaussbounds;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Maclaurin series sum x^{2k+1} / (k! (2k+1)), long double.
double erfi_series(double x) {
  long double term = x;
  long double sum = 0.0L;
  for (int k = 0; k < 400; ++k) {
    sum += term / (2 * k + 1);
    term *= static_cast<long double>(x) * x / (k + 1);
    if (term / (2 * k + 3) < 1e-22L * sum) break;
  }
  return static_cast<double>(2.0L / std::sqrt(static_cast<long double>(kPi)) * sum);
}

}  // namespace

TEST_CASE("values at the origin") {
  CHECK(gaussbounds::erf(0.0) == 0.0);
  CHECK(erfi(0.0) == 0.0);
  CHECK(dawson(0.0) == 0.0);
  CHECK(dawson_ratio(0.0) == 1.0);
  CHECK(lower_gamma_half(0.0) == 0.0);
}

TEST_CASE("erfi matches its Maclaurin series") {
  CHECK_THAT(erfi(1.0), WithinRel(1.65042575879, 1e-11));
  for (double x = 0.05; x <= 6.0; x += 0.05) CHECK_THAT(erfi(x), WithinRel(erfi_series(x), 1e-12));
  CHECK(erfi(-1.3) == -erfi(1.3));
}

TEST_CASE("erf agrees with the standard library") {
  for (double x = -6.0; x <= 6.0; x += 0.01) CHECK_THAT(gaussbounds::erf(x), WithinAbs(std::erf(x), 2e-16));
}

TEST_CASE("Dawson identity D(x) = (sqrt(pi)/2) exp(-x^2) erfi(x)") {
  for (double x = 0.0; x <= 6.0; x += 0.01) {
    const double via_erfi = 0.5 * kSqrtPi * std::exp(-x * x) * erfi_series(x);
    CHECK_THAT(dawson(x), WithinAbs(via_erfi, 1e-12 * std::max(1.0, std::abs(via_erfi))));
    if (x > 0.0) CHECK_THAT(dawson(x), WithinRel(via_erfi, 1e-12));
  }
}

TEST_CASE("Dawson asymptotics and ratio") {
  // D(x) ~ 1/(2x) + 1/(4x^3) + 3/(8x^5)
  const double x = 200.0;
  CHECK_THAT(dawson(x), WithinRel(1 / (2 * x) + 1 / (4 * x * x * x) + 3 / (8 * std::pow(x, 5)), 1e-12));
  for (double t : {1e-9, 1e-5, 0.3, 2.0, 40.0}) CHECK_THAT(dawson_ratio(t), WithinRel(dawson(t) / t, 1e-14));
  CHECK(dawson(-0.7) == -dawson(0.7));
}

TEST_CASE("lower incomplete gamma at one half") {
  CHECK_THAT(lower_gamma_half(1.0), WithinRel(1.49364827, 1e-8));
  for (double x : {0.01, 0.5, 2.0, 10.0, 100.0})
    CHECK_THAT(lower_gamma_half(x), WithinRel(kSqrtPi * std::erf(std::sqrt(x)), 1e-14));
}

TEST_CASE("erf_ratio limits") {
  CHECK_THAT(erf_ratio(0.0, 2.0), WithinRel(2.0 / std::sqrt(kPi * 2.0), 1e-15));
  CHECK_THAT(erf_ratio(1e-9, 2.0), WithinRel(2.0 / std::sqrt(kPi * 2.0), 1e-15));
  CHECK_THAT(erf_ratio(3.0, 0.0), WithinRel(1.0 / 3.0, 1e-15));
  CHECK_THAT(erf_ratio(0.8, 1.7), WithinRel(std::erf(0.8 / std::sqrt(1.7)) / 0.8, 1e-14));
  CHECK_THAT(erf_ratio(50.0, 1.0), WithinRel(1.0 / 50.0, 1e-15));
}
