#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "gaussbounds/quadrature.hpp"
#include "gaussbounds/special_functions.hpp"

using namespace gaussbounds;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Known {
  const char* name;
  Integrand f;
  Interval range;
  double exact;
  QuadratureTransform transform = QuadratureTransform::None;
};

}  // namespace

TEST_CASE("table of known integrals is reproduced within the error estimate") {
  const std::vector<Known> table = {
      {"(1+t^2)^-3/2 on [0,inf)", [](double t) { return std::pow(1 + t * t, -1.5); }, {0, kInf}, 1.0},
      {"x^-1/2 e^-x on [0,1]", [](double x) { return std::exp(-x) / std::sqrt(x); }, {0, 1},
       kSqrtPi * std::erf(1.0), QuadratureTransform::SqrtEndpoint},
      {"1 on [0,pi/2]", [](double) { return 1.0; }, {0, kPi / 2}, kPi / 2},
      {"x^2 on [0,1]", [](double x) { return x * x; }, {0, 1}, 1.0 / 3},
      {"sin on [0,pi]", [](double x) { return std::sin(x); }, {0, kPi}, 2.0},
      {"e^x on [0,1]", [](double x) { return std::exp(x); }, {0, 1}, std::exp(1.0) - 1},
      {"e^-x^2 on [0,inf)", [](double x) { return std::exp(-x * x); }, {0, kInf}, kSqrtPi / 2},
      {"1/(1+x^2) on [0,inf)", [](double x) { return 1 / (1 + x * x); }, {0, kInf}, kPi / 2},
      {"log x on [0,1]", [](double x) { return std::log(x); }, {0, 1}, -1.0},
      {"x^-1/2 on [0,1]", [](double x) { return 1 / std::sqrt(x); }, {0, 1}, 2.0,
       QuadratureTransform::SqrtEndpoint},
      {"cos^2 on [0,2pi]", [](double x) { return std::cos(x) * std::cos(x); }, {0, 2 * kPi}, kPi},
      {"x e^-x on [0,inf)", [](double x) { return x * std::exp(-x); }, {0, kInf}, 1.0},
      {"1/(1+x)^2 on [0,inf)", [](double x) { return 1 / ((1 + x) * (1 + x)); }, {0, kInf}, 1.0},
      {"sqrt(x) on [0,1]", [](double x) { return std::sqrt(x); }, {0, 1}, 2.0 / 3},
      {"1/x on [1,e]", [](double x) { return 1 / x; }, {1, std::exp(1.0)}, 1.0},
      {"e^-x^2 on [-3,3]", [](double x) { return std::exp(-x * x); }, {-3, 3}, kSqrtPi * std::erf(3.0)},
      {"x^5 on [-1,2]", [](double x) { return std::pow(x, 5); }, {-1, 2}, (64.0 - 1.0) / 6},
      {"e^-x / sqrt(x) on [0,inf)", [](double x) { return std::exp(-x) / std::sqrt(x); }, {0, kInf}, kSqrtPi},
      {"x^4 e^-x^2 on [0,inf)", [](double x) { return std::pow(x, 4) * std::exp(-x * x); }, {0, kInf},
       3 * kSqrtPi / 8},
      {"1/sqrt(1-x^2) on [-1,0]", [](double x) { return 1 / std::sqrt((1 - x) * (1 + x)); }, {-1, 0}, kPi / 2,
       QuadratureTransform::SqrtEndpoint},
  };
  REQUIRE(table.size() == 20);
  QuadratureSpec spec{1e-10, 1e-13, 500, QuadratureTransform::None};
  for (const Known& k : table) {
    INFO(k.name);
    const QuadratureResult r = integrate(k.f, k.range, spec.with_transform(k.transform));
    CHECK(r.converged);
    CHECK(std::abs(r.value - k.exact) <= std::max(r.error_estimate, 1e-14 * std::abs(k.exact)));
    CHECK(std::abs(r.value - k.exact) <= 1e-9 * std::abs(k.exact));
  }
}

TEST_CASE("non-convergence is reported, not silent") {
  const Integrand wild = [](double x) { return std::sin(1.0 / x) / x; };
  QuadratureSpec spec{1e-14, 1e-16, 3, QuadratureTransform::None};
  const QuadratureResult r = try_integrate(wild, {1e-4, 1.0}, spec);
  CHECK_FALSE(r.converged);
  CHECK(r.subdivisions_used <= 3);
  CHECK_THROWS_AS(integrate(wild, {1e-4, 1.0}, spec), QuadratureError);
}

TEST_CASE("non-finite integrand values throw") {
  CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, {0, 1}, {}), Error);
}

TEST_CASE("empty interval integrates to zero") {
  CHECK(integrate([](double x) { return x; }, {2, 2}, {}).value == 0.0);
}
