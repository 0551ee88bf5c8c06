#pragma once

#include <cmath>
#include <random>

#include "gaussbounds/basis.hpp"

namespace testing {

using namespace gaussbounds;

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline MatrixXd random_spd(int n, std::mt19937_64& rng, double ridge = 0.5) {
  std::normal_distribution<double> g;
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  return m * m.transpose() + ridge * MatrixXd::Identity(n, n);
}

inline Ecg random_ecg(int n, std::mt19937_64& rng, double shift = 0.0, double emin = 0.1, double emax = 3.0) {
  GeneratorOptions opt;
  opt.exponent_min = emin;
  opt.exponent_max = emax;
  opt.shift_range = shift;
  opt.floating = shift > 0.0;
  return random_function(n, opt, rng);
}

inline Ecg diagonal_ecg(std::initializer_list<double> diag) {
  VectorXd d(static_cast<Eigen::Index>(diag.size()));
  Eigen::Index i = 0;
  for (double x : diag) d(i++) = x;
  return Ecg::unshifted(d.asDiagonal());
}

}  // namespace testing
