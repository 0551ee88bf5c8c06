#include "gaussbounds/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gaussbounds/parallel.hpp"
#include "gaussbounds/special_functions.hpp"

namespace gaussbounds {

namespace {

// Running mean and sum of squared deviations; merged in a fixed order.
struct Moments {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    const long long total = count + o.count;
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / static_cast<double>(total);
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / static_cast<double>(total);
    count = total;
  }
};

std::mt19937_64 block_engine(std::uint64_t seed, long long block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

template <typename BlockFn>
Moments run_blocks(const McOptions& opt, BlockFn&& fn) {
  if (opt.samples < 1 || opt.block_size < 1) {
    throw Error(ErrorKind::DomainError, "sample count must be positive");
  }
  const long long n_blocks = (opt.samples + opt.block_size - 1) / opt.block_size;
  std::vector<Moments> per_block(static_cast<std::size_t>(n_blocks));
  auto work = [&](long long b) {
    const long long count = std::min(opt.block_size, opt.samples - b * opt.block_size);
    per_block[static_cast<std::size_t>(b)] = fn(b, count);
  };
  parallel_for(static_cast<std::size_t>(n_blocks), opt.threads,
               [&](std::size_t b) { work(static_cast<long long>(b)); });
  Moments total;
  for (const Moments& m : per_block) total.merge(m);
  return total;
}

OracleEstimate finish(const Moments& m, double scale, OracleMethod method) {
  OracleEstimate est;
  est.samples = m.count;
  est.method = method;
  est.value = scale * m.mean;
  const double var = m.count > 1 ? m.m2 / static_cast<double>(m.count - 1) : 0.0;
  est.std_error = scale * std::sqrt(var / static_cast<double>(m.count));
  return est;
}

void check_finite(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteSample, "oracle integrand returned a non-finite value");
}

}  // namespace

OracleEstimate mc_expectation(const PairProduct& pp, const SampleFunction& f, const McOptions& opt) {
  const int n = pp.n_electrons();
  // Covariance per Cartesian component is A^-1 / 2.
  const MatrixXd l = cholesky(MatrixXd(0.5 * pp.inverse));
  const Moments m = run_blocks(opt, [&](long long block, long long count) {
    std::mt19937_64 rng = block_engine(opt.seed, block);
    std::normal_distribution<double> normal;
    Moments acc;
    CoordsXd z(n, 3);
    CoordsXd r(n, 3);
    for (long long s = 0; s < count; ++s) {
      for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < n; ++i) z(i, c) = normal(rng);
      }
      r.noalias() = l * z;
      r += pp.mean;
      const double v = f(r);
      check_finite(v);
      acc.add(v);
    }
    return acc;
  });
  return finish(m, pp.overlap, OracleMethod::Mc);
}

MarginalPair marginal_pair_density(const PairProduct& pp, const PairCoupling& first,
                                   const PairCoupling& second) {
  const VectorXd w1 = first.vector();
  const VectorXd w2 = second.vector();
  const MatrixXd c = 0.5 * pp.inverse;
  MarginalPair out;
  out.covariance(0, 0) = w1.dot(c * w1);
  out.covariance(1, 1) = w2.dot(c * w2);
  out.covariance(0, 1) = out.covariance(1, 0) = w1.dot(c * w2);
  const double det = out.covariance.determinant();
  if (!(det > 1e-14 * out.covariance(0, 0) * out.covariance(1, 1))) {
    throw Error(ErrorKind::DegenerateMarginal, "the two contractions are linearly dependent");
  }
  out.mean1 = first.contract(pp.mean).transpose();
  out.mean2 = second.contract(pp.mean).transpose();
  return out;
}

OracleEstimate marginal_pair_mc(const PairProduct& pp, const PairCoupling& first,
                                const PairCoupling& second,
                                const std::function<double(const Vector3d&, const Vector3d&)>& g,
                                const McOptions& opt) {
  const MarginalPair mp = marginal_pair_density(pp, first, second);
  const Eigen::Matrix2d l = mp.covariance.llt().matrixL();
  const Moments m = run_blocks(opt, [&](long long block, long long count) {
    std::mt19937_64 rng = block_engine(opt.seed, block);
    std::normal_distribution<double> normal;
    Moments acc;
    for (long long s = 0; s < count; ++s) {
      Vector3d u;
      Vector3d w;
      for (int c = 0; c < 3; ++c) {
        const double z0 = normal(rng);
        const double z1 = normal(rng);
        u(c) = mp.mean1(c) + l(0, 0) * z0;
        w(c) = mp.mean2(c) + l(1, 0) * z0 + l(1, 1) * z1;
      }
      const double v = g(u, w);
      check_finite(v);
      acc.add(v);
    }
    return acc;
  });
  return finish(m, pp.overlap, OracleMethod::MarginalPair);
}

OracleEstimate radial_expectation(const PairProduct& pp, const PairCoupling& coupling,
                                  const std::optional<Vector3d>& center,
                                  const std::function<double(double)>& g, const QuadratureSpec& spec) {
  const double var = 0.5 * coupling.trace_with(pp.inverse);
  if (!(var > 0.0)) throw Error(ErrorKind::DegenerateMarginal, "marginal variance is not positive");
  Vector3d mu = coupling.contract(pp.mean).transpose();
  if (center) mu -= *center;
  const double m = mu.norm();
  const double sigma = std::sqrt(var);

  // Density of |u| for u ~ N(mu, sigma^2 I_3).
  auto density = [&](double rho) {
    if (m == 0.0) {
      return std::sqrt(2.0 / kPi) * rho * rho / (sigma * sigma * sigma) * std::exp(-0.5 * rho * rho / var);
    }
    const double d = rho - m;
    return -rho / (m * sigma * std::sqrt(2.0 * kPi)) * std::exp(-0.5 * d * d / var) *
           std::expm1(-2.0 * rho * m / var);
  };
  auto integrand = [&](double rho) { return rho > 0.0 ? g(rho) * density(rho) : 0.0; };

  const double width = 40.0 * sigma;
  const double lo = std::max(0.0, m - width);
  const double hi = m + width;
  // Split at the peak so each piece is unimodal.
  const double peak = std::max(lo, std::min(hi, std::max(m, sigma * std::sqrt(2.0))));
  QuadratureResult total;
  total.converged = true;
  for (auto [a, b] : {std::pair{lo, peak}, std::pair{peak, hi}}) {
    if (b <= a) continue;
    const QuadratureResult r = integrate(integrand, {a, b}, spec);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.subdivisions_used += r.subdivisions_used;
  }
  OracleEstimate est;
  est.value = pp.overlap * total.value;
  est.std_error = pp.overlap * total.error_estimate;
  est.samples = total.subdivisions_used;
  est.method = OracleMethod::Radial;
  return est;
}

}  // namespace gaussbounds
