#include "gaussbounds/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace gaussbounds {

namespace {

// Kronrod abscissae (descending) and weights; the even-indexed nodes carry the
// embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

class NonFinite : public std::exception {
 public:
  explicit NonFinite(double x) : x(x) {}
  double x;
};

Segment gk15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw NonFinite(x);
    return v;
  };
  const double fc = eval(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = eval(center - dx);
    fv2[j] = eval(center + dx);
    const double sum = fv1[j] + fv2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  resk *= half;
  resg *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);

  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  err = std::max(err, roundoff);
  return {a, b, resk, err};
}

QuadratureResult adapt(const Integrand& g, double a, double b, const QuadratureSpec& spec) {
  std::priority_queue<Segment> heap;
  const Segment first = gk15(g, a, b);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  int subdivisions = 1;
  auto done = [&] { return total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  while (!done() && subdivisions < spec.max_subdivisions) {
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    const Segment left = gk15(g, worst.a, mid);
    const Segment right = gk15(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  // Re-sum to shed the accumulated cancellation in the running totals.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  QuadratureResult result;
  result.value = total;
  result.error_estimate = total_err;
  result.subdivisions_used = subdivisions;
  result.converged = done();
  return result;
}

}  // namespace

QuadratureResult try_integrate(const Integrand& f, Interval interval, const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) || spec.max_subdivisions < 1) {
    throw Error(ErrorKind::DomainError, "quadrature spec needs positive tolerances");
  }
  const double lo = interval.lower;
  const double hi = interval.upper;
  auto transform = spec.transform;
  if (std::isinf(hi)) transform = QuadratureTransform::RationalInfinite;

  try {
    switch (transform) {
      case QuadratureTransform::None:
        return adapt(f, lo, hi, spec);
      case QuadratureTransform::SqrtEndpoint: {
        const double width = hi - lo;
        auto g = [&](double y) { return 2.0 * width * y * f(lo + width * y * y); };
        return adapt(g, 0.0, 1.0, spec);
      }
      case QuadratureTransform::RationalInfinite: {
        if (!std::isinf(hi)) {
          throw Error(ErrorKind::DomainError, "rational map needs an infinite upper limit");
        }
        auto g = [&](double w) {
          const double s = 1.0 - w;
          return f(lo + w / s) / (s * s);
        };
        return adapt(g, 0.0, 1.0, spec);
      }
    }
  } catch (const NonFinite& nf) {
    std::ostringstream os;
    os << "integrand is not finite at transformed abscissa " << nf.x;
    throw QuadratureError(QuadratureResult{}, os.str());
  }
  return {};
}

QuadratureResult integrate(const Integrand& f, Interval interval, const QuadratureSpec& spec) {
  QuadratureResult r = try_integrate(f, interval, spec);
  if (!r.converged) {
    std::ostringstream os;
    os.precision(17);
    os << "tolerance not met on [" << interval.lower << ", " << interval.upper
       << "]: value " << r.value << " +- " << r.error_estimate << " after "
       << r.subdivisions_used << " subdivisions";
    throw QuadratureError(r, os.str());
  }
  return r;
}

}  // namespace gaussbounds
