#include "gaussbounds/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <nlohmann/json.hpp>

#include "gaussbounds/oracle.hpp"
#include "gaussbounds/special_functions.hpp"

namespace gaussbounds {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr double kMcSigmas = 5.0;
constexpr double kRadialRelTol = 1e-8;
constexpr double kRouteRelTol = 1e-7;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json config_json(const RunConfig& cfg) {
  Json sys;
  sys["electrons"] = cfg.system.n_electrons;
  Json nuclei = Json::array();
  for (const Nucleus& n : cfg.system.nuclei) {
    nuclei.push_back({{"charge", n.charge}, {"position", {n.position.x(), n.position.y(), n.position.z()}}});
  }
  sys["nuclei"] = nuclei;
  Json basis;
  basis["file"] = optional_json(cfg.basis.file);
  basis["size"] = cfg.basis.size;
  basis["seed"] = cfg.basis.seed;
  basis["exponent_range"] = {cfg.basis.generator.exponent_min, cfg.basis.generator.exponent_max};
  basis["shift_range"] = cfg.basis.generator.shift_range;
  basis["floating"] = cfg.basis.generator.floating;
  basis["symmetrize"] = cfg.basis.symmetrize;
  basis["parity"] = cfg.basis.parity;
  Json opt = nullptr;
  if (cfg.optimize.present) {
    opt = {{"sweeps", cfg.optimize.sweeps},
           {"trials", cfg.optimize.trials},
           {"grow", cfg.optimize.grow},
           {"max_overlap", cfg.optimize.max_overlap},
           {"min_pivot", cfg.optimize.min_pivot}};
  }
  Json bounds = {{"beta", cfg.bounds.beta ? Json(*cfg.bounds.beta) : Json("ritz2")},
                 {"stevenson_alpha", optional_json(cfg.bounds.stevenson_alpha)}};
  Json quad = {{"rel_tol", cfg.quadrature.rel_tol},
               {"abs_tol", cfg.quadrature.abs_tol},
               {"max_subdivisions", cfg.quadrature.max_subdivisions}};
  Json oracle = {{"samples", cfg.oracle.samples}, {"seed", cfg.oracle.seed}, {"pairs", cfg.oracle.pairs}};
  return {{"system", sys},     {"basis", basis},   {"optimize", opt},
          {"bounds", bounds},  {"quadrature", quad}, {"oracle", oracle},
          {"integrals", {{"h2", cfg.integrals_h2}}}};
}

Json empty_report(const std::string& command, const RunConfig& cfg) {
  Json r;
  r["schema_version"] = kReportSchemaVersion;
  r["command"] = command;
  r["status"] = "ok";
  r["error"] = nullptr;
  r["config"] = config_json(cfg);
  r["energy_upper"] = nullptr;
  r["variance"] = nullptr;
  r["bounds"] = nullptr;
  r["per_term_h2"] = nullptr;
  r["integrals"] = nullptr;
  r["trace"] = nullptr;
  r["timings"] = {{"basis_s", nullptr}, {"assembly_s", nullptr}, {"checks_s", nullptr}, {"total_s", nullptr}};
  r["basis_file_path"] = nullptr;
  r["warnings"] = Json::array();
  return r;
}

Json bounds_json(const BoundsReport& b) {
  Json j;
  j["energy_upper"] = b.energy_upper;
  j["variance"] = b.variance;
  j["beta"] = number_or_null(b.beta);
  j["beta_source"] = b.beta_source;
  j["weinstein_lb"] = b.weinstein_lb;
  j["weinstein_caveat"] = b.weinstein_caveat;
  j["temple_lb"] = optional_json(b.temple_lb);
  j["temple_valid"] = b.temple_valid;
  j["stevenson_lb"] = optional_json(b.stevenson_lb);
  j["stevenson_alpha"] = optional_json(b.stevenson_alpha);
  j["interval"] = b.temple_lb ? Json{*b.temple_lb, b.energy_upper} : Json(nullptr);
  return j;
}

struct ObtainedBasis {
  Basis basis;
  std::vector<TracePoint> trace;
  bool generated = false;
};

OptimizeOptions optimize_options(const RunConfig& cfg, int threads) {
  OptimizeOptions o;
  o.sweeps = cfg.optimize.sweeps;
  o.trials = cfg.optimize.trials;
  o.seed = cfg.basis.seed;
  o.generator = cfg.basis.generator;
  o.threads = threads;
  o.max_overlap = cfg.optimize.max_overlap;
  o.min_pivot = cfg.optimize.min_pivot;
  return o;
}

ObtainedBasis obtain_basis(const RunConfig& cfg, bool optimize, int threads) {
  ObtainedBasis out;
  if (cfg.basis.file) {
    out.basis = read_basis(*cfg.basis.file);
    if (out.basis.n_electrons != cfg.system.n_electrons) {
      throw Error(ErrorKind::ConfigError, "basis file has " + std::to_string(out.basis.n_electrons) +
                                              " electrons, the system has " +
                                              std::to_string(cfg.system.n_electrons));
    }
    if (out.basis.size() == 0) throw Error(ErrorKind::ConfigError, "basis file holds no functions");
  } else {
    out.generated = true;
    if (!(optimize && cfg.optimize.grow)) {
      out.basis = random_basis(cfg.system.n_electrons, cfg.basis.size, cfg.basis.generator, cfg.basis.seed);
    }
  }
  out.basis.n_electrons = cfg.system.n_electrons;
  out.basis.symmetrize = cfg.basis.symmetrize;
  out.basis.parity = cfg.basis.parity;
  if (optimize) {
    OptimizeOptions o = optimize_options(cfg, threads);
    if (out.generated && cfg.optimize.grow) o.target_size = cfg.basis.size;
    OptimizeResult r = stochastic_optimize(cfg.system, out.basis, o);
    out.basis = std::move(r.basis);
    out.trace = std::move(r.trace);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t n, std::size_t count) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t limit = std::min(count, n * (n + 1) / 2);
  for (std::size_t i = 0; pairs.size() < limit; ++i) {
    const std::pair<std::size_t, std::size_t> p{i % n, (i + 1 + i / n) % n};
    if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(p);
    if (i > 10 * n * n) break;
  }
  return pairs;
}

OracleCheck mc_check(std::size_t k, std::size_t l, std::string name, double value, const OracleEstimate& est) {
  OracleCheck c{k, l, std::move(name), value, est.value, est.std_error, "mc", false};
  const double tol = est.std_error > 0.0 ? kMcSigmas * est.std_error : 1e-10 * std::abs(est.value);
  c.passed = std::abs(value - est.value) <= tol;
  return c;
}

OracleCheck radial_check(std::size_t k, std::size_t l, std::string name, double value, const OracleEstimate& est) {
  OracleCheck c{k, l, std::move(name), value, est.value, est.std_error, "radial", false};
  c.passed = std::abs(value - est.value) <= kRadialRelTol * std::abs(est.value) + 2.0 * est.std_error;
  return c;
}

OracleCheck relative_check(std::size_t k, std::size_t l, std::string name, std::string method, double value,
                           double reference, double tol) {
  OracleCheck c{k, l, std::move(name), value, reference, 0.0, std::move(method), false};
  c.passed = std::abs(value - reference) <= tol * std::abs(reference);
  return c;
}

std::string electron_label(int i) { return std::to_string(i + 1); }

}  // namespace

std::vector<OracleCheck> differential_suite(const RunConfig& cfg, const Basis& basis, bool extended, int threads) {
  const SystemDefinition& sys = cfg.system;
  const int n = sys.n_electrons;
  std::vector<OracleCheck> checks;
  McOptions mc;
  mc.samples = cfg.oracle.samples;
  mc.threads = threads;
  std::uint64_t stream = 0;
  auto next_mc = [&] {
    McOptions o = mc;
    o.seed = cfg.oracle.seed * 1000003ULL + stream++;
    return o;
  };

  for (const auto& [k, l] : sample_pairs(basis.size(), cfg.oracle.pairs)) {
    const Ecg& bra = basis.functions[k];
    const Ecg& ket = basis.functions[l];
    const PairProduct pp = pair_product(bra, ket);
    const LaplacianPolynomial lap_k = laplacian_polynomial(bra);
    const LaplacianPolynomial lap_l = laplacian_polynomial(ket);
    auto poly = [](const LaplacianPolynomial& p, const CoordsXd& r) {
      const CoordsXd d = r - p.center;
      return (d.transpose() * p.u * d).trace() + p.c0;
    };

    checks.push_back(mc_check(k, l, "kinetic", kinetic(pp, bra, ket),
                              mc_expectation(pp, [&](const CoordsXd& r) { return -0.5 * poly(lap_l, r); }, next_mc())));
    checks.push_back(mc_check(k, l, "del4(all,all)", del4_cross(pp, bra, ket, kAllParticles, kAllParticles),
                              mc_expectation(pp, [&](const CoordsXd& r) { return poly(lap_k, r) * poly(lap_l, r); },
                                             next_mc())));

    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const std::string tag = "(" + electron_label(i) + "," + electron_label(j) + ")";
        const PairCoupling w = PairCoupling::inter(i, j, n);
        const CoulombChannel ch = CoulombChannel::electron_pair(i, j, n);
        checks.push_back(radial_check(k, l, "inv_r" + tag, inv_r(pp, ch),
                                      radial_expectation(pp, w, std::nullopt, [](double r) { return 1.0 / r; })));
        checks.push_back(radial_check(k, l, "inv_r_squared" + tag, inv_r_squared(pp, ch),
                                      radial_expectation(pp, w, std::nullopt, [](double r) { return 1.0 / (r * r); })));
      }
      for (std::size_t a = 0; a < sys.nuclei.size(); ++a) {
        const Vector3d& pos = sys.nuclei[a].position;
        const std::string tag = "(" + electron_label(i) + ",nucleus " + std::to_string(a + 1) + ")";
        checks.push_back(radial_check(k, l, "inv_r" + tag, inv_r(pp, CoulombChannel::nuclear(i, pos, n)),
                                      radial_expectation(pp, PairCoupling::single(i, n), pos,
                                                         [](double r) { return 1.0 / r; })));
      }
    }

    if (n >= 2) {
      const CoulombChannel ee = CoulombChannel::electron_pair(0, 1, n);
      checks.push_back(mc_check(k, l, "coulomb_quadratic(1,2)", coulomb_quadratic(pp, ee, lap_l, cfg.quadrature),
                                mc_expectation(pp, [&](const CoordsXd& r) {
                                  return poly(lap_l, r) / (r.row(0) - r.row(1)).norm();
                                }, next_mc())));
    }
    if (!sys.nuclei.empty()) {
      const Vector3d a = sys.nuclei.front().position;
      const Vector3d b = sys.nuclei.back().position;
      checks.push_back(mc_check(k, l, "coulomb_quadratic(1,nucleus 1)",
                                coulomb_quadratic(pp, CoulombChannel::nuclear(0, a, n), lap_k, cfg.quadrature),
                                mc_expectation(pp, [&](const CoordsXd& r) {
                                  return poly(lap_k, r) / (r.row(0).transpose() - a).norm();
                                }, next_mc())));
      if (n >= 2) {
        checks.push_back(mc_check(k, l, "inv_rij_rpa(1,2;1,nucleus 1)",
                                  inv_rij_rpa_general(pp, 0, 1, 0, a, cfg.quadrature),
                                  mc_expectation(pp, [&](const CoordsXd& r) {
                                    return 1.0 / ((r.row(0) - r.row(1)).norm() * (r.row(0).transpose() - a).norm());
                                  }, next_mc())));
        const std::string tag = "(1,nucleus 1;2,nucleus " + std::to_string(sys.nuclei.size()) + ")";
        checks.push_back(mc_check(k, l, "inv_ria_rjb" + tag, inv_ria_rjb_general(pp, 0, a, 1, b, cfg.quadrature),
                                  mc_expectation(pp, [&](const CoordsXd& r) {
                                    return 1.0 / ((r.row(0).transpose() - a).norm() * (r.row(1).transpose() - b).norm());
                                  }, next_mc())));
      }
    }

    if (!extended) continue;
    checks.push_back(relative_check(k, l, "kinetic hermiticity", "swap", kinetic(pp, bra, ket),
                                    kinetic(pair_product(ket, bra), ket, bra), 1e-12));
    if (n >= 2) {
      const InvRsqCoefficients c = inv_r_squared_coefficients(pp, CoulombChannel::electron_pair(0, 1, n));
      const double x = std::sqrt(c.beta / c.a);
      if (x >= 1e-4 && x <= 5.0) {
        const double direct = pp.overlap * kSqrtPi * std::exp(-x * x) * erfi(x) / std::sqrt(c.a * c.beta);
        checks.push_back(relative_check(k, l, "inv_r_squared(1,2) erfi form", "closed-form",
                                        inv_r_squared(pp, 0, 1), direct, 1e-12));
      }
    }
    if (n >= 2 && !sys.nuclei.empty()) {
      const Vector3d a = sys.nuclei.front().position;
      const double u_form = inv_rij_rpa_general(pp, 0, 1, 0, a, cfg.quadrature, RijRpaRoute::UForm);
      const RijRpaCoefficients coeffs = rijrpa_coeffs(pp, 0, 1, 0, a);
      if (coeffs.mu_a > 0.0) {
        checks.push_back(relative_check(k, l, "inv_rij_rpa y-form vs u-form", "route",
                                        inv_rij_rpa_general(pp, 0, 1, 0, a, cfg.quadrature, RijRpaRoute::YForm),
                                        u_form, kRouteRelTol));
      }
      checks.push_back(relative_check(k, l, "inv_rij_rpa two-channel vs u-form", "route",
                                      two_channel_integral(pp, CoulombChannel::electron_pair(0, 1, n),
                                                           CoulombChannel::nuclear(0, a, n), cfg.quadrature),
                                      u_form, kRouteRelTol));
      const PairProduct pp0 = pair_product(Ecg::unshifted(bra.exponents()), Ecg::unshifted(ket.exponents()));
      checks.push_back(relative_check(k, l, "inv_rij_rpa zero-shift closed form", "route",
                                      inv_rij_rpa_general(pp0, 0, 1, 0, Vector3d::Zero(), cfg.quadrature,
                                                          RijRpaRoute::UForm),
                                      inv_rij_rpa_zero_shift(pp0.a, 0, 1, 0), kRouteRelTol));
    }
  }

  if (extended && n == 2) {
    Basis head = basis;
    head.functions.erase(head.functions.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(basis.size(), 8)),
                         head.functions.end());
    AssemblyOptions ao;
    ao.quadrature = cfg.quadrature;
    ao.threads = threads;
    ao.full_h2 = true;
    AssembledMatrices am = assemble_matrices(sys, head, ao);
    const double scale = am.matrices.h2.cwiseAbs().maxCoeff();
    OracleCheck sym{0, head.size() - 1, "H2 symmetry", am.h2_asymmetry, 0.0, 0.0, "swap", false};
    sym.passed = am.h2_asymmetry <= 1e-10 * scale;
    checks.push_back(sym);
    am.matrices.solve();
    const RayleighVariance rv = rayleigh_and_variance(am.matrices, am.matrices.ground_vector);
    OracleCheck var{0, head.size() - 1, "Ritz variance nonnegative", rv.variance, 0.0, 0.0, "bound", false};
    var.passed = rv.variance >= -kVarianceTolerance;
    checks.push_back(var);
  }
  return checks;
}

int run_command(const std::string& command, const RunConfig& cfg, const RunOptions& opt, std::ostream& log) {
  const auto t0 = Clock::now();
  Json report = empty_report(command, cfg);
  int code = kExitOk;
  std::filesystem::create_directories(opt.out_dir);
  const auto report_path = opt.out_dir / "report.json";

  auto write_report = [&] {
    report["timings"]["total_s"] = seconds_since(t0);
    std::ofstream out(report_path, std::ios::binary);
    out << report.dump(2) << "\n";
  };

  const bool needs_h2 = command == "bounds" || command == "verify" || (command == "integrals" && cfg.integrals_h2);
  if (needs_h2 && cfg.system.n_electrons != 2) {
    throw Error(ErrorKind::UnsupportedElectronCount,
                "H^2 matrix elements are implemented for two electrons; the system has " +
                    std::to_string(cfg.system.n_electrons));
  }

  try {
    if (command == "integrals" || command == "verify") {
      const bool extended = command == "verify";
      auto tb = Clock::now();
      const ObtainedBasis ob = obtain_basis(cfg, false, opt.threads);
      report["timings"]["basis_s"] = seconds_since(tb);
      tb = Clock::now();
      const std::vector<OracleCheck> checks = differential_suite(cfg, ob.basis, extended, opt.threads);
      report["timings"]["checks_s"] = seconds_since(tb);
      Json table = Json::array();
      std::size_t failed = 0;
      log << std::left << std::setw(42) << "kernel" << std::setw(10) << "pair" << std::setw(22) << "value"
          << std::setw(22) << "reference" << std::setw(12) << "delta/err" << "result\n";
      for (const OracleCheck& c : checks) {
        const double delta = c.value - c.reference;
        table.push_back({{"pair", {c.bra, c.ket}},
                         {"kernel", c.kernel},
                         {"value", number_or_null(c.value)},
                         {"reference", number_or_null(c.reference)},
                         {"reference_error", number_or_null(c.reference_error)},
                         {"method", c.method},
                         {"delta", number_or_null(delta)},
                         {"passed", c.passed}});
        if (!c.passed) ++failed;
        const double ratio = c.reference_error > 0.0 ? std::abs(delta) / c.reference_error : std::abs(delta);
        log << std::left << std::setw(42) << c.kernel << std::setw(10)
            << (std::to_string(c.bra) + "," + std::to_string(c.ket)) << std::setw(22) << std::setprecision(14)
            << c.value << std::setw(22) << c.reference << std::setw(12) << std::setprecision(3) << ratio
            << (c.passed ? "PASS" : "FAIL") << "\n";
      }
      report["integrals"] = table;
      if (cfg.system.n_electrons == 2 && cfg.integrals_h2) {
        const std::size_t l = std::min<std::size_t>(1, ob.basis.size() - 1);
        const H2Terms terms = h2_element_terms(cfg.system, ob.basis, 0, l, cfg.quadrature);
        Json per_term;
        for (std::size_t i = 0; i < H2Terms::kCount; ++i) per_term[std::string(H2Terms::kNames[i])] = terms.values[i];
        per_term["pair"] = {0, l};
        per_term["total"] = terms.total();
        report["per_term_h2"] = per_term;
      }
      log << checks.size() - failed << "/" << checks.size() << " checks passed\n";
      if (failed > 0) {
        code = kExitNumerical;
        report["status"] = "failed";
        report["error"] = {{"kind", "OracleMismatch"},
                           {"message", std::to_string(failed) + " kernel(s) disagree with their oracle"}};
      }
    } else if (command == "optimize" || command == "bounds") {
      const bool optimize = command == "optimize" || (cfg.optimize.present && !cfg.basis.file);
      const auto tb = Clock::now();
      const ObtainedBasis ob = obtain_basis(cfg, optimize, opt.threads);
      report["timings"]["basis_s"] = seconds_since(tb);
      if (!ob.trace.empty()) {
        Json trace = Json::array();
        std::ofstream csv(opt.out_dir / "trace.csv", std::ios::binary);
        csv << "sweep,basis_size,energy\n" << std::setprecision(17);
        for (const TracePoint& p : ob.trace) {
          trace.push_back({{"sweep", p.sweep}, {"basis_size", p.basis_size}, {"energy", p.energy}});
          csv << p.sweep << "," << p.basis_size << "," << p.energy << "\n";
        }
        report["trace"] = trace;
      }
      if (optimize || ob.generated) {
        const auto path = opt.out_dir / "basis.json";
        write_basis(ob.basis, path);
        report["basis_file_path"] = path.string();
      } else {
        report["basis_file_path"] = *cfg.basis.file;
      }

      if (command == "optimize") {
        const double e = ob.trace.empty() ? ground_energy(cfg.system, ob.basis, opt.threads) : ob.trace.back().energy;
        report["energy_upper"] = e;
        log << std::setprecision(12) << "basis size " << ob.basis.size() << "  E = " << e << "\n";
      } else {
        const auto ta = Clock::now();
        AssemblyOptions ao;
        ao.quadrature = cfg.quadrature;
        ao.threads = opt.threads;
        AssembledMatrices am = assemble_matrices(cfg.system, ob.basis, ao);
        report["timings"]["assembly_s"] = seconds_since(ta);
        const BoundsReport b = compute_bounds(am.matrices, cfg.bounds);
        report["energy_upper"] = b.energy_upper;
        report["variance"] = b.variance;
        report["bounds"] = bounds_json(b);
        for (const std::string& w : b.warnings) report["warnings"].push_back(w);
        const std::size_t l = std::min<std::size_t>(1, ob.basis.size() - 1);
        const H2Terms terms = h2_element_terms(cfg.system, ob.basis, 0, l, cfg.quadrature);
        Json per_term;
        for (std::size_t i = 0; i < H2Terms::kCount; ++i) per_term[std::string(H2Terms::kNames[i])] = terms.values[i];
        per_term["pair"] = {0, l};
        per_term["total"] = terms.total();
        report["per_term_h2"] = per_term;

        log << std::setprecision(12) << "basis size     " << ob.basis.size() << "\n"
            << "E (upper)      " << b.energy_upper << "\n"
            << "variance       " << b.variance << "\n"
            << "beta           " << b.beta << " (" << b.beta_source << ")\n"
            << "Weinstein      " << b.weinstein_lb << "\n";
        if (b.temple_lb) {
          log << "Temple         " << *b.temple_lb << "\n"
              << "interval       [" << *b.temple_lb << ", " << b.energy_upper << "]\n";
        } else {
          log << "Temple         not valid (beta is not above E)\n";
        }
        if (b.stevenson_lb) log << "Stevenson      " << *b.stevenson_lb << "\n";
        for (const std::string& w : b.warnings) log << "warning: " << w << "\n";
      }
    } else {
      throw Error(ErrorKind::ConfigError, "unknown command '" + command + "'");
    }
  } catch (const Error& e) {
    const bool config = e.kind() == ErrorKind::ConfigError || e.kind() == ErrorKind::UnsupportedElectronCount;
    code = config ? kExitConfig : kExitNumerical;
    report["status"] = "error";
    report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    log << "error: " << e.what() << "\n";
  }
  write_report();
  return code;
}

}  // namespace gaussbounds
