#include "gaussbounds/optimize.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include <Eigen/Eigenvalues>

#include "gaussbounds/parallel.hpp"

namespace gaussbounds {

namespace {

double projected_overlap(const Basis& b, const Ecg& x, const Ecg& y) {
  auto k = [](const Ecg& p, const Ecg& q) { return pair_product(p, q).overlap; };
  return b.symmetrize ? symmetrized_element(k, x, y, b.parity) : k(x, y);
}

double projected_h(const SystemDefinition& sys, const Basis& b, const Ecg& x, const Ecg& y) {
  auto k = [&](const Ecg& p, const Ecg& q) { return assemble_h_element(sys, p, q); };
  return b.symmetrize ? symmetrized_element(k, x, y, b.parity) : k(x, y);
}

// Normalized S and H of the current basis, updated one row at a time.
class Workspace {
 public:
  Workspace(const SystemDefinition& sys, Basis basis) : sys_(sys), basis_(std::move(basis)) {
    const std::size_t n = basis_.size();
    norms_.resize(n);
    s_ = MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    h_ = MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) norms_[k] = projected_overlap(basis_, basis_.functions[k], basis_.functions[k]);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = k; l < n; ++l) {
        const auto i = static_cast<Eigen::Index>(k);
        const auto j = static_cast<Eigen::Index>(l);
        const double f = 1.0 / std::sqrt(norms_[k] * norms_[l]);
        if (k != l) s_(i, j) = s_(j, i) = f * projected_overlap(basis_, basis_.functions[k], basis_.functions[l]);
        h_(i, j) = h_(j, i) = f * projected_h(sys_, basis_, basis_.functions[k], basis_.functions[l]);
      }
    }
  }

  struct Candidate {
    Ecg function;
    double norm = 0.0;
    VectorXd s_row;
    VectorXd h_row;
    double energy = std::numeric_limits<double>::infinity();
    bool valid = false;
  };

  /// Evaluates `f` placed at `slot` (slot == size appends).
  Candidate evaluate(const Ecg& f, std::size_t slot, const OptimizeOptions& opt) const {
    Candidate c{f, 0.0, {}, {}};
    const std::size_t n = basis_.size();
    const std::size_t m = slot == n ? n + 1 : n;
    c.norm = projected_overlap(basis_, f, f);
    if (!(c.norm > 0.0)) return c;
    c.s_row = VectorXd::Zero(static_cast<Eigen::Index>(m));
    c.h_row = VectorXd::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t l = 0; l < n; ++l) {
      if (l == slot) continue;
      const double scale = 1.0 / std::sqrt(c.norm * norms_[l]);
      const double s = scale * projected_overlap(basis_, f, basis_.functions[l]);
      if (!(std::abs(s) <= opt.max_overlap)) return c;
      c.s_row(static_cast<Eigen::Index>(l)) = s;
      c.h_row(static_cast<Eigen::Index>(l)) = scale * projected_h(sys_, basis_, f, basis_.functions[l]);
    }
    c.s_row(static_cast<Eigen::Index>(slot)) = 1.0;
    c.h_row(static_cast<Eigen::Index>(slot)) = projected_h(sys_, basis_, f, f) / c.norm;

    MatrixXd s = s_;
    MatrixXd h = h_;
    if (m > n) {
      s.conservativeResize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      h.conservativeResize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    }
    const auto k = static_cast<Eigen::Index>(slot);
    s.row(k) = c.s_row.transpose();
    s.col(k) = c.s_row;
    h.row(k) = c.h_row.transpose();
    h.col(k) = c.h_row;
    const std::optional<double> e = lowest(h, s, opt.min_pivot);
    if (!e) return c;
    c.energy = *e;
    c.valid = true;
    return c;
  }

  void accept(std::size_t slot, const Candidate& c) {
    const std::size_t n = basis_.size();
    if (slot == n) {
      basis_.functions.push_back(c.function);
      norms_.push_back(c.norm);
      s_.conservativeResize(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
      h_.conservativeResize(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
    } else {
      basis_.functions[slot] = c.function;
      norms_[slot] = c.norm;
    }
    const auto k = static_cast<Eigen::Index>(slot);
    s_.row(k) = c.s_row.transpose();
    s_.col(k) = c.s_row;
    h_.row(k) = c.h_row.transpose();
    h_.col(k) = c.h_row;
    energy_ = c.energy;
  }

  double energy() {
    if (!energy_) {
      if (basis_.size() == 0) return std::numeric_limits<double>::infinity();
      energy_ = lowest(h_, s_, 0.0);
      if (!energy_) throw OverlapError(-1, "starting basis is linearly dependent");
    }
    return *energy_;
  }

  const Basis& basis() const { return basis_; }

  static std::optional<double> lowest(const MatrixXd& h, const MatrixXd& s, double min_pivot) {
    MatrixXd l;
    if (try_cholesky(s, l) >= 0) return std::nullopt;
    if (l.diagonal().cwiseAbs2().minCoeff() < min_pivot) return std::nullopt;
    const auto lower = l.triangularView<Eigen::Lower>();
    MatrixXd reduced = lower.solve(h);
    reduced = lower.solve(reduced.transpose()).transpose();
    reduced = 0.5 * (reduced + reduced.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(reduced, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) return std::nullopt;
    return eig.eigenvalues()(0);
  }

 private:
  const SystemDefinition& sys_;
  Basis basis_;
  std::vector<double> norms_;
  MatrixXd s_;
  MatrixXd h_;
  std::optional<double> energy_;
};

}  // namespace

OptimizeResult stochastic_optimize(const SystemDefinition& sys, Basis basis, const OptimizeOptions& opt) {
  if (opt.trials < 1 && (opt.sweeps > 0 || opt.target_size > basis.size())) {
    throw Error(ErrorKind::DomainError, "at least one trial per slot is needed");
  }
  for (const Ecg& f : basis.functions) {
    if (f.n_electrons() != sys.n_electrons) {
      throw Error(ErrorKind::DimensionMismatch, "basis function electron count differs from the system");
    }
  }
  basis.n_electrons = sys.n_electrons;
  std::mt19937_64 rng(opt.seed);
  Workspace ws(sys, std::move(basis));
  OptimizeResult result;

  // Candidates are drawn serially, evaluated in parallel and reduced by index.
  auto best_for_slot = [&](std::size_t slot) {
    std::vector<Ecg> drawn;
    drawn.reserve(static_cast<std::size_t>(opt.trials));
    for (int t = 0; t < opt.trials; ++t) drawn.push_back(random_function(sys.n_electrons, opt.generator, rng));
    std::vector<std::optional<Workspace::Candidate>> evaluated(drawn.size());
    parallel_for(drawn.size(), opt.threads, [&](std::size_t t) {
      try {
        evaluated[t] = ws.evaluate(drawn[t], slot, opt);
      } catch (const Error&) {
        evaluated[t].reset();
      }
    });
    std::optional<Workspace::Candidate> best;
    for (auto& c : evaluated) {
      if (!c || !c->valid) {
        ++result.rejected;
        continue;
      }
      if (!best || c->energy < best->energy) best = std::move(c);
    }
    return best;
  };

  if (ws.basis().size() > 0) result.trace.push_back({0, ws.basis().size(), ws.energy()});
  int failed_rounds = 0;
  while (ws.basis().size() < opt.target_size) {
    const std::size_t slot = ws.basis().size();
    const auto best = best_for_slot(slot);
    if (!best) {
      if (++failed_rounds > 100) {
        throw Error(ErrorKind::DomainError, "no acceptable candidate for slot " + std::to_string(slot));
      }
      continue;
    }
    const double before = slot == 0 ? std::numeric_limits<double>::infinity() : ws.energy();
    if (best->energy <= before) {
      ws.accept(slot, *best);
      result.trace.push_back({0, ws.basis().size(), ws.energy()});
    }
  }

  for (int sweep = 1; sweep <= opt.sweeps; ++sweep) {
    for (std::size_t slot = 0; slot < ws.basis().size(); ++slot) {
      const auto best = best_for_slot(slot);
      if (best && best->energy < ws.energy()) ws.accept(slot, *best);
    }
    result.trace.push_back({sweep, ws.basis().size(), ws.energy()});
  }

  result.basis = ws.basis();
  result.energy = ws.basis().size() > 0 ? ws.energy() : std::numeric_limits<double>::infinity();
  return result;
}

double ground_energy(const SystemDefinition& sys, const Basis& basis, int threads) {
  AssemblyOptions opt;
  opt.with_h2 = false;
  opt.threads = threads;
  AssembledMatrices am = assemble_matrices(sys, basis, opt);
  am.matrices.solve();
  return am.matrices.ritz_values(0);
}

}  // namespace gaussbounds
