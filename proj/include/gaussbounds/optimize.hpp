#pragma once

#include <cstdint>
#include <vector>

#include "gaussbounds/basis.hpp"

namespace gaussbounds {

struct OptimizeOptions {
  /// Greedy growth target; no growth when the basis is already this large.
  std::size_t target_size = 0;
  int sweeps = 10;
  int trials = 20;
  std::uint64_t seed = 1;
  GeneratorOptions generator{};
  int threads = 1;
  /// Candidates overlapping an existing function more than this are rejected.
  double max_overlap = 0.99;
  /// Smallest accepted Cholesky pivot of the normalized overlap matrix.
  double min_pivot = 1e-8;
};

struct TracePoint {
  int sweep = 0;  ///< 0 for the starting point / growth phase
  std::size_t basis_size = 0;
  double energy = 0.0;
};

struct OptimizeResult {
  Basis basis;
  std::vector<TracePoint> trace;
  double energy = 0.0;
  std::size_t rejected = 0;
};

/// Competitive selection on the Ritz ground value.  Growth appends the best of
/// `trials` random candidates until target_size; each sweep then offers every
/// slot `trials` replacements and keeps the best one only if it lowers the
/// energy, so the trace is nonincreasing.  Candidates that make the overlap
/// matrix (nearly) singular are rejected.
OptimizeResult stochastic_optimize(const SystemDefinition& sys, Basis basis, const OptimizeOptions& opt);

/// Lowest Ritz value of the basis (H and S only).
double ground_energy(const SystemDefinition& sys, const Basis& basis, int threads = 1);

}  // namespace gaussbounds
