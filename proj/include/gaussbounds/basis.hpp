#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gaussbounds/coulomb.hpp"
#include "gaussbounds/hsq.hpp"
#include "gaussbounds/spectral.hpp"

namespace gaussbounds {

struct Basis {
  int n_electrons = 2;
  std::vector<Ecg> functions;
  /// Two-electron spatial projection: +1 symmetric, -1 antisymmetric.
  bool symmetrize = true;
  int parity = 1;

  std::size_t size() const { return functions.size(); }
};

struct AssemblyOptions {
  bool with_h2 = true;
  QuadratureSpec quadrature{};
  int threads = 1;
  /// Compute both triangles of H^2 instead of mirroring the upper one.
  bool full_h2 = false;
};

struct AssembledMatrices {
  SpectralMatrices matrices;
  /// max |H2_kl - H2_lk| before symmetrization (zero when mirrored).
  double h2_asymmetry = 0.0;
};

/// One matrix element between basis functions k and l, projected when the basis
/// is symmetrized.
double overlap_element(const Basis& basis, std::size_t k, std::size_t l);
double h_element(const SystemDefinition& sys, const Basis& basis, std::size_t k, std::size_t l);
H2Terms h2_element_terms(const SystemDefinition& sys, const Basis& basis, std::size_t k, std::size_t l,
                         const QuadratureSpec& q);

/// S, H and optionally H^2 for the basis, with each function scaled to unit norm.
/// Rows are distributed over threads; every element is computed independently so
/// the result does not depend on the thread count.  Throws OverlapError when a
/// function has non-positive norm after projection.
AssembledMatrices assemble_matrices(const SystemDefinition& sys, const Basis& basis,
                                    const AssemblyOptions& opt = {});

struct GeneratorOptions {
  double exponent_min = 1e-2;
  double exponent_max = 1e2;
  /// Shift components are uniform in [-shift_range, shift_range] when floating.
  double shift_range = 0.0;
  bool floating = false;
};

/// A = sum_i a_i J_ii + sum_{i<j} a_ij J_ij with all exponents log-uniform, so A is
/// always positive definite.
Ecg random_function(int n_electrons, const GeneratorOptions& opt, std::mt19937_64& rng);

Basis random_basis(int n_electrons, std::size_t size, const GeneratorOptions& opt, std::uint64_t seed,
                   bool symmetrize = true, int parity = 1);

/// Versioned JSON: {version, n_electrons, functions: [{A_lower_triangle_row_major, s}]}.
std::string basis_to_json(const Basis& basis);
Basis basis_from_json(const std::string& text);
void write_basis(const Basis& basis, const std::filesystem::path& path);
Basis read_basis(const std::filesystem::path& path);

inline constexpr int kBasisFormatVersion = 1;

}  // namespace gaussbounds
