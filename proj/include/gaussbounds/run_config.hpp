#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gaussbounds/basis.hpp"
#include "gaussbounds/optimize.hpp"

namespace gaussbounds {

struct BasisSource {
  std::optional<std::string> file;
  std::size_t size = 0;
  std::uint64_t seed = 1;
  GeneratorOptions generator{};
  bool symmetrize = true;
  int parity = 1;
};

struct OptimizeSection {
  bool present = false;
  int sweeps = 10;
  int trials = 30;
  /// Grow a generated basis greedily from empty instead of drawing it at random.
  bool grow = true;
  double max_overlap = 0.99;
  double min_pivot = 1e-8;
};

struct OracleSection {
  long long samples = 1'000'000;
  std::uint64_t seed = 1;
  std::size_t pairs = 3;
};

struct RunConfig {
  SystemDefinition system{};
  BasisSource basis{};
  OptimizeSection optimize{};
  BoundsOptions bounds{};
  QuadratureSpec quadrature{1e-12, 1e-14, 400, QuadratureTransform::None};
  OracleSection oracle{};
  bool integrals_h2 = true;
};

/// Parses a TOML run configuration.  Syntax errors and invalid values raise
/// Error(ConfigError) whose message starts with "source:line:column:" when a
/// position is known.
RunConfig parse_config(const std::string& text, const std::string& source = "config");
RunConfig load_config(const std::string& path);

}  // namespace gaussbounds
