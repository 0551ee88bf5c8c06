#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gaussbounds/run_config.hpp"

namespace gaussbounds {

inline constexpr int kReportSchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int threads = 1;
  std::string config_path;
};

/// One kernel-versus-oracle comparison.
struct OracleCheck {
  std::size_t bra = 0;
  std::size_t ket = 0;
  std::string kernel;
  double value = 0.0;
  double reference = 0.0;
  double reference_error = 0.0;
  std::string method;
  bool passed = false;
};

/// Compares every analytic kernel with an independent oracle for a few pairs of
/// raw (unprojected) basis functions.  `extended` adds route cross-checks.
std::vector<OracleCheck> differential_suite(const RunConfig& cfg, const Basis& basis, bool extended, int threads);

/// Runs one subcommand ("integrals", "optimize", "bounds" or "verify"), writing
/// report.json (and basis.json / trace.csv where relevant) into out_dir.
/// Returns the process exit code; progress goes to `log`.
int run_command(const std::string& command, const RunConfig& cfg, const RunOptions& opt, std::ostream& log);

}  // namespace gaussbounds
