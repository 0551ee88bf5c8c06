#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gaussbounds/commands.hpp"

int main(int argc, char** argv) {
  using namespace gaussbounds;
  CLI::App app{"Variational energies and lower bounds for explicitly correlated Gaussians"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config;
  std::string out = ".";
  int threads = 0;
  long long seed = -1;
  app.add_option("--config", config, "TOML run configuration")->required();
  app.add_option("--out", out, "Output directory for report.json and basis.json");
  app.add_option("--threads", threads, "Worker threads (default: GAUSS_BOUNDS_THREADS or 1)");
  app.add_option("--seed", seed, "Overrides basis.seed and oracle.seed");
  for (const char* name : {"integrals", "optimize", "bounds", "verify"}) app.add_subcommand(name);
  app.get_subcommand("integrals")->description("Compare kernels with independent oracles");
  app.get_subcommand("optimize")->description("Stochastic basis optimization");
  app.get_subcommand("bounds")->description("Energy upper bound and variance-based lower bounds");
  app.get_subcommand("verify")->description("Extended self-consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (threads <= 0) {
    const char* env = std::getenv("GAUSS_BOUNDS_THREADS");
    threads = env != nullptr ? std::atoi(env) : 1;
    if (threads <= 0) threads = 1;
  }

  RunOptions opt;
  opt.out_dir = out;
  opt.threads = threads;
  opt.config_path = config;
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg = load_config(config);
    if (seed >= 0) {
      cfg.basis.seed = static_cast<std::uint64_t>(seed);
      cfg.oracle.seed = static_cast<std::uint64_t>(seed);
    }
    return run_command(command, cfg, opt, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool config_error = e.kind() == ErrorKind::ConfigError || e.kind() == ErrorKind::UnsupportedElectronCount;
    return config_error ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
