#include "gaussbounds/run_config.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace gaussbounds {

namespace {

class ConfigReader {
 public:
  explicit ConfigReader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const toml::node* node, const std::string& message) const {
    std::ostringstream os;
    os << source_;
    if (node != nullptr && node->source().begin) {
      os << ":" << node->source().begin.line << ":" << node->source().begin.column;
    }
    os << ": " << message;
    throw Error(ErrorKind::ConfigError, os.str());
  }

  void only_keys(const toml::table& t, std::string_view where, std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : t) {
      bool known = false;
      for (auto allowed : keys) known = known || k.str() == allowed;
      if (!known) fail(&v, "unknown key '" + std::string(k.str()) + "' in [" + std::string(where) + "]");
    }
  }

  const toml::table* table(const toml::table& parent, std::string_view key) const {
    const toml::node* n = parent.get(key);
    if (n == nullptr) return nullptr;
    if (!n->is_table()) fail(n, "'" + std::string(key) + "' must be a table");
    return n->as_table();
  }

  double number(const toml::table& t, std::string_view key, double fallback) const {
    const toml::node* n = t.get(key);
    if (n == nullptr) return fallback;
    if (auto v = n->value<double>()) return *v;
    fail(n, "'" + std::string(key) + "' must be a number");
  }

  long long integer(const toml::table& t, std::string_view key, long long fallback) const {
    const toml::node* n = t.get(key);
    if (n == nullptr) return fallback;
    if (!n->is_integer()) fail(n, "'" + std::string(key) + "' must be an integer");
    return n->as_integer()->get();
  }

  bool boolean(const toml::table& t, std::string_view key, bool fallback) const {
    const toml::node* n = t.get(key);
    if (n == nullptr) return fallback;
    if (!n->is_boolean()) fail(n, "'" + std::string(key) + "' must be true or false");
    return n->as_boolean()->get();
  }

  std::vector<double> numbers(const toml::node* n, std::string_view key, std::size_t expected) const {
    if (n == nullptr || !n->is_array()) fail(n, "'" + std::string(key) + "' must be an array of numbers");
    std::vector<double> out;
    for (const toml::node& e : *n->as_array()) {
      auto v = e.value<double>();
      if (!v) fail(&e, "'" + std::string(key) + "' must contain numbers only");
      out.push_back(*v);
    }
    if (out.size() != expected) {
      fail(n, "'" + std::string(key) + "' needs " + std::to_string(expected) + " entries");
    }
    return out;
  }

 private:
  std::string source_;
};

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
       << e.description();
    throw Error(ErrorKind::ConfigError, os.str());
  }
  const ConfigReader rd(source);
  rd.only_keys(root, "root", {"system", "basis", "optimize", "bounds", "quadrature", "oracle", "integrals"});
  RunConfig cfg;

  const toml::table* system = rd.table(root, "system");
  if (system == nullptr) rd.fail(nullptr, "missing [system] table");
  rd.only_keys(*system, "system", {"electrons", "nuclei"});
  const long long electrons = rd.integer(*system, "electrons", 2);
  if (electrons < 1) rd.fail(system->get("electrons"), "electrons must be positive");
  cfg.system.n_electrons = static_cast<int>(electrons);
  if (const toml::node* nuclei = system->get("nuclei")) {
    if (!nuclei->is_array_of_tables()) rd.fail(nuclei, "'nuclei' must be an array of tables");
    for (const toml::node& entry : *nuclei->as_array()) {
      const toml::table& t = *entry.as_table();
      rd.only_keys(t, "system.nuclei", {"charge", "position"});
      Nucleus nuc;
      nuc.charge = rd.number(t, "charge", 0.0);
      if (!(nuc.charge > 0.0)) rd.fail(&entry, "nuclear charge must be positive");
      const auto p = t.get("position") ? rd.numbers(t.get("position"), "position", 3) : std::vector<double>{0, 0, 0};
      nuc.position = Vector3d(p[0], p[1], p[2]);
      cfg.system.nuclei.push_back(nuc);
    }
  }

  const toml::table* basis = rd.table(root, "basis");
  if (basis == nullptr) rd.fail(nullptr, "missing [basis] table");
  rd.only_keys(*basis, "basis",
               {"file", "size", "seed", "exponent_range", "shift_range", "floating", "symmetrize", "parity"});
  if (const toml::node* f = basis->get("file")) {
    if (!f->is_string()) rd.fail(f, "'file' must be a string");
    cfg.basis.file = f->as_string()->get();
  }
  const long long size = rd.integer(*basis, "size", 0);
  if (size < 0) rd.fail(basis->get("size"), "size must not be negative");
  cfg.basis.size = static_cast<std::size_t>(size);
  if (!cfg.basis.file && cfg.basis.size == 0) rd.fail(basis, "[basis] needs either 'file' or a positive 'size'");
  cfg.basis.seed = static_cast<std::uint64_t>(rd.integer(*basis, "seed", 1));
  if (const toml::node* r = basis->get("exponent_range")) {
    const auto range = rd.numbers(r, "exponent_range", 2);
    if (!(range[0] > 0.0) || !(range[1] >= range[0])) rd.fail(r, "exponent_range must be positive and ordered");
    cfg.basis.generator.exponent_min = range[0];
    cfg.basis.generator.exponent_max = range[1];
  }
  cfg.basis.generator.shift_range = rd.number(*basis, "shift_range", 0.0);
  if (cfg.basis.generator.shift_range < 0.0) rd.fail(basis->get("shift_range"), "shift_range must not be negative");
  cfg.basis.generator.floating = rd.boolean(*basis, "floating", false);
  cfg.basis.symmetrize = rd.boolean(*basis, "symmetrize", cfg.system.n_electrons == 2);
  const long long parity = rd.integer(*basis, "parity", 1);
  if (parity != 1 && parity != -1) rd.fail(basis->get("parity"), "parity must be 1 or -1");
  cfg.basis.parity = static_cast<int>(parity);
  if (cfg.basis.symmetrize && cfg.system.n_electrons != 2) {
    throw Error(ErrorKind::UnsupportedElectronCount,
                source + ": symmetrization is implemented for two electrons only");
  }

  if (const toml::table* opt = rd.table(root, "optimize")) {
    rd.only_keys(*opt, "optimize", {"sweeps", "trials", "grow", "max_overlap", "min_pivot"});
    cfg.optimize.present = true;
    cfg.optimize.sweeps = static_cast<int>(rd.integer(*opt, "sweeps", cfg.optimize.sweeps));
    cfg.optimize.trials = static_cast<int>(rd.integer(*opt, "trials", cfg.optimize.trials));
    cfg.optimize.grow = rd.boolean(*opt, "grow", cfg.optimize.grow);
    cfg.optimize.max_overlap = rd.number(*opt, "max_overlap", cfg.optimize.max_overlap);
    cfg.optimize.min_pivot = rd.number(*opt, "min_pivot", cfg.optimize.min_pivot);
    if (cfg.optimize.sweeps < 0) rd.fail(opt->get("sweeps"), "sweeps must not be negative");
    if (cfg.optimize.trials < 1) rd.fail(opt->get("trials"), "trials must be at least 1");
  }

  if (const toml::table* b = rd.table(root, "bounds")) {
    rd.only_keys(*b, "bounds", {"beta", "stevenson_alpha"});
    if (const toml::node* beta = b->get("beta")) {
      if (beta->is_string()) {
        if (beta->as_string()->get() != "ritz2") rd.fail(beta, "beta must be \"ritz2\" or a number");
      } else if (auto v = beta->value<double>()) {
        cfg.bounds.beta = *v;
      } else {
        rd.fail(beta, "beta must be \"ritz2\" or a number");
      }
    }
    if (b->get("stevenson_alpha")) cfg.bounds.stevenson_alpha = rd.number(*b, "stevenson_alpha", 0.0);
  }

  if (const toml::table* q = rd.table(root, "quadrature")) {
    rd.only_keys(*q, "quadrature", {"rel_tol", "abs_tol", "max_subdivisions"});
    cfg.quadrature.rel_tol = rd.number(*q, "rel_tol", cfg.quadrature.rel_tol);
    cfg.quadrature.abs_tol = rd.number(*q, "abs_tol", cfg.quadrature.abs_tol);
    cfg.quadrature.max_subdivisions =
        static_cast<int>(rd.integer(*q, "max_subdivisions", cfg.quadrature.max_subdivisions));
    if (!(cfg.quadrature.rel_tol > 0.0) || !(cfg.quadrature.abs_tol > 0.0) || cfg.quadrature.max_subdivisions < 1) {
      rd.fail(q, "quadrature tolerances must be positive and max_subdivisions at least 1");
    }
  }

  if (const toml::table* o = rd.table(root, "oracle")) {
    rd.only_keys(*o, "oracle", {"samples", "seed", "pairs"});
    cfg.oracle.samples = rd.integer(*o, "samples", cfg.oracle.samples);
    cfg.oracle.seed = static_cast<std::uint64_t>(rd.integer(*o, "seed", 1));
    const long long pairs = rd.integer(*o, "pairs", 3);
    if (cfg.oracle.samples < 1 || pairs < 1) rd.fail(o, "oracle samples and pairs must be positive");
    cfg.oracle.pairs = static_cast<std::size_t>(pairs);
  }

  if (const toml::table* it = rd.table(root, "integrals")) {
    rd.only_keys(*it, "integrals", {"h2"});
    cfg.integrals_h2 = rd.boolean(*it, "h2", true);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = parse_config(ss.str(), path);
  // Relative basis files are resolved against the config's directory.
  if (cfg.basis.file && std::filesystem::path(*cfg.basis.file).is_relative()) {
    cfg.basis.file = (std::filesystem::path(path).parent_path() / *cfg.basis.file).string();
  }
  return cfg;
}

}  // namespace gaussbounds
