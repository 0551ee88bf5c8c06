#include "gaussbounds/basis.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gaussbounds/parallel.hpp"

namespace gaussbounds {

namespace {

template <typename Kernel>
auto projected(const Basis& basis, std::size_t k, std::size_t l, Kernel&& kernel) {
  const Ecg& bra = basis.functions.at(k);
  const Ecg& ket = basis.functions.at(l);
  if (!basis.symmetrize) return kernel(bra, ket);
  return symmetrized_element(kernel, bra, ket, basis.parity);
}

}  // namespace

double overlap_element(const Basis& basis, std::size_t k, std::size_t l) {
  return projected(basis, k, l, [](const Ecg& a, const Ecg& b) { return pair_product(a, b).overlap; });
}

double h_element(const SystemDefinition& sys, const Basis& basis, std::size_t k, std::size_t l) {
  return projected(basis, k, l, [&](const Ecg& a, const Ecg& b) { return assemble_h_element(sys, a, b); });
}

H2Terms h2_element_terms(const SystemDefinition& sys, const Basis& basis, std::size_t k, std::size_t l,
                         const QuadratureSpec& q) {
  return projected(basis, k, l, [&](const Ecg& a, const Ecg& b) { return h2_terms(sys, a, b, q); });
}

AssembledMatrices assemble_matrices(const SystemDefinition& sys, const Basis& basis,
                                    const AssemblyOptions& opt) {
  const std::size_t n = basis.size();
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "empty basis");
  for (const Ecg& f : basis.functions) {
    if (f.n_electrons() != sys.n_electrons) {
      throw Error(ErrorKind::DimensionMismatch, "basis function electron count differs from the system");
    }
  }
  if (opt.with_h2 && sys.n_electrons != 2) {
    throw Error(ErrorKind::UnsupportedElectronCount, "H^2 needs exactly two electrons");
  }
  const Eigen::Index en = static_cast<Eigen::Index>(n);
  AssembledMatrices out;
  SpectralMatrices& m = out.matrices;
  m.s = MatrixXd::Zero(en, en);
  m.h = MatrixXd::Zero(en, en);
  m.h2 = opt.with_h2 ? MatrixXd::Zero(en, en) : MatrixXd();

  VectorXd scale(en);
  for (std::size_t k = 0; k < n; ++k) {
    const double norm = overlap_element(basis, k, k);
    if (!(norm > 0.0)) {
      throw OverlapError(static_cast<long>(k), "basis function " + std::to_string(k) + " has zero norm");
    }
    scale(static_cast<Eigen::Index>(k)) = 1.0 / std::sqrt(norm);
  }

  parallel_for(n, opt.threads, [&](std::size_t k) {
    const Eigen::Index i = static_cast<Eigen::Index>(k);
    for (std::size_t l = k; l < n; ++l) {
      const Eigen::Index j = static_cast<Eigen::Index>(l);
      const double f = scale(i) * scale(j);
      m.s(i, j) = f * overlap_element(basis, k, l);
      m.h(i, j) = f * h_element(sys, basis, k, l);
      if (opt.with_h2) m.h2(i, j) = f * h2_element_terms(sys, basis, k, l, opt.quadrature).total();
    }
    if (opt.with_h2 && opt.full_h2) {
      for (std::size_t l = 0; l < k; ++l) {
        const Eigen::Index j = static_cast<Eigen::Index>(l);
        m.h2(i, j) = scale(i) * scale(j) * h2_element_terms(sys, basis, k, l, opt.quadrature).total();
      }
    }
  });

  for (Eigen::Index i = 0; i < en; ++i) {
    m.s(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      m.s(i, j) = m.s(j, i);
      m.h(i, j) = m.h(j, i);
      if (!opt.with_h2) continue;
      if (opt.full_h2) {
        const double upper = m.h2(j, i);
        const double lower = m.h2(i, j);
        out.h2_asymmetry = std::max(out.h2_asymmetry, std::abs(upper - lower));
        m.h2(i, j) = m.h2(j, i) = 0.5 * (upper + lower);
      } else {
        m.h2(i, j) = m.h2(j, i);
      }
    }
  }
  return out;
}

Ecg random_function(int n_electrons, const GeneratorOptions& opt, std::mt19937_64& rng) {
  if (!(opt.exponent_min > 0.0) || !(opt.exponent_max >= opt.exponent_min)) {
    throw Error(ErrorKind::DomainError, "exponent range must be positive and ordered");
  }
  const int n = n_electrons;
  std::uniform_real_distribution<double> log_uniform(std::log(opt.exponent_min), std::log(opt.exponent_max));
  MatrixXd a = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) += std::exp(log_uniform(rng));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double aij = std::exp(log_uniform(rng));
      a(i, i) += aij;
      a(j, j) += aij;
      a(i, j) -= aij;
      a(j, i) -= aij;
    }
  }
  CoordsXd s = CoordsXd::Zero(n, 3);
  if (opt.floating && opt.shift_range > 0.0) {
    std::uniform_real_distribution<double> shift(-opt.shift_range, opt.shift_range);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < 3; ++c) s(i, c) = shift(rng);
    }
  }
  return Ecg(std::move(a), std::move(s));
}

Basis random_basis(int n_electrons, std::size_t size, const GeneratorOptions& opt, std::uint64_t seed,
                   bool symmetrize, int parity) {
  std::mt19937_64 rng(seed);
  Basis b;
  b.n_electrons = n_electrons;
  b.symmetrize = symmetrize;
  b.parity = parity;
  for (std::size_t k = 0; k < size; ++k) b.functions.push_back(random_function(n_electrons, opt, rng));
  return b;
}

std::string basis_to_json(const Basis& basis) {
  nlohmann::ordered_json doc;
  doc["version"] = kBasisFormatVersion;
  doc["n_electrons"] = basis.n_electrons;
  nlohmann::ordered_json fns = nlohmann::ordered_json::array();
  for (const Ecg& f : basis.functions) {
    nlohmann::ordered_json entry;
    std::vector<double> lower;
    for (int i = 0; i < f.n_electrons(); ++i) {
      for (int j = 0; j <= i; ++j) lower.push_back(f.exponents()(i, j));
    }
    std::vector<double> shift;
    for (int i = 0; i < f.n_electrons(); ++i) {
      for (int c = 0; c < 3; ++c) shift.push_back(f.shift()(i, c));
    }
    entry["A_lower_triangle_row_major"] = lower;
    entry["s"] = shift;
    fns.push_back(std::move(entry));
  }
  doc["functions"] = std::move(fns);
  return doc.dump(2) + "\n";
}

Basis basis_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, std::string("basis file: ") + e.what());
  }
  try {
    const int version = doc.at("version").get<int>();
    if (version != kBasisFormatVersion) {
      throw Error(ErrorKind::ConfigError, "basis file version " + std::to_string(version) + " is not supported");
    }
    Basis b;
    b.n_electrons = doc.at("n_electrons").get<int>();
    const int n = b.n_electrons;
    if (n < 1) throw Error(ErrorKind::ConfigError, "basis file: n_electrons must be positive");
    std::size_t index = 0;
    for (const auto& entry : doc.at("functions")) {
      const auto lower = entry.at("A_lower_triangle_row_major").get<std::vector<double>>();
      const auto shift = entry.at("s").get<std::vector<double>>();
      if (lower.size() != static_cast<std::size_t>(n * (n + 1) / 2) || shift.size() != static_cast<std::size_t>(3 * n)) {
        throw Error(ErrorKind::ConfigError, "basis file: function " + std::to_string(index) + " has wrong sizes");
      }
      MatrixXd a(n, n);
      std::size_t p = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = lower[p++];
      }
      CoordsXd s(n, 3);
      for (int i = 0; i < n; ++i) {
        for (int c = 0; c < 3; ++c) s(i, c) = shift[3 * i + c];
      }
      b.functions.emplace_back(std::move(a), std::move(s));
      ++index;
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("basis file: ") + e.what());
  }
}

void write_basis(const Basis& basis, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + path.string());
  out << basis_to_json(basis);
}

Basis read_basis(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return basis_from_json(ss.str());
}

}  // namespace gaussbounds
