#include "uqlab/palette.hpp"

#include "uqlab/memory.hpp"
#include "uqlab/purity.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

namespace uqlab::palette {

namespace {

std::vector<double> parse_numbers(std::string_view list, std::size_t expected, std::string_view name) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    const std::string_view tok = list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw PaletteError("palette entry '" + std::string(name) + "': cannot parse number '" + std::string(tok) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() != expected) {
    throw PaletteError("palette entry '" + std::string(name) + "' expects " + std::to_string(expected) + " numbers");
  }
  return out;
}

bool has_prefix(std::string_view s, std::string_view p, std::string_view& rest) {
  if (s.substr(0, p.size()) != p) return false;
  rest = s.substr(p.size());
  return true;
}

bool looks_like_file(std::string_view name) {
  return name.find('/') != std::string_view::npos || name.ends_with(".json");
}

}  // namespace

ComplexMatrix gell_mann(int k) {
  if (k < 1 || k > 8) throw PaletteError("Gell-Mann index must be 1..8");
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  const Complex i(0.0, 1.0);
  switch (k) {
    case 1: m(0, 1) = m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -i; m(1, 0) = i; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case 4: m(0, 2) = m(2, 0) = 1.0; break;
    case 5: m(0, 2) = -i; m(2, 0) = i; break;
    case 6: m(1, 2) = m(2, 1) = 1.0; break;
    case 7: m(1, 2) = -i; m(2, 1) = i; break;
    case 8:
      m(0, 0) = m(1, 1) = 1.0 / std::sqrt(3.0);
      m(2, 2) = -2.0 / std::sqrt(3.0);
      break;
  }
  return m;
}

ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PaletteError("cannot read matrix file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
    const int d = j.at("dim").get<int>();
    if (d <= 0) throw PaletteError("matrix file '" + path + "': dim must be positive");
    const auto re = j.at("re").get<std::vector<std::vector<double>>>();
    std::vector<std::vector<double>> im(d, std::vector<double>(d, 0.0));
    if (j.contains("im")) im = j.at("im").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d) {
      throw PaletteError("matrix file '" + path + "': row count does not match dim");
    }
    ComplexMatrix m(d, d);
    for (int r = 0; r < d; ++r) {
      if (static_cast<int>(re[r].size()) != d || static_cast<int>(im[r].size()) != d) {
        throw PaletteError("matrix file '" + path + "': column count does not match dim");
      }
      for (int c = 0; c < d; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw PaletteError("matrix file '" + path + "': " + e.what());
  }
}

void save_matrix(const ComplexMatrix& m, const std::string& path) {
  nlohmann::ordered_json j;
  j["dim"] = m.rows();
  std::vector<std::vector<double>> re(m.rows(), std::vector<double>(m.cols()));
  std::vector<std::vector<double>> im = re;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re[r][c] = m(r, c).real();
      im[r][c] = m(r, c).imag();
    }
  }
  j["re"] = re;
  j["im"] = im;
  std::ofstream out(path);
  if (!out) throw PaletteError("cannot write matrix file '" + path + "'");
  out << j.dump(2) << '\n';
}

Observable observable(std::string_view name) {
  std::string_view rest;
  if (name == "sx") return Observable::from_matrix(pauli::x());
  if (name == "sy") return Observable::from_matrix(pauli::y());
  if (name == "sz") return Observable::from_matrix(pauli::z());
  if (name.size() == 3 && name.starts_with("gm") && name[2] >= '1' && name[2] <= '8') {
    return Observable::from_matrix(gell_mann(name[2] - '0'));
  }
  if (has_prefix(name, "planar:", rest)) {
    const auto a = parse_numbers(rest, 2, name);
    constexpr double deg = std::numbers::pi / 180.0;
    return purity::planar_product_observable(a[0] * deg, a[1] * deg);
  }
  if (has_prefix(name, "kron:", rest)) {
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw PaletteError("kron entry needs two names: kron:<a>,<b>");
    const Observable a = observable(rest.substr(0, comma));
    const Observable b = observable(rest.substr(comma + 1));
    return Observable::from_matrix(tensor(a.matrix(), b.matrix()));
  }
  if (looks_like_file(name)) return Observable::from_matrix(load_matrix(std::string(name)));
  throw PaletteError("unknown observable '" + std::string(name) + "'");
}

DensityMatrix state(std::string_view name) {
  std::string_view rest;
  if (name == "singlet") return purity::singlet();
  if (name == "phi-plus") {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = psi(3) = 1.0;
    return DensityMatrix::from_pure(psi);
  }
  if (name == "ghz") {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi(0) = psi(7) = 1.0;
    return DensityMatrix::from_pure(psi);
  }
  if (has_prefix(name, "mixed:", rest)) {
    int d = 0;
    const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), d);
    if (res.ec != std::errc() || res.ptr != rest.data() + rest.size() || d < 1 || d > 4096) {
      throw PaletteError("mixed:<d> needs a dimension in 1..4096");
    }
    return DensityMatrix::from_matrix(pauli::identity(d) / static_cast<double>(d));
  }
  if (has_prefix(name, "werner:", rest)) {
    const double p = parse_numbers(rest, 1, name)[0];
    if (!(p >= 0.0 && p <= 1.0)) throw PaletteError("werner:<p> needs p in [0, 1]");
    return purity::werner_state(p);
  }
  if (has_prefix(name, "bell-diagonal:", rest)) {
    const auto c = parse_numbers(rest, 3, name);
    try {
      return memory::bell_diagonal_state(c[0], c[1], c[2]);
    } catch (const DomainError& e) {
      throw PaletteError(std::string(name) + ": " + e.what());
    }
  }
  if (has_prefix(name, "bloch:", rest)) {
    const auto n = parse_numbers(rest, 3, name);
    try {
      return qubit_from_bloch({n[0], n[1], n[2]});
    } catch (const DomainError& e) {
      throw PaletteError(std::string(name) + ": " + e.what());
    }
  }
  if (looks_like_file(name)) {
    try {
      return DensityMatrix::from_matrix(load_matrix(std::string(name)));
    } catch (const PaletteError&) {
      throw;
    } catch (const DomainError& e) {
      throw PaletteError("state file '" + std::string(name) + "': " + e.what());
    }
  }
  throw PaletteError("unknown state '" + std::string(name) + "'");
}

std::vector<std::string> observable_names() {
  return {"sx", "sy", "sz", "gm1", "gm2", "gm3", "gm4", "gm5", "gm6", "gm7", "gm8", "planar:<deg>,<deg>",
          "kron:<a>,<b>", "<file.json>"};
}

std::vector<std::string> state_names() {
  return {"singlet", "phi-plus", "ghz", "mixed:<d>", "werner:<p>", "bell-diagonal:<c1>,<c2>,<c3>", "bloch:<x>,<y>,<z>",
          "<file.json>"};
}

}  // namespace uqlab::palette
