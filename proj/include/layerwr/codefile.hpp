#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "layerwr/chain.hpp"
#include "layerwr/coloring.hpp"
#include "layerwr/errors.hpp"

namespace layerwr {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// On-disk representation of a CSS code: sparse sorted rows, canonical JSON.
/// Files written by save round-trip byte-identically through load -> save.
struct CodeFile {
  int format_version = 1;
  CssCode code;
  std::string name;  // optional metadata
  std::optional<Coloring> coloring;
  std::optional<std::array<int, 3>> chi;
};

namespace detail {

inline nlohmann::json rows_to_json(const BitMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < m.rows; i++) {
    rows.push_back(m.row(i).support());
  }
  return rows;
}

inline BitMatrix rows_from_json(const nlohmann::json& rows, size_t n,
                                const std::string& field) {
  if (!rows.is_array()) {
    throw ParseError("code file: '" + field + "' must be an array of rows");
  }
  std::vector<std::vector<size_t>> parsed;
  for (const auto& row : rows) {
    if (!row.is_array()) {
      throw ParseError("code file: rows of '" + field + "' must be arrays");
    }
    std::vector<size_t> indices;
    long long prev = -1;
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) {
        throw ParseError("code file: qubit indices must be nonnegative integers");
      }
      long long idx = v.get<long long>();
      if (idx >= static_cast<long long>(n)) {
        throw ParseError("code file: qubit index " + std::to_string(idx) +
                         " out of range for n = " + std::to_string(n));
      }
      if (idx <= prev) {
        throw ParseError("code file: rows of '" + field +
                         "' must be strictly ascending");
      }
      prev = idx;
      indices.push_back(static_cast<size_t>(idx));
    }
    parsed.push_back(indices);
  }
  return BitMatrix::from_rows(n, parsed);
}

inline std::vector<int> int_vector(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) {
    throw ParseError("coloring: '" + field + "' must be an array");
  }
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) {
      throw ParseError("coloring: entries of '" + field + "' must be integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

inline nlohmann::json coloring_to_json(const Coloring& c) {
  nlohmann::json j;
  j["chi"] = {c.chi_x, c.chi_q, c.chi_z};
  j["eta_x"] = c.eta_x;
  j["eta_q"] = c.eta_q;
  j["eta_z"] = c.eta_z;
  return j;
}

inline Coloring coloring_from_json(const nlohmann::json& j) {
  Coloring c;
  c.eta_x = int_vector(j.at("eta_x"), "eta_x");
  c.eta_q = int_vector(j.at("eta_q"), "eta_q");
  c.eta_z = int_vector(j.at("eta_z"), "eta_z");
  auto max_of = [](const std::vector<int>& v) {
    int m = 1;
    for (int x : v) {
      m = std::max(m, x);
    }
    return m;
  };
  c.chi_x = max_of(c.eta_x);
  c.chi_q = max_of(c.eta_q);
  c.chi_z = max_of(c.eta_z);
  if (j.contains("chi")) {
    auto chi = int_vector(j.at("chi"), "chi");
    if (chi.size() != 3) {
      throw ParseError("coloring: 'chi' must have three entries");
    }
    c.chi_x = std::max(c.chi_x, chi[0]);
    c.chi_q = std::max(c.chi_q, chi[1]);
    c.chi_z = std::max(c.chi_z, chi[2]);
  }
  return c;
}

}  // namespace detail

inline std::string serialize_code(const CodeFile& file) {
  nlohmann::json j;
  j["format_version"] = file.format_version;
  j["n"] = file.code.n;
  j["hx"] = detail::rows_to_json(file.code.hx);
  j["hz"] = detail::rows_to_json(file.code.hz);
  nlohmann::json meta;
  if (!file.name.empty()) {
    meta["name"] = file.name;
  }
  if (file.coloring) {
    meta["coloring"] = detail::coloring_to_json(*file.coloring);
  }
  if (file.chi) {
    meta["chi"] = *file.chi;
  }
  if (!meta.empty()) {
    j["metadata"] = meta;
  }
  return j.dump(2) + "\n";
}

inline CodeFile parse_code(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("code file: invalid JSON: ") + e.what());
  }
  CodeFile file;
  if (!j.contains("n") || !j.at("n").is_number_unsigned()) {
    throw ParseError("code file: missing qubit count 'n'");
  }
  file.format_version = j.value("format_version", 1);
  size_t n = j.at("n").get<size_t>();
  BitMatrix hx = detail::rows_from_json(j.value("hx", nlohmann::json::array()), n, "hx");
  BitMatrix hz = detail::rows_from_json(j.value("hz", nlohmann::json::array()), n, "hz");
  // commutation is deliberately not checked here so `verify` can report it
  file.code = CssCode(hx, hz);
  if (j.contains("metadata")) {
    const auto& meta = j.at("metadata");
    file.name = meta.value("name", "");
    if (meta.contains("coloring")) {
      file.coloring = detail::coloring_from_json(meta.at("coloring"));
    }
    if (meta.contains("chi")) {
      auto chi = detail::int_vector(meta.at("chi"), "chi");
      if (chi.size() != 3) {
        throw ParseError("code file: metadata 'chi' must have three entries");
      }
      file.chi = std::array<int, 3>{chi[0], chi[1], chi[2]};
    }
  }
  return file;
}

/// Parity-check matrix in the alist convention used for classical sparse
/// codes; imported as a CSS code with Z-checks only.
inline BitMatrix parse_alist(const std::string& text) {
  std::istringstream in(text);
  auto next = [&in]() {
    long long v;
    if (!(in >> v) || v < 0) {
      throw ParseError("alist: truncated or negative entry");
    }
    return static_cast<size_t>(v);
  };
  size_t n = next(), m = next();
  size_t max_col = next(), max_row = next();
  std::vector<size_t> col_w(n), row_w(m);
  for (size_t j = 0; j < n; j++) {
    col_w[j] = next();
    if (col_w[j] > max_col) {
      throw ParseError("alist: column weight exceeds the declared maximum");
    }
  }
  for (size_t i = 0; i < m; i++) {
    row_w[i] = next();
    if (row_w[i] > max_row) {
      throw ParseError("alist: row weight exceeds the declared maximum");
    }
  }
  BitMatrix h(m, n);
  for (size_t j = 0; j < n; j++) {
    for (size_t t = 0; t < max_col; t++) {
      size_t row = next();  // 1-based, zero-padded
      if (row == 0) {
        continue;
      }
      if (row > m) {
        throw ParseError("alist: row index out of range");
      }
      h.set(row - 1, j, true);
    }
  }
  // trailing per-row lists are accepted and cross-checked when present
  for (size_t i = 0; i < m; i++) {
    for (size_t t = 0; t < max_row; t++) {
      long long v;
      if (!(in >> v)) {
        if (i == 0 && t == 0) {
          return h;  // per-row section omitted
        }
        throw ParseError("alist: truncated per-row section");
      }
      if (v < 0 || v > static_cast<long long>(n)) {
        throw ParseError("alist: column index out of range");
      }
      if (v != 0 && !h.get(i, static_cast<size_t>(v - 1))) {
        throw ParseError("alist: per-row and per-column sections disagree");
      }
    }
  }
  return h;
}

inline CodeFile load_code_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (path.size() > 6 && path.substr(path.size() - 6) == ".alist") {
    BitMatrix h = parse_alist(buf.str());
    CodeFile file;
    file.code = CssCode(BitMatrix(0, h.cols), h);
    return file;
  }
  return parse_code(buf.str());
}

inline void save_code_file(const CodeFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot write " + path);
  }
  out << serialize_code(file);
}

inline std::string serialize_coloring(const Coloring& c) {
  nlohmann::json j = detail::coloring_to_json(c);
  j["format_version"] = 1;
  return j.dump(2) + "\n";
}

inline Coloring parse_coloring(const std::string& text) {
  try {
    return detail::coloring_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("coloring file: invalid JSON: ") + e.what());
  } catch (const nlohmann::json::out_of_range& e) {
    throw ParseError(std::string("coloring file: missing field: ") + e.what());
  }
}

inline Coloring load_coloring(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_coloring(buf.str());
}

}  // namespace layerwr
