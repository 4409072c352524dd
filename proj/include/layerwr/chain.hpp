#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "layerwr/errors.hpp"
#include "layerwr/gf2.hpp"

namespace layerwr {

/// A CSS code given by its two check matrices. hx is X-checks x qubits,
/// hz is Z-checks x qubits; rows of hx must be orthogonal to rows of hz.
struct CssCode {
  size_t n = 0;
  BitMatrix hx;  // |X| x n
  BitMatrix hz;  // |Z| x n

  CssCode() = default;
  CssCode(BitMatrix hx_, BitMatrix hz_) : n(hx_.cols), hx(std::move(hx_)), hz(std::move(hz_)) {
    if (hz.cols != n) {
      throw std::invalid_argument("CssCode: hx and hz qubit counts differ");
    }
  }

  void validate() const {
    BitMatrix prod = mat_mul(hx, hz.transposed());
    if (!prod.is_zero()) {
      for (size_t i = 0; i < prod.rows; i++) {
        for (size_t j = 0; j < prod.cols; j++) {
          if (prod.get(i, j)) {
            throw CommutationError("X-check " + std::to_string(i) +
                                   " and Z-check " + std::to_string(j) +
                                   " overlap on an odd number of qubits");
          }
        }
      }
    }
  }

  size_t logical_dimension() const { return n - rank(hx) - rank(hz); }
};

/// Chain complex over GF(2) with named basis cells, length at most 2.
/// cells[i] holds the labels of the i-cells; boundary[k-1] is the matrix of
/// the boundary map from level k to level k-1 (|cells[k-1]| x |cells[k]|).
struct ChainComplex {
  std::vector<std::vector<std::string>> cells;
  std::vector<BitMatrix> boundary;

  size_t length() const { return boundary.size(); }
  size_t dim(size_t level) const { return cells.at(level).size(); }

  const BitMatrix& d(size_t k) const { return boundary.at(k - 1); }
  /// Boundary from qubits to Z-checks of a length-2 complex (equals Hz).
  const BitMatrix& d1() const { return boundary.at(0); }
  /// Boundary from X-checks to qubits of a length-2 complex (equals Hx^T).
  const BitMatrix& d2() const { return boundary.at(1); }

  void validate() const {
    if (cells.size() != boundary.size() + 1) {
      throw std::invalid_argument("ChainComplex: level count mismatch");
    }
    if (boundary.size() > 2) {
      throw std::invalid_argument("ChainComplex: length > 2 not supported");
    }
    for (size_t k = 0; k < boundary.size(); k++) {
      if (boundary[k].rows != cells[k].size() || boundary[k].cols != cells[k + 1].size()) {
        throw std::invalid_argument("ChainComplex: boundary " + std::to_string(k + 1) +
                                    " has wrong shape");
      }
    }
    for (const auto& level : cells) {
      std::set<std::string> seen(level.begin(), level.end());
      if (seen.size() != level.size()) {
        throw std::invalid_argument("ChainComplex: duplicate cell label in a level");
      }
    }
    for (size_t k = 0; k + 1 < boundary.size(); k++) {
      if (!mat_mul(boundary[k], boundary[k + 1]).is_zero()) {
        throw std::invalid_argument("ChainComplex: boundary of boundary is nonzero");
      }
    }
  }

  size_t homology_dim(size_t level) const {
    size_t d = cells.at(level).size();
    size_t r_out = level >= 1 && level <= length() ? rank(boundary[level - 1]) : 0;
    size_t r_in = level < length() ? rank(boundary[level]) : 0;
    return d - r_out - r_in;
  }
};

/// View a CSS code as the three-term complex X-checks -> qubits -> Z-checks.
inline ChainComplex from_css(const CssCode& code) {
  code.validate();
  ChainComplex c;
  c.cells.resize(3);
  for (size_t z = 0; z < code.hz.rows; z++) {
    c.cells[0].push_back("z" + std::to_string(z));
  }
  for (size_t q = 0; q < code.n; q++) {
    c.cells[1].push_back("q" + std::to_string(q));
  }
  for (size_t x = 0; x < code.hx.rows; x++) {
    c.cells[2].push_back("x" + std::to_string(x));
  }
  c.boundary.push_back(code.hz);
  c.boundary.push_back(code.hx.transposed());
  return c;
}

inline ChainComplex from_css(const BitMatrix& hx, const BitMatrix& hz) {
  if (hx.cols != hz.cols) {
    throw std::invalid_argument("from_css: hx and hz qubit counts differ");
  }
  return from_css(CssCode(hx, hz));
}

inline CssCode to_css(const ChainComplex& c) {
  if (c.length() != 2) {
    throw std::invalid_argument("to_css: complex must have length 2");
  }
  return CssCode(c.d2().transposed(), c.d1());
}

inline size_t logical_dimension(const ChainComplex& c) { return c.homology_dim(1); }

/// Check weights and qubit degrees of a length-2 complex.
struct WeightProfile {
  size_t wx = 0;  // max X-check weight       (max column weight of d2)
  size_t qx = 0;  // max X-degree of a qubit  (max row weight of d2)
  size_t wz = 0;  // max Z-check weight       (max row weight of d1)
  size_t qz = 0;  // max Z-degree of a qubit  (max column weight of d1)
  size_t total_degree = 0;  // max over qubits of X-degree + Z-degree

  bool operator==(const WeightProfile&) const = default;
};

inline WeightProfile weight_profile(const ChainComplex& c) {
  if (c.length() != 2) {
    throw std::invalid_argument("weight_profile: complex must have length 2");
  }
  WeightProfile p;
  const BitMatrix& d2 = c.d2();
  const BitMatrix& d1 = c.d1();
  p.wx = d2.max_col_weight();
  p.qx = d2.max_row_weight();
  p.wz = d1.max_row_weight();
  std::vector<size_t> z_degrees = d1.col_weights();
  for (size_t q = 0; q < c.dim(1); q++) {
    p.qz = std::max(p.qz, z_degrees[q]);
    p.total_degree = std::max(p.total_degree, d2.row_weight(q) + z_degrees[q]);
  }
  return p;
}

inline WeightProfile weight_profile(const CssCode& code) {
  return weight_profile(from_css(code));
}

/// The repetition code on L bits as the complex edges -> vertices.
/// Vertices are labeled 1..L and edges i+ for i = 1..L-1, with the edge i+
/// bounded by vertices i and i+1.
inline ChainComplex repetition_complex(size_t length) {
  if (length == 0) {
    throw std::invalid_argument("repetition_complex: L must be at least 1");
  }
  ChainComplex c;
  c.cells.resize(2);
  for (size_t i = 1; i <= length; i++) {
    c.cells[0].push_back(std::to_string(i));
  }
  for (size_t i = 1; i + 1 <= length; i++) {
    c.cells[1].push_back(std::to_string(i) + "+");
  }
  BitMatrix d(length, length - 1);
  for (size_t i = 0; i + 1 < length; i++) {
    d.set(i, i, true);
    d.set(i + 1, i, true);
  }
  c.boundary.push_back(d);
  return c;
}

/// Space with no differentials, used as a degree-0 tensor factor.
inline ChainComplex degree0_complex(const std::vector<std::string>& labels) {
  ChainComplex c;
  c.cells.push_back(labels);
  return c;
}

/// Reverse the level order and transpose every differential. Applying twice
/// gives back the original complex.
inline ChainComplex transpose_complex(const ChainComplex& c) {
  ChainComplex t;
  size_t top = c.length();
  t.cells.resize(top + 1);
  for (size_t i = 0; i <= top; i++) {
    t.cells[i] = c.cells[top - i];
  }
  t.boundary.resize(top);
  for (size_t k = 1; k <= top; k++) {
    // new boundary from level k lands in level k-1 = old level top-k+1
    t.boundary[k - 1] = c.boundary[top - k].transposed();
  }
  return t;
}

/// Total complex of the tensor product. Level-k cells are pairs of an i-cell
/// of a and a j-cell of b with i+j = k, ordered lexicographically by
/// (a-label, b-label); this fixes all matrix layouts. The boundary acts by
/// the Leibniz rule; output length above 2 is rejected.
inline ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b) {
  size_t len = a.length() + b.length();
  if (len > 2) {
    throw std::invalid_argument("tensor_product: resulting degree exceeds 2");
  }
  ChainComplex c;
  c.cells.resize(len + 1);

  // (a-level, a-index, b-level, b-index) per output cell, sorted by labels
  struct Cell {
    size_t ai, aidx, bi, bidx;
  };
  std::vector<std::vector<Cell>> table(len + 1);
  std::vector<std::map<std::pair<std::string, std::string>, size_t>> index(len + 1);
  for (size_t k = 0; k <= len; k++) {
    std::vector<std::pair<std::pair<std::string, std::string>, Cell>> items;
    for (size_t i = 0; i <= std::min(k, a.length()); i++) {
      size_t j = k - i;
      if (j > b.length()) {
        continue;
      }
      for (size_t ai = 0; ai < a.dim(i); ai++) {
        for (size_t bi = 0; bi < b.dim(j); bi++) {
          items.push_back({{a.cells[i][ai], b.cells[j][bi]}, {i, ai, j, bi}});
        }
      }
    }
    std::sort(items.begin(), items.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [label, cell] : items) {
      index[k][label] = table[k].size();
      table[k].push_back(cell);
      c.cells[k].push_back("(" + label.first + "," + label.second + ")");
    }
  }

  c.boundary.resize(len);
  for (size_t k = 1; k <= len; k++) {
    BitMatrix d(c.cells[k - 1].size(), c.cells[k].size());
    for (size_t col = 0; col < table[k].size(); col++) {
      const Cell& cell = table[k][col];
      if (cell.ai >= 1) {
        const BitMatrix& da = a.boundary[cell.ai - 1];
        for (size_t r = 0; r < da.rows; r++) {
          if (da.get(r, cell.aidx)) {
            size_t row = index[k - 1].at({a.cells[cell.ai - 1][r], b.cells[cell.bi][cell.bidx]});
            d.set(row, col, true);
          }
        }
      }
      if (cell.bi >= 1) {
        const BitMatrix& db = b.boundary[cell.bi - 1];
        for (size_t r = 0; r < db.rows; r++) {
          if (db.get(r, cell.bidx)) {
            size_t row = index[k - 1].at({a.cells[cell.ai][cell.aidx], b.cells[cell.bi - 1][r]});
            d.set(row, col, true);
          }
        }
      }
    }
    c.boundary[k - 1] = std::move(d);
  }
  return c;
}

}  // namespace layerwr
