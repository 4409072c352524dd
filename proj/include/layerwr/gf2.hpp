#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace layerwr {

/// Dense bit-packed vector over GF(2).
struct BitVector {
  size_t length = 0;
  std::vector<uint64_t> words;

  BitVector() = default;
  explicit BitVector(size_t n) : length(n), words((n + 63) / 64, 0) {}

  static BitVector from_support(size_t n, const std::vector<size_t>& support) {
    BitVector v(n);
    for (size_t i : support) {
      v.set(i, true);
    }
    return v;
  }

  bool get(size_t i) const {
    if (i >= length) {
      throw std::out_of_range("BitVector::get: index " + std::to_string(i));
    }
    return (words[i / 64] >> (i % 64)) & 1u;
  }

  void set(size_t i, bool b) {
    if (i >= length) {
      throw std::out_of_range("BitVector::set: index " + std::to_string(i));
    }
    uint64_t mask = uint64_t(1) << (i % 64);
    if (b) {
      words[i / 64] |= mask;
    } else {
      words[i / 64] &= ~mask;
    }
  }

  void xor_in(const BitVector& other) {
    if (other.length != length) {
      throw std::invalid_argument("BitVector::xor_in: length mismatch");
    }
    for (size_t w = 0; w < words.size(); w++) {
      words[w] ^= other.words[w];
    }
  }

  size_t weight() const {
    size_t n = 0;
    for (uint64_t w : words) {
      n += std::popcount(w);
    }
    return n;
  }

  bool is_zero() const {
    for (uint64_t w : words) {
      if (w) {
        return false;
      }
    }
    return true;
  }

  std::vector<size_t> support() const {
    std::vector<size_t> s;
    for (size_t i = 0; i < length; i++) {
      if (get(i)) {
        s.push_back(i);
      }
    }
    return s;
  }

  bool operator==(const BitVector& other) const {
    return length == other.length && words == other.words;
  }

  /// Lexicographic order on bit strings, position 0 most significant.
  /// Used to break ties deterministically between equal-weight witnesses.
  bool lex_less(const BitVector& other) const {
    for (size_t i = 0; i < std::min(length, other.length); i++) {
      bool a = get(i), b = other.get(i);
      if (a != b) {
        return b;
      }
    }
    return length < other.length;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(length);
    for (size_t i = 0; i < length; i++) {
      s += get(i) ? '1' : '0';
    }
    return s;
  }
};

/// Dense bit-packed matrix over GF(2), row-major. Values are treated as
/// immutable once built; all operations return fresh matrices.
struct BitMatrix {
  size_t rows = 0;
  size_t cols = 0;
  size_t stride = 0;  // words per row
  std::vector<uint64_t> data;

  BitMatrix() = default;
  BitMatrix(size_t r, size_t c)
      : rows(r), cols(c), stride((c + 63) / 64), data(r * stride, 0) {}

  static BitMatrix identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
      m.set(i, i, true);
    }
    return m;
  }

  static BitMatrix from_entries(size_t r, size_t c,
                                const std::vector<std::pair<size_t, size_t>>& entries) {
    BitMatrix m(r, c);
    for (auto [i, j] : entries) {
      m.set(i, j, true);
    }
    return m;
  }

  /// rows given as lists of column indices
  static BitMatrix from_rows(size_t c, const std::vector<std::vector<size_t>>& rws) {
    BitMatrix m(rws.size(), c);
    for (size_t i = 0; i < rws.size(); i++) {
      for (size_t j : rws[i]) {
        m.set(i, j, true);
      }
    }
    return m;
  }

  bool get(size_t i, size_t j) const {
    if (i >= rows || j >= cols) {
      throw std::out_of_range("BitMatrix::get: (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
    return (data[i * stride + j / 64] >> (j % 64)) & 1u;
  }

  void set(size_t i, size_t j, bool b) {
    if (i >= rows || j >= cols) {
      throw std::out_of_range("BitMatrix::set: (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
    uint64_t mask = uint64_t(1) << (j % 64);
    if (b) {
      data[i * stride + j / 64] |= mask;
    } else {
      data[i * stride + j / 64] &= ~mask;
    }
  }

  void xor_row(size_t src, size_t dst) {
    uint64_t* d = data.data() + dst * stride;
    const uint64_t* s = data.data() + src * stride;
    for (size_t w = 0; w < stride; w++) {
      d[w] ^= s[w];
    }
  }

  void swap_rows(size_t a, size_t b) {
    if (a == b) {
      return;
    }
    for (size_t w = 0; w < stride; w++) {
      std::swap(data[a * stride + w], data[b * stride + w]);
    }
  }

  BitVector row(size_t i) const {
    BitVector v(cols);
    std::copy(data.begin() + i * stride, data.begin() + (i + 1) * stride,
              v.words.begin());
    return v;
  }

  void set_row(size_t i, const BitVector& v) {
    if (v.length != cols) {
      throw std::invalid_argument("BitMatrix::set_row: length mismatch");
    }
    std::copy(v.words.begin(), v.words.end(), data.begin() + i * stride);
  }

  BitVector col(size_t j) const {
    BitVector v(rows);
    for (size_t i = 0; i < rows; i++) {
      if (get(i, j)) {
        v.set(i, true);
      }
    }
    return v;
  }

  size_t row_weight(size_t i) const {
    size_t n = 0;
    for (size_t w = 0; w < stride; w++) {
      n += std::popcount(data[i * stride + w]);
    }
    return n;
  }

  size_t col_weight(size_t j) const {
    size_t n = 0;
    for (size_t i = 0; i < rows; i++) {
      n += get(i, j);
    }
    return n;
  }

  size_t max_row_weight() const {
    size_t m = 0;
    for (size_t i = 0; i < rows; i++) {
      m = std::max(m, row_weight(i));
    }
    return m;
  }

  std::vector<size_t> col_weights() const {
    std::vector<size_t> w(cols, 0);
    for (size_t i = 0; i < rows; i++) {
      for (size_t wd = 0; wd < stride; wd++) {
        uint64_t word = data[i * stride + wd];
        while (word) {
          w[wd * 64 + std::countr_zero(word)]++;
          word &= word - 1;
        }
      }
    }
    return w;
  }

  size_t max_col_weight() const {
    size_t m = 0;
    for (size_t w : col_weights()) {
      m = std::max(m, w);
    }
    return m;
  }

  bool is_zero() const {
    for (uint64_t w : data) {
      if (w) {
        return false;
      }
    }
    return true;
  }

  bool operator==(const BitMatrix& other) const {
    return rows == other.rows && cols == other.cols && data == other.data;
  }

  BitMatrix transposed() const {
    BitMatrix t(cols, rows);
    for (size_t i = 0; i < rows; i++) {
      for (size_t w = 0; w < stride; w++) {
        uint64_t word = data[i * stride + w];
        while (word) {
          size_t j = w * 64 + std::countr_zero(word);
          t.set(j, i, true);
          word &= word - 1;
        }
      }
    }
    return t;
  }

  std::string to_string() const {
    std::string s;
    for (size_t i = 0; i < rows; i++) {
      s += row(i).to_string();
      s += '\n';
    }
    return s;
  }
};

/// Matrix product over GF(2). Cost is O(nnz(A) * stride(B)), so products of
/// sparse matrices stay cheap even at large dimensions.
inline BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols != b.rows) {
    throw std::invalid_argument("mat_mul: inner dimension mismatch (" +
                                std::to_string(a.cols) + " vs " +
                                std::to_string(b.rows) + ")");
  }
  BitMatrix c(a.rows, b.cols);
  for (size_t i = 0; i < a.rows; i++) {
    uint64_t* out = c.data.data() + i * c.stride;
    for (size_t w = 0; w < a.stride; w++) {
      uint64_t word = a.data[i * a.stride + w];
      while (word) {
        size_t k = w * 64 + std::countr_zero(word);
        const uint64_t* brow = b.data.data() + k * b.stride;
        for (size_t v = 0; v < b.stride; v++) {
          out[v] ^= brow[v];
        }
        word &= word - 1;
      }
    }
  }
  return c;
}

inline BitVector mat_vec(const BitMatrix& m, const BitVector& x) {
  if (x.length != m.cols) {
    throw std::invalid_argument("mat_vec: dimension mismatch");
  }
  BitVector y(m.rows);
  for (size_t i = 0; i < m.rows; i++) {
    uint64_t acc = 0;
    for (size_t w = 0; w < m.stride; w++) {
      acc ^= m.data[i * m.stride + w] & x.words[w];
    }
    y.set(i, std::popcount(acc) & 1u);
  }
  return y;
}

/// Row-reduced echelon form together with its pivot columns.
struct Rref {
  BitMatrix mat;
  std::vector<size_t> pivots;  // pivot column of row r, ascending

  size_t rank() const { return pivots.size(); }

  /// Reduce v against the echelon rows; the remainder is zero iff v lies in
  /// the row space.
  BitVector reduce(const BitVector& v) const {
    BitVector r = v;
    for (size_t i = 0; i < pivots.size(); i++) {
      if (r.get(pivots[i])) {
        const uint64_t* s = mat.data.data() + i * mat.stride;
        for (size_t w = 0; w < mat.stride; w++) {
          r.words[w] ^= s[w];
        }
      }
    }
    return r;
  }

  bool in_row_space(const BitVector& v) const { return reduce(v).is_zero(); }
};

inline Rref rref(const BitMatrix& m) {
  Rref out;
  out.mat = m;
  BitMatrix& a = out.mat;
  size_t r = 0;
  for (size_t c = 0; c < a.cols && r < a.rows; c++) {
    size_t pivot = r;
    while (pivot < a.rows && !a.get(pivot, c)) {
      pivot++;
    }
    if (pivot == a.rows) {
      continue;
    }
    a.swap_rows(pivot, r);
    for (size_t i = 0; i < a.rows; i++) {
      if (i != r && a.get(i, c)) {
        a.xor_row(r, i);
      }
    }
    out.pivots.push_back(c);
    r++;
  }
  return out;
}

inline size_t rank(const BitMatrix& m) { return rref(m).rank(); }

/// Basis of the right kernel {v : Mv = 0}. Basis vectors correspond to the
/// pivot-free columns in ascending index, so output is reproducible.
inline std::vector<BitVector> kernel_basis(const BitMatrix& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t c : r.pivots) {
    is_pivot[c] = true;
  }
  std::vector<BitVector> basis;
  for (size_t c = 0; c < m.cols; c++) {
    if (is_pivot[c]) {
      continue;
    }
    BitVector v(m.cols);
    v.set(c, true);
    for (size_t i = 0; i < r.pivots.size(); i++) {
      if (r.mat.get(i, c)) {
        v.set(r.pivots[i], true);
      }
    }
    basis.push_back(v);
  }
  return basis;
}

/// Solve Mx = b; free variables are fixed to 0. Returns nullopt when b is
/// outside the column space.
inline std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
  if (b.length != m.rows) {
    throw std::invalid_argument("solve: rhs length mismatch");
  }
  // Row-reduce the augmented matrix [M | b].
  BitMatrix aug(m.rows, m.cols + 1);
  for (size_t i = 0; i < m.rows; i++) {
    std::copy(m.data.begin() + i * m.stride, m.data.begin() + (i + 1) * m.stride,
              aug.data.begin() + i * aug.stride);
    if (b.get(i)) {
      aug.set(i, m.cols, true);
    }
  }
  size_t r = 0;
  std::vector<size_t> pivots;
  for (size_t c = 0; c < m.cols && r < aug.rows; c++) {
    size_t pivot = r;
    while (pivot < aug.rows && !aug.get(pivot, c)) {
      pivot++;
    }
    if (pivot == aug.rows) {
      continue;
    }
    aug.swap_rows(pivot, r);
    for (size_t i = 0; i < aug.rows; i++) {
      if (i != r && aug.get(i, c)) {
        aug.xor_row(r, i);
      }
    }
    pivots.push_back(c);
    r++;
  }
  for (size_t i = r; i < aug.rows; i++) {
    if (aug.get(i, m.cols)) {
      return std::nullopt;  // inconsistent row 0 = 1
    }
  }
  BitVector x(m.cols);
  for (size_t i = 0; i < pivots.size(); i++) {
    if (aug.get(i, m.cols)) {
      x.set(pivots[i], true);
    }
  }
  return x;
}

/// Stack b below a (columns must agree).
inline BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols != b.cols) {
    throw std::invalid_argument("vstack: column mismatch");
  }
  BitMatrix c(a.rows + b.rows, a.cols);
  std::copy(a.data.begin(), a.data.end(), c.data.begin());
  std::copy(b.data.begin(), b.data.end(), c.data.begin() + a.rows * a.stride);
  return c;
}

/// Place a beside b (rows must agree).
inline BitMatrix hstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows != b.rows) {
    throw std::invalid_argument("hstack: row mismatch");
  }
  BitMatrix c(a.rows, a.cols + b.cols);
  for (size_t i = 0; i < a.rows; i++) {
    for (size_t w = 0; w < a.stride; w++) {
      uint64_t word = a.data[i * a.stride + w];
      while (word) {
        c.set(i, w * 64 + std::countr_zero(word), true);
        word &= word - 1;
      }
    }
    for (size_t w = 0; w < b.stride; w++) {
      uint64_t word = b.data[i * b.stride + w];
      while (word) {
        c.set(i, a.cols + w * 64 + std::countr_zero(word), true);
        word &= word - 1;
      }
    }
  }
  return c;
}

/// Solve M x = b for every column b of rhs with one elimination pass.
/// Free variables are fixed to 0; solutions[j] is empty when column j is
/// outside the column space (ok[j] reports which).
struct SolveMany {
  BitMatrix solutions;  // cols(M) x cols(rhs)
  std::vector<bool> ok;
};

inline SolveMany solve_many(const BitMatrix& m, const BitMatrix& rhs) {
  if (rhs.rows != m.rows) {
    throw std::invalid_argument("solve_many: rhs row mismatch");
  }
  BitMatrix aug = hstack(m, rhs);
  size_t r = 0;
  std::vector<size_t> pivots;
  for (size_t c = 0; c < m.cols && r < aug.rows; c++) {
    size_t pivot = r;
    while (pivot < aug.rows && !aug.get(pivot, c)) {
      pivot++;
    }
    if (pivot == aug.rows) {
      continue;
    }
    aug.swap_rows(pivot, r);
    for (size_t i = 0; i < aug.rows; i++) {
      if (i != r && aug.get(i, c)) {
        aug.xor_row(r, i);
      }
    }
    pivots.push_back(c);
    r++;
  }
  SolveMany out;
  out.solutions = BitMatrix(m.cols, rhs.cols);
  out.ok.assign(rhs.cols, true);
  for (size_t j = 0; j < rhs.cols; j++) {
    for (size_t i = r; i < aug.rows; i++) {
      if (aug.get(i, m.cols + j)) {
        out.ok[j] = false;
        break;
      }
    }
    if (!out.ok[j]) {
      continue;
    }
    for (size_t i = 0; i < pivots.size(); i++) {
      if (aug.get(i, m.cols + j)) {
        out.solutions.set(pivots[i], j, true);
      }
    }
  }
  return out;
}

}  // namespace layerwr
