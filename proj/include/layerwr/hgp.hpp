#pragma once

#include <random>

#include "layerwr/chain.hpp"
#include "layerwr/gf2.hpp"

namespace layerwr {

inline BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix c(a.rows * b.rows, a.cols * b.cols);
  for (size_t i1 = 0; i1 < a.rows; i1++) {
    for (size_t j1 = 0; j1 < a.cols; j1++) {
      if (!a.get(i1, j1)) {
        continue;
      }
      for (size_t i2 = 0; i2 < b.rows; i2++) {
        for (size_t j2 = 0; j2 < b.cols; j2++) {
          if (b.get(i2, j2)) {
            c.set(i1 * b.rows + i2, j1 * b.cols + j2, true);
          }
        }
      }
    }
  }
  return c;
}

/// Random sparse classical parity-check matrix: each row picks `row_weight`
/// distinct columns. Deterministic in the seed.
inline BitMatrix random_sparse_code(size_t n_bits, size_t n_checks, size_t row_weight,
                                    uint64_t seed) {
  if (row_weight > n_bits) {
    throw std::invalid_argument("random_sparse_code: row weight exceeds length");
  }
  std::mt19937_64 rng(seed);
  BitMatrix h(n_checks, n_bits);
  std::vector<size_t> cols(n_bits);
  for (size_t j = 0; j < n_bits; j++) {
    cols[j] = j;
  }
  for (size_t i = 0; i < n_checks; i++) {
    for (size_t j = n_bits; j > 1; j--) {
      std::swap(cols[j - 1], cols[rng() % j]);
    }
    for (size_t j = 0; j < row_weight; j++) {
      h.set(i, cols[j], true);
    }
  }
  return h;
}

/// Hypergraph product of two classical codes; the standard CSS source of
/// bulk test inputs.
inline CssCode hypergraph_product(const BitMatrix& h1, const BitMatrix& h2) {
  BitMatrix hx = hstack(kron(h1, BitMatrix::identity(h2.cols)),
                        kron(BitMatrix::identity(h1.rows), h2.transposed()));
  BitMatrix hz = hstack(kron(BitMatrix::identity(h1.cols), h2),
                        kron(h1.transposed(), BitMatrix::identity(h2.rows)));
  CssCode code(hx, hz);
  code.validate();
  return code;
}

/// Seeded bulk fixture: the hypergraph product of two small random sparse
/// codes (4-regular-ish rows, a handful of bits each). Sizes are kept small
/// so whole-suite structural checks stay fast.
inline CssCode random_hypergraph_product(uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](size_t lo, size_t hi) { return lo + rng() % (hi - lo + 1); };
  size_t n1 = pick(3, 4), n2 = 3;
  size_t m1 = 2, m2 = 2;
  size_t w1 = 3, w2 = 3;
  return hypergraph_product(random_sparse_code(n1, m1, w1, rng()),
                            random_sparse_code(n2, m2, w2, rng()));
}

}  // namespace layerwr
