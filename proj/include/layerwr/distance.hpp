#pragma once

#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "layerwr/chain.hpp"
#include "layerwr/errors.hpp"
#include "layerwr/gf2.hpp"
#include "layerwr/threads.hpp"

namespace layerwr {

enum class Side { X, Z };

inline const char* side_name(Side s) { return s == Side::X ? "X" : "Z"; }

/// A distance value certified by an explicit logical representative, or the
/// infinite marker when the code has no logicals of the requested type.
struct DistanceResult {
  bool infinite = false;
  size_t weight = 0;
  BitVector witness;
};

namespace detail {

/// Checks whose kernel contains the side's logicals, and the stabilizer
/// row space that must exclude them.
inline std::pair<BitMatrix, BitMatrix> side_matrices(const ChainComplex& c, Side side) {
  if (c.length() != 2) {
    throw std::invalid_argument("distance: complex must have length 2");
  }
  if (side == Side::X) {
    return {c.d1(), c.d2().transposed()};
  }
  return {c.d2().transposed(), c.d1()};
}

inline uint64_t mix_seed(uint64_t seed, uint64_t t) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (t + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

inline size_t default_enumeration_threshold() { return 26; }

/// Exact minimum weight over ker(checks) \ rowspace(stabilizers), found by
/// enumerating the whole kernel in Gray-code order. Rejects kernels larger
/// than the threshold; distance_upper is the escape hatch.
inline DistanceResult distance_exact(const ChainComplex& c, Side side,
                                     size_t threshold = default_enumeration_threshold()) {
  auto [checks, stab] = detail::side_matrices(c, side);
  if (logical_dimension(c) == 0) {
    return {.infinite = true};
  }
  std::vector<BitVector> basis = kernel_basis(checks);
  if (basis.size() > threshold) {
    throw ThresholdExceeded("distance_exact: kernel dimension " +
                                std::to_string(basis.size()) + " exceeds threshold " +
                                std::to_string(threshold) + "; use distance_upper",
                            basis.size());
  }
  Rref stab_rref = rref(stab);
  size_t n = checks.cols;
  BitVector cur(n);
  DistanceResult best;
  bool found = false;
  uint64_t total = uint64_t(1) << basis.size();
  for (uint64_t g = 1; g < total; g++) {
    cur.xor_in(basis[std::countr_zero(g)]);
    size_t w = cur.weight();
    if (w == 0) {
      continue;
    }
    bool better = !found || w < best.weight ||
                  (w == best.weight && cur.lex_less(best.witness));
    if (better && !stab_rref.in_row_space(cur)) {
      best.weight = w;
      best.witness = cur;
      found = true;
    }
  }
  if (!found) {
    // k >= 1 guarantees a kernel vector outside the stabilizers
    throw std::logic_error("distance_exact: no logical found despite k >= 1");
  }
  return best;
}

/// Randomized upper bound: repeated random column permutations followed by a
/// reduced-row-echelon sweep, collecting the low-weight kernel basis vectors
/// the sweep exposes. Deterministic for a fixed seed (trial t draws from a
/// stream keyed by seed and t, and results merge by weight then lexicographic
/// witness, independent of thread count). Monotone non-increasing in trials.
inline DistanceResult distance_upper(const ChainComplex& c, Side side, size_t trials,
                                     uint64_t seed) {
  auto [checks, stab] = detail::side_matrices(c, side);
  if (logical_dimension(c) == 0) {
    throw std::invalid_argument("distance_upper: code has no logicals (k = 0)");
  }
  Rref stab_rref = rref(stab);
  size_t n = checks.cols;

  // One trial: pivot along a random column order in a scratch copy, then
  // read the kernel basis straight off the reduced rows.
  auto run_trial = [&](uint64_t t, BitMatrix& scratch, DistanceResult& best,
                       bool& found) {
    std::mt19937_64 rng(detail::mix_seed(seed, t));
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; i++) {
      order[i] = i;
    }
    for (size_t i = n; i > 1; i--) {
      size_t j = rng() % i;
      std::swap(order[i - 1], order[j]);
    }
    scratch.data = checks.data;
    size_t stride = scratch.stride;
    auto bit = [&](size_t row, size_t col) -> bool {
      return (scratch.data[row * stride + col / 64] >> (col % 64)) & 1u;
    };
    std::vector<size_t> pivots;  // pivot column of row r, in processing order
    std::vector<bool> is_pivot(n, false);
    size_t r = 0;
    for (size_t c : order) {
      if (r >= scratch.rows) {
        break;
      }
      size_t pivot = r;
      while (pivot < scratch.rows && !bit(pivot, c)) {
        pivot++;
      }
      if (pivot == scratch.rows) {
        continue;
      }
      scratch.swap_rows(pivot, r);
      for (size_t i = 0; i < scratch.rows; i++) {
        if (i != r && bit(i, c)) {
          scratch.xor_row(r, i);
        }
      }
      is_pivot[c] = true;
      pivots.push_back(c);
      r++;
    }
    for (size_t col = 0; col < n; col++) {
      if (is_pivot[col]) {
        continue;
      }
      size_t w = 1;
      for (size_t i = 0; i < r; i++) {
        w += bit(i, col);
      }
      if (found && (w > best.weight)) {
        continue;
      }
      BitVector v(n);
      v.set(col, true);
      for (size_t i = 0; i < r; i++) {
        if (bit(i, col)) {
          v.set(pivots[i], true);
        }
      }
      bool better = !found || w < best.weight ||
                    (w == best.weight && v.lex_less(best.witness));
      if (better && !stab_rref.in_row_space(v)) {
        best.weight = w;
        best.witness = v;
        found = true;
      }
    }
  };

  if (trials == 0) {
    throw std::invalid_argument("distance_upper: at least one trial required");
  }
  size_t workers = std::min(worker_count(), trials);
  std::vector<DistanceResult> results(workers);
  std::vector<char> founds(workers, 0);
  if (workers <= 1) {
    bool found = false;
    BitMatrix scratch(checks.rows, checks.cols);
    for (uint64_t t = 0; t < trials; t++) {
      run_trial(t, scratch, results[0], found);
    }
    founds[0] = found;
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; w++) {
      pool.emplace_back([&, w]() {
        bool found = false;
        BitMatrix scratch(checks.rows, checks.cols);
        for (uint64_t t = w; t < trials; t += workers) {
          run_trial(t, scratch, results[w], found);
        }
        founds[w] = found;
      });
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  DistanceResult best;
  bool found = false;
  for (size_t w = 0; w < workers; w++) {
    if (!founds[w]) {
      continue;
    }
    bool better = !found || results[w].weight < best.weight ||
                  (results[w].weight == best.weight && results[w].witness.lex_less(best.witness));
    if (better) {
      best = results[w];
      found = true;
    }
  }
  if (!found) {
    throw std::logic_error("distance_upper: no logical found despite k >= 1");
  }
  return best;
}

}  // namespace layerwr
