#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "layerwr/chain.hpp"
#include "layerwr/errors.hpp"
#include "layerwr/rational.hpp"

namespace layerwr {

// Brute-force verifiers for the coboundary isoperimetry that pins logicals
// in the distance proof. Everything here scans all vertex subsets, so the
// inputs are capped at two dozen vertices by design.

/// A graph seen as the length-1 complex edges -> vertices; the coboundary of
/// a vertex subset counts the edges it cuts.
struct GraphComplex {
  size_t n_vertices = 0;
  std::vector<std::pair<size_t, size_t>> edges;

  static GraphComplex from_complex(const ChainComplex& c) {
    if (c.length() != 1) {
      throw std::invalid_argument("GraphComplex: complex must have length 1");
    }
    GraphComplex g;
    g.n_vertices = c.dim(0);
    for (size_t e = 0; e < c.dim(1); e++) {
      auto ends = c.d(1).col(e).support();
      if (ends.size() != 2) {
        throw std::invalid_argument("GraphComplex: edge " + std::to_string(e) +
                                    " does not have two endpoints");
      }
      g.edges.push_back({ends[0], ends[1]});
    }
    return g;
  }
};

inline GraphComplex repetition_graph(size_t length) {
  return GraphComplex::from_complex(repetition_complex(length));
}

/// Degree-0 induced graph of the product of two graph complexes: one copy of
/// A's edges per B-vertex and vice versa.
inline GraphComplex product_graph(const GraphComplex& a, const GraphComplex& b) {
  GraphComplex g;
  g.n_vertices = a.n_vertices * b.n_vertices;
  for (auto [u, v] : a.edges) {
    for (size_t y = 0; y < b.n_vertices; y++) {
      g.edges.push_back({u * b.n_vertices + y, v * b.n_vertices + y});
    }
  }
  for (size_t x = 0; x < a.n_vertices; x++) {
    for (auto [u, v] : b.edges) {
      g.edges.push_back({x * b.n_vertices + u, x * b.n_vertices + v});
    }
  }
  return g;
}

inline size_t default_expansion_threshold() { return 22; }

namespace detail {

/// Gray-code scan over all vertex subsets. The callback sees the subset
/// size, cut size, and projected size after every flip.
template <typename Callback>
void scan_subsets(const GraphComplex& g, const std::vector<bool>& projected,
                  Callback&& visit) {
  size_t n = g.n_vertices;
  std::vector<std::vector<size_t>> neighbors(n);
  for (auto [u, v] : g.edges) {
    neighbors[u].push_back(v);
    neighbors[v].push_back(u);
  }
  std::vector<bool> in_subset(n, false);
  std::vector<size_t> inside_count(n, 0);  // neighbors currently in the subset
  size_t size = 0, cut = 0, projected_size = 0;
  uint64_t total = uint64_t(1) << n;
  for (uint64_t code = 1; code < total; code++) {
    size_t v = std::countr_zero(code);
    if (!in_subset[v]) {
      cut += neighbors[v].size() - 2 * inside_count[v];
      in_subset[v] = true;
      size++;
      if (projected[v]) {
        projected_size++;
      }
      for (size_t u : neighbors[v]) {
        inside_count[u]++;
      }
    } else {
      for (size_t u : neighbors[v]) {
        inside_count[u]--;
      }
      cut -= neighbors[v].size() - 2 * inside_count[v];
      in_subset[v] = false;
      size--;
      if (projected[v]) {
        projected_size--;
      }
    }
    visit(size, cut, projected_size);
  }
}

inline void require_small(const GraphComplex& g, size_t threshold) {
  if (g.n_vertices > threshold) {
    throw ThresholdExceeded("expansion: " + std::to_string(g.n_vertices) +
                                " vertices exceed the exhaustion threshold " +
                                std::to_string(threshold),
                            g.n_vertices);
  }
}

}  // namespace detail

/// Best constant c with |delta s| >= 2c |s||s~| / |V| over all proper
/// nontrivial subsets, by exhaustion. A disconnected graph yields 0; a graph
/// with no proper nontrivial subsets yields the infinity marker.
inline Rational coexpansion_constant(const GraphComplex& g,
                                     size_t threshold = default_expansion_threshold()) {
  detail::require_small(g, threshold);
  size_t n = g.n_vertices;
  if (n <= 1) {
    return Rational::infinity();
  }
  Rational best = Rational::infinity();
  detail::scan_subsets(g, std::vector<bool>(n, false),
                       [&](size_t size, size_t cut, size_t) {
                         if (size == 0 || size == n) {
                           return;
                         }
                         Rational candidate =
                             cut == 0 ? Rational(0, 1)
                                      : Rational(static_cast<long long>(cut) * n,
                                                 2LL * size * (n - size));
                         if (candidate < best) {
                           best = candidate;
                         }
                       });
  return best;
}

/// Best constant relative to the projection onto the given vertex subset:
/// |delta s| >= c (|pi s||s~| + |s||pi s~|) / |V_pi|. Subsets with zero
/// denominator are skipped per the definition.
inline Rational relative_coexpansion_constant(
    const GraphComplex& g, const std::vector<size_t>& projection,
    size_t threshold = default_expansion_threshold()) {
  detail::require_small(g, threshold);
  if (projection.empty()) {
    throw std::invalid_argument("relative_coexpansion_constant: empty projection");
  }
  size_t n = g.n_vertices;
  std::vector<bool> projected(n, false);
  for (size_t v : projection) {
    projected.at(v) = true;
  }
  size_t w = projection.size();
  Rational best = Rational::infinity();
  detail::scan_subsets(g, projected, [&](size_t size, size_t cut, size_t psize) {
    long long denom = static_cast<long long>(psize) * (n - size) +
                      static_cast<long long>(size) * (w - psize);
    if (denom == 0) {
      return;
    }
    Rational candidate = cut == 0
                             ? Rational(0, 1)
                             : Rational(static_cast<long long>(cut) * w, denom);
    if (candidate < best) {
      best = candidate;
    }
  });
  return best;
}

/// Product bound: c >= min(a, b) and, with projections, the relative
/// constant dominates the matching min formula.
struct TensorBoundReport {
  Rational a, b, a_rel, b_rel;
  Rational c, c_rel;
  Rational c_bound, c_rel_bound;
  bool c_ok = false;
  bool c_rel_ok = true;
  bool checked_relative = false;

  bool ok() const { return c_ok && c_rel_ok; }
};

inline TensorBoundReport check_tensor_bound(const GraphComplex& ga, const GraphComplex& gb,
                                            const std::vector<size_t>& pa,
                                            const std::vector<size_t>& pb,
                                            size_t threshold = 20) {
  if (ga.n_vertices * gb.n_vertices > threshold) {
    throw ThresholdExceeded("check_tensor_bound: product too large",
                            ga.n_vertices * gb.n_vertices);
  }
  TensorBoundReport rep;
  rep.a = coexpansion_constant(ga);
  rep.b = coexpansion_constant(gb);
  rep.a_rel = pa.empty() ? Rational::infinity() : relative_coexpansion_constant(ga, pa);
  rep.b_rel = pb.empty() ? Rational::infinity() : relative_coexpansion_constant(gb, pb);

  GraphComplex prod = product_graph(ga, gb);
  rep.c = coexpansion_constant(prod, threshold);
  rep.c_bound = std::min(rep.a, rep.b);
  rep.c_ok = rep.c >= rep.c_bound;

  std::vector<size_t> projection;
  for (size_t u : pa) {
    for (size_t y = 0; y < gb.n_vertices; y++) {
      projection.push_back(u * gb.n_vertices + y);
    }
  }
  for (size_t x = 0; x < ga.n_vertices; x++) {
    for (size_t v : pb) {
      size_t idx = x * gb.n_vertices + v;
      bool dup = false;
      for (size_t u : pa) {
        if (x == u) {
          dup = true;
          break;
        }
      }
      if (!dup) {
        projection.push_back(idx);
      }
    }
  }
  if (!projection.empty()) {
    rep.checked_relative = true;
    rep.c_rel = relative_coexpansion_constant(prod, projection, threshold);
    if (pb.empty()) {
      rep.c_rel_bound = std::min(rep.a_rel, rep.b);
    } else if (pa.empty()) {
      rep.c_rel_bound = std::min(rep.b_rel, rep.a);
    } else {
      rep.c_rel_bound = std::min(std::min(rep.a, rep.b), std::min(rep.a_rel, rep.b_rel));
    }
    rep.c_rel_ok = rep.c_rel >= rep.c_rel_bound;
  }
  return rep;
}

/// Exhaustive check of the square bounds: the grid of two repetition codes is
/// 2/max(L1,L2)-coexpanding, (1/L1) min(1, 2L1/L2)-coexpanding relative to
/// the first w columns, and every subset obeys the pointwise inequality
/// |delta s| >= min(1, 2L1/L2) |pi s_hat| / w for s_hat in {s, s~}.
struct SquareBoundReport {
  size_t l1 = 0, l2 = 0, w = 0;
  Rational c, c_rel;
  Rational c_bound, c_rel_bound;
  bool c_ok = false;
  bool c_rel_ok = false;
  bool pointwise_ok = false;

  bool ok() const { return c_ok && c_rel_ok && pointwise_ok; }
};

inline SquareBoundReport check_square_bound(size_t l1, size_t l2, size_t w,
                                            size_t threshold = 20) {
  if (l1 * l2 > threshold) {
    throw ThresholdExceeded("check_square_bound: grid too large", l1 * l2);
  }
  if (w < 1 || w > l1) {
    throw std::invalid_argument("check_square_bound: w must lie in [1, L1]");
  }
  SquareBoundReport rep;
  rep.l1 = l1;
  rep.l2 = l2;
  rep.w = w;
  GraphComplex grid = product_graph(repetition_graph(l1), repetition_graph(l2));
  std::vector<size_t> projection;
  std::vector<bool> projected(grid.n_vertices, false);
  for (size_t i = 0; i < w; i++) {
    for (size_t j = 0; j < l2; j++) {
      projection.push_back(i * l2 + j);
      projected[i * l2 + j] = true;
    }
  }

  rep.c = coexpansion_constant(grid, threshold);
  rep.c_bound = Rational(2, std::max(l1, l2));
  rep.c_ok = rep.c >= rep.c_bound;

  rep.c_rel = relative_coexpansion_constant(grid, projection, threshold);
  rep.c_rel_bound = std::min(Rational(1, l1), Rational(2, l2));
  rep.c_rel_ok = rep.c_rel >= rep.c_rel_bound;

  Rational coefficient = std::min(Rational(1, 1), Rational(2 * l1, l2));
  size_t w_pi = projection.size();
  bool pointwise = true;
  detail::scan_subsets(grid, projected, [&](size_t, size_t cut, size_t psize) {
    size_t best_side = std::min(psize, w_pi - psize);
    // cut >= coefficient * best_side / w
    if (Rational(static_cast<long long>(cut) * w, 1) <
        coefficient * Rational(best_side, 1)) {
      pointwise = false;
    }
  });
  rep.pointwise_ok = pointwise;
  return rep;
}

}  // namespace layerwr
