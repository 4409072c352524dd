#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "layerwr/chain.hpp"
#include "layerwr/errors.hpp"

namespace layerwr {

/// Simple undirected graph on 0..n-1, adjacency kept sorted and loop-free.
struct Graph {
  size_t n = 0;
  std::vector<std::set<size_t>> adj;

  explicit Graph(size_t n_ = 0) : n(n_), adj(n_) {}

  void add_edge(size_t u, size_t v) {
    if (u == v) {
      return;
    }
    adj[u].insert(v);
    adj[v].insert(u);
  }

  void add_clique(const std::vector<size_t>& verts) {
    for (size_t i = 0; i < verts.size(); i++) {
      for (size_t j = i + 1; j < verts.size(); j++) {
        add_edge(verts[i], verts[j]);
      }
    }
  }

  bool has_edge(size_t u, size_t v) const { return adj[u].count(v) > 0; }

  size_t degree(size_t v) const { return adj[v].size(); }

  size_t max_degree() const {
    size_t m = 0;
    for (size_t v = 0; v < n; v++) {
      m = std::max(m, degree(v));
    }
    return m;
  }

  size_t edge_count() const {
    size_t e = 0;
    for (size_t v = 0; v < n; v++) {
      e += adj[v].size();
    }
    return e / 2;
  }
};

/// The three conflict graphs of a CSS code: two X-checks (Z-checks) collide
/// when their supports overlap or some opposite-type check overlaps both;
/// two qubits collide when some check contains both.
struct InducedGraphs {
  Graph gx, gq, gz;
};

namespace detail {

inline std::vector<std::vector<size_t>> rows_as_supports(const BitMatrix& m) {
  std::vector<std::vector<size_t>> s(m.rows);
  for (size_t i = 0; i < m.rows; i++) {
    s[i] = m.row(i).support();
  }
  return s;
}

inline std::vector<std::vector<size_t>> cols_as_supports(const BitMatrix& m) {
  std::vector<std::vector<size_t>> s(m.cols);
  for (size_t i = 0; i < m.rows; i++) {
    for (size_t j : m.row(i).support()) {
      s[j].push_back(i);
    }
  }
  return s;
}

}  // namespace detail

inline InducedGraphs build_induced_graphs(const CssCode& code) {
  code.validate();
  auto x_supp = detail::rows_as_supports(code.hx);   // x -> qubits
  auto z_supp = detail::rows_as_supports(code.hz);   // z -> qubits
  auto q_xs = detail::cols_as_supports(code.hx);     // q -> X-checks
  auto q_zs = detail::cols_as_supports(code.hz);     // q -> Z-checks

  InducedGraphs g{Graph(code.hx.rows), Graph(code.n), Graph(code.hz.rows)};

  for (const auto& supp : x_supp) {
    g.gq.add_clique(supp);
  }
  for (const auto& supp : z_supp) {
    g.gq.add_clique(supp);
  }
  // checks sharing a qubit
  for (size_t q = 0; q < code.n; q++) {
    g.gx.add_clique(q_xs[q]);
    g.gz.add_clique(q_zs[q]);
  }
  // checks bridged by an opposite-type check overlapping both
  for (size_t z = 0; z < code.hz.rows; z++) {
    std::set<size_t> xs;
    for (size_t q : z_supp[z]) {
      xs.insert(q_xs[q].begin(), q_xs[q].end());
    }
    g.gx.add_clique(std::vector<size_t>(xs.begin(), xs.end()));
  }
  for (size_t x = 0; x < code.hx.rows; x++) {
    std::set<size_t> zs;
    for (size_t q : x_supp[x]) {
      zs.insert(q_zs[q].begin(), q_zs[q].end());
    }
    g.gz.add_clique(std::vector<size_t>(zs.begin(), zs.end()));
  }
  return g;
}

/// Greedy proper coloring along the given vertex order; colors are 1-based.
/// Uses at most max_degree + 1 colors and is deterministic for a fixed order.
inline std::pair<std::vector<int>, int> greedy_coloring(const Graph& g,
                                                        const std::vector<size_t>& order) {
  std::vector<int> color(g.n, 0);
  int chi = g.n > 0 ? 1 : 0;
  for (size_t v : order) {
    std::set<int> used;
    for (size_t u : g.adj[v]) {
      if (color[u] > 0) {
        used.insert(color[u]);
      }
    }
    int c = 1;
    while (used.count(c)) {
      c++;
    }
    color[v] = c;
    chi = std::max(chi, c);
  }
  return {color, chi};
}

/// Default greedy order: descending degree, ties by index.
inline std::vector<size_t> greedy_order(const Graph& g) {
  std::vector<size_t> order(g.n);
  for (size_t v = 0; v < g.n; v++) {
    order[v] = v;
  }
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (g.degree(a) != g.degree(b)) {
      return g.degree(a) > g.degree(b);
    }
    return a < b;
  });
  return order;
}

inline std::pair<std::vector<int>, int> greedy_coloring(const Graph& g) {
  return greedy_coloring(g, greedy_order(g));
}

/// Layer coordinates for the three cell families. Colors are 1-based and
/// bounded by the stated chi values (which may be padded above the number of
/// colors actually used).
struct Coloring {
  std::vector<int> eta_x, eta_q, eta_z;
  int chi_x = 0, chi_q = 0, chi_z = 0;
};

inline Coloring color_from_graphs(const InducedGraphs& g) {
  Coloring c;
  auto [ex, cx] = greedy_coloring(g.gx);
  auto [eq, cq] = greedy_coloring(g.gq);
  auto [ez, cz] = greedy_coloring(g.gz);
  c.eta_x = ex;
  c.eta_q = eq;
  c.eta_z = ez;
  c.chi_x = std::max(cx, 1);
  c.chi_q = std::max(cq, 1);
  c.chi_z = std::max(cz, 1);
  return c;
}

/// Disjoint union of half-open color intervals pairing the common qubits of
/// an X-check and a Z-check, in sorted color order.
struct StringDefect {
  std::vector<std::pair<int, int>> intervals;  // [lo, hi), strictly increasing

  bool contains_doubled(int t) const {
    for (auto [lo, hi] : intervals) {
      if (2 * lo <= t && t < 2 * hi) {
        return true;
      }
    }
    return false;
  }

  bool overlaps(const StringDefect& other) const {
    for (auto [a, b] : intervals) {
      for (auto [c, d] : other.intervals) {
        if (a < d && c < b) {
          return true;
        }
      }
    }
    return false;
  }
};

/// Common qubits of the two checks are sorted by color and paired
/// consecutively; each pair becomes one interval.
inline StringDefect string_defect(const std::vector<size_t>& x_support,
                                  const std::vector<size_t>& z_support,
                                  const std::vector<int>& eta_q) {
  std::vector<size_t> common;
  std::set<size_t> xs(x_support.begin(), x_support.end());
  for (size_t q : z_support) {
    if (xs.count(q)) {
      common.push_back(q);
    }
  }
  if (common.empty()) {
    throw std::invalid_argument("string_defect: checks share no qubits");
  }
  if (common.size() % 2 != 0) {
    throw OddOverlap("string_defect: checks share an odd number of qubits");
  }
  std::vector<int> colors;
  for (size_t q : common) {
    colors.push_back(eta_q.at(q));
  }
  std::sort(colors.begin(), colors.end());
  for (size_t i = 0; i + 1 < colors.size(); i++) {
    if (colors[i] == colors[i + 1]) {
      throw ColorCollision("string_defect: qubit color " + std::to_string(colors[i]) +
                           " repeats inside a common-qubit set");
    }
  }
  StringDefect d;
  for (size_t i = 0; i + 1 < colors.size(); i += 2) {
    d.intervals.push_back({colors[i], colors[i + 1]});
  }
  return d;
}

/// Per-condition outcome of the operational injectivity checks. A coloring is
/// usable iff all four conditions hold; a proper coloring of the induced
/// graphs always passes.
struct ColoringReport {
  bool well_formed = true;  // sizes match, colors in [1, chi]
  bool cond1 = true;        // eta_Q injective on every common-qubit set
  bool cond2 = true;        // eta_Q injective on every check support
  bool cond3 = true;        // eta_Z / eta_X injective on the checks at each qubit
  bool cond4 = true;        // same-color string defects pairwise disjoint
  std::vector<std::string> failures;

  bool valid() const { return well_formed && cond1 && cond2 && cond3 && cond4; }

  std::string summary() const {
    if (valid()) {
      return "coloring valid";
    }
    std::string s = "coloring invalid:";
    for (const auto& f : failures) {
      s += "\n  " + f;
    }
    return s;
  }
};

inline ColoringReport validate_coloring(const CssCode& code, const Coloring& c) {
  ColoringReport rep;
  auto fail = [&rep](bool& flag, const std::string& msg) {
    flag = false;
    rep.failures.push_back(msg);
  };

  if (c.eta_x.size() != code.hx.rows || c.eta_q.size() != code.n ||
      c.eta_z.size() != code.hz.rows) {
    fail(rep.well_formed, "coloring sizes do not match the code");
    return rep;
  }
  auto check_range = [&](const std::vector<int>& eta, int chi, const std::string& name) {
    for (size_t i = 0; i < eta.size(); i++) {
      if (eta[i] < 1 || eta[i] > chi) {
        fail(rep.well_formed, name + "[" + std::to_string(i) + "] = " +
                                  std::to_string(eta[i]) + " outside [1, " +
                                  std::to_string(chi) + "]");
        return;
      }
    }
  };
  check_range(c.eta_x, c.chi_x, "eta_x");
  check_range(c.eta_q, c.chi_q, "eta_q");
  check_range(c.eta_z, c.chi_z, "eta_z");
  if (!rep.well_formed) {
    return rep;
  }

  auto x_supp = detail::rows_as_supports(code.hx);
  auto z_supp = detail::rows_as_supports(code.hz);

  auto injective_q = [&](const std::vector<size_t>& qs) {
    std::set<int> seen;
    for (size_t q : qs) {
      if (!seen.insert(c.eta_q[q]).second) {
        return false;
      }
    }
    return true;
  };

  // (2) eta_Q injective on each check support; implies (1) on overlaps
  for (size_t x = 0; x < x_supp.size(); x++) {
    if (!injective_q(x_supp[x])) {
      fail(rep.cond2, "condition 2: eta_q repeats inside the support of x" + std::to_string(x));
    }
  }
  for (size_t z = 0; z < z_supp.size(); z++) {
    if (!injective_q(z_supp[z])) {
      fail(rep.cond2, "condition 2: eta_q repeats inside the support of z" + std::to_string(z));
    }
  }

  // (1) eta_Q injective on x ^ z for every overlapping pair
  std::map<std::pair<size_t, size_t>, std::vector<size_t>> overlaps;
  for (size_t x = 0; x < x_supp.size(); x++) {
    std::set<size_t> xs(x_supp[x].begin(), x_supp[x].end());
    for (size_t z = 0; z < z_supp.size(); z++) {
      std::vector<size_t> common;
      for (size_t q : z_supp[z]) {
        if (xs.count(q)) {
          common.push_back(q);
        }
      }
      if (!common.empty()) {
        if (!injective_q(common)) {
          fail(rep.cond1, "condition 1: eta_q repeats on the common qubits of x" +
                              std::to_string(x) + " and z" + std::to_string(z));
        }
        overlaps[{x, z}] = common;
      }
    }
  }

  // (3) check colors injective at each qubit
  auto q_xs = detail::cols_as_supports(code.hx);
  auto q_zs = detail::cols_as_supports(code.hz);
  for (size_t q = 0; q < code.n; q++) {
    std::set<int> seen;
    for (size_t x : q_xs[q]) {
      if (!seen.insert(c.eta_x[x]).second) {
        fail(rep.cond3, "condition 3: eta_x repeats among the X-checks at q" + std::to_string(q));
        break;
      }
    }
    seen.clear();
    for (size_t z : q_zs[q]) {
      if (!seen.insert(c.eta_z[z]).second) {
        fail(rep.cond3, "condition 3: eta_z repeats among the Z-checks at q" + std::to_string(q));
        break;
      }
    }
  }
  if (!rep.cond1) {
    return rep;  // defects below are undefined without condition 1
  }

  // (4*) for each x and each color, the defects of the same-colored z's must
  // be pairwise disjoint intervals, and symmetrically for each z.
  std::map<std::pair<size_t, size_t>, StringDefect> defects;
  for (const auto& [key, common] : overlaps) {
    if (common.size() % 2 != 0) {
      fail(rep.cond1, "checks x" + std::to_string(key.first) + ", z" +
                          std::to_string(key.second) + " share an odd number of qubits");
      return rep;
    }
    defects[key] = string_defect(x_supp[key.first], z_supp[key.second], c.eta_q);
  }
  for (size_t x = 0; x < x_supp.size(); x++) {
    std::map<int, std::vector<size_t>> by_color;
    for (const auto& [key, d] : defects) {
      if (key.first == x) {
        by_color[c.eta_z[key.second]].push_back(key.second);
      }
    }
    for (const auto& [color, zs] : by_color) {
      for (size_t i = 0; i < zs.size(); i++) {
        for (size_t j = i + 1; j < zs.size(); j++) {
          if (defects[{x, zs[i]}].overlaps(defects[{x, zs[j]}])) {
            fail(rep.cond4, "condition 4: defects of z" + std::to_string(zs[i]) + " and z" +
                                std::to_string(zs[j]) + " (color " + std::to_string(color) +
                                ") collide on x" + std::to_string(x));
          }
        }
      }
    }
  }
  for (size_t z = 0; z < z_supp.size(); z++) {
    std::map<int, std::vector<size_t>> by_color;
    for (const auto& [key, d] : defects) {
      if (key.second == z) {
        by_color[c.eta_x[key.first]].push_back(key.first);
      }
    }
    for (const auto& [color, xs] : by_color) {
      for (size_t i = 0; i < xs.size(); i++) {
        for (size_t j = i + 1; j < xs.size(); j++) {
          if (defects[{xs[i], z}].overlaps(defects[{xs[j], z}])) {
            fail(rep.cond4, "condition 4: defects of x" + std::to_string(xs[i]) + " and x" +
                                std::to_string(xs[j]) + " (color " + std::to_string(color) +
                                ") collide on z" + std::to_string(z));
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace layerwr
