#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "layerwr/chain.hpp"
#include "layerwr/coloring.hpp"
#include "layerwr/errors.hpp"
#include "layerwr/gf2.hpp"

namespace layerwr {

// The classical reference pipeline: X-reduction, Z-thickening and coning.
// Everything here reads a CssCode with the opposite orientation to the main
// construction (Z-checks at the top level), but the public surface stays in
// (hx, hz) form so callers never juggle conventions.

/// Weight diagram in the orientation used by this pipeline:
/// Z -(wz/qz)- qubits -(qx/wx)- X.
struct HastingsProfile {
  size_t wz = 0, qz = 0, qx = 0, wx = 0;
};

inline HastingsProfile hastings_profile(const CssCode& code) {
  HastingsProfile p;
  p.wz = code.hz.max_row_weight();
  p.qz = code.hz.max_col_weight();
  p.qx = code.hx.max_col_weight();
  p.wx = code.hx.max_row_weight();
  return p;
}

/// Per-check orderings: the rank of a qubit inside a check's support and of
/// a check among those at a qubit, both by ascending index.
struct OrderingMaps {
  std::map<std::pair<size_t, size_t>, size_t> q_in_x;  // (x, q) -> 1..wx
  std::map<std::pair<size_t, size_t>, size_t> x_in_q;  // (q, x) -> 1..qx
};

inline OrderingMaps ordering_maps(const CssCode& code) {
  OrderingMaps m;
  for (size_t x = 0; x < code.hx.rows; x++) {
    size_t r = 1;
    for (size_t q : code.hx.row(x).support()) {
      m.q_in_x[{x, q}] = r++;
    }
  }
  for (size_t q = 0; q < code.n; q++) {
    size_t r = 1;
    for (size_t x : code.hx.col(q).support()) {
      m.x_in_q[{q, x}] = r++;
    }
  }
  return m;
}

struct XReduceResult {
  CssCode code;
  OrderingMaps ordering;
  size_t rep_height = 0;    // vertices per qubit column (max X-degree)
  size_t string_length = 0; // vertices per check string (max X-weight)
};

/// X-reduction: each qubit becomes a column of rep_height copies, each
/// X-check a repetition-code string; X-type weights drop to at most 3 while
/// the logical subspace is preserved.
inline XReduceResult x_reduce(const CssCode& input) {
  input.validate();
  XReduceResult res;
  res.ordering = ordering_maps(input);
  size_t qx = std::max<size_t>(input.hx.max_col_weight(), 1);
  size_t wx = std::max<size_t>(input.hx.max_row_weight(), 1);
  res.rep_height = qx;
  res.string_length = wx;

  size_t nq = input.n, nx = input.hx.rows, nz = input.hz.rows;
  size_t q_sector = nq * qx;              // (q, i), i = 1..qx
  size_t n_out = q_sector + nx * (wx - 1);  // plus string edges (x, m+)
  size_t xc_q_sector = nq * (qx - 1);     // (q, i+)
  size_t n_xchecks = xc_q_sector + nx * wx;  // plus string vertices (x, m)

  auto qcol = [&](size_t q, size_t i) { return q * qx + (i - 1); };
  auto xedge = [&](size_t x, size_t m) { return q_sector + x * (wx - 1) + (m - 1); };
  auto qxrow = [&](size_t q, size_t i) { return q * (qx - 1) + (i - 1); };
  auto xvrow = [&](size_t x, size_t m) { return xc_q_sector + x * wx + (m - 1); };

  BitMatrix hz(nz, n_out);
  for (size_t z = 0; z < nz; z++) {
    auto z_supp = input.hz.row(z).support();
    for (size_t q : z_supp) {
      for (size_t i = 1; i <= qx; i++) {
        hz.set(z, qcol(q, i), true);
      }
    }
    std::set<size_t> zq(z_supp.begin(), z_supp.end());
    for (size_t x = 0; x < nx; x++) {
      std::vector<size_t> ranks;
      for (size_t q : input.hx.row(x).support()) {
        if (zq.count(q)) {
          ranks.push_back(res.ordering.q_in_x.at({x, q}));
        }
      }
      if (ranks.empty()) {
        continue;
      }
      if (ranks.size() % 2 != 0) {
        throw OddOverlap("x_reduce: checks overlap on an odd number of qubits");
      }
      // ranks ascend already; connect consecutive pairs by edge strings
      for (size_t t = 0; t + 1 < ranks.size(); t += 2) {
        for (size_t m = ranks[t]; m < ranks[t + 1]; m++) {
          hz.set(z, xedge(x, m), true);
        }
      }
    }
  }

  BitMatrix hx(n_xchecks, n_out);
  for (size_t q = 0; q < nq; q++) {
    for (size_t i = 1; i + 1 <= qx; i++) {
      hx.set(qxrow(q, i), qcol(q, i), true);
      hx.set(qxrow(q, i), qcol(q, i + 1), true);
    }
  }
  for (size_t x = 0; x < nx; x++) {
    for (size_t q : input.hx.row(x).support()) {
      size_t m = res.ordering.q_in_x.at({x, q});
      size_t i = res.ordering.x_in_q.at({q, x});
      hx.set(xvrow(x, m), qcol(q, i), true);
    }
    for (size_t m = 1; m <= wx; m++) {
      if (m >= 2) {
        hx.set(xvrow(x, m), xedge(x, m - 1), true);
      }
      if (m + 1 <= wx) {
        hx.set(xvrow(x, m), xedge(x, m), true);
      }
    }
  }

  res.code = CssCode(hx, hz);
  res.code.validate();
  return res;
}

struct ZThickenResult {
  CssCode code;
  size_t height = 0;
  std::vector<int> heights;  // color of each Z-check in the conflict graph
};

/// Z-thickening: every qubit becomes a column of `height` copies and each
/// Z-check attaches at the height given by a proper coloring of the graph
/// joining Z-checks that share a qubit.
inline ZThickenResult z_thicken(const CssCode& input) {
  input.validate();
  ZThickenResult res;
  size_t nq = input.n, nx = input.hx.rows, nz = input.hz.rows;

  Graph conflicts(nz);
  for (size_t q = 0; q < nq; q++) {
    conflicts.add_clique(input.hz.col(q).support());
  }
  auto [heights, chi] = greedy_coloring(conflicts);
  res.heights = heights;
  size_t height = std::max(chi, 1);
  res.height = height;

  size_t q_sector = nq * height;             // (q, l)
  size_t n_out = q_sector + nx * (height - 1);  // plus (x, l+)
  size_t n_zchecks = nz + nq * (height - 1);    // Z plus (q, l+)
  size_t n_xchecks = nx * height;               // (x, l)

  auto qcol = [&](size_t q, size_t l) { return q * height + (l - 1); };
  auto xcol = [&](size_t x, size_t l) { return q_sector + x * (height - 1) + (l - 1); };
  auto qzrow = [&](size_t q, size_t l) { return nz + q * (height - 1) + (l - 1); };
  auto xrow = [&](size_t x, size_t l) { return x * height + (l - 1); };

  BitMatrix hz(n_zchecks, n_out);
  for (size_t z = 0; z < nz; z++) {
    for (size_t q : input.hz.row(z).support()) {
      hz.set(z, qcol(q, heights[z]), true);
    }
  }
  for (size_t q = 0; q < nq; q++) {
    for (size_t l = 1; l + 1 <= height; l++) {
      hz.set(qzrow(q, l), qcol(q, l), true);
      hz.set(qzrow(q, l), qcol(q, l + 1), true);
      for (size_t x : input.hx.col(q).support()) {
        hz.set(qzrow(q, l), xcol(x, l), true);
      }
    }
  }

  BitMatrix hx(n_xchecks, n_out);
  for (size_t x = 0; x < nx; x++) {
    for (size_t l = 1; l <= height; l++) {
      for (size_t q : input.hx.row(x).support()) {
        hx.set(xrow(x, l), qcol(q, l), true);
      }
      if (l >= 2) {
        hx.set(xrow(x, l), xcol(x, l - 1), true);
      }
      if (l + 1 <= height) {
        hx.set(xrow(x, l), xcol(x, l), true);
      }
    }
  }

  res.code = CssCode(hx, hz);
  res.code.validate();
  return res;
}

inline size_t default_reasonableness_threshold() { return 22; }

/// Outcome of the brute-force search for Z-logicals hiding inside a
/// Z-check's support.
struct ReasonablenessReport {
  bool reasonable = true;
  std::vector<std::pair<size_t, BitVector>> violations;  // (z, logical subset)
  size_t checks_examined = 0;
  std::string method = "brute_force";
};

inline ReasonablenessReport check_z_reasonable(
    const CssCode& code, const std::vector<size_t>& zs,
    size_t threshold = default_reasonableness_threshold()) {
  code.validate();
  ReasonablenessReport rep;
  Rref stab = rref(code.hz);
  for (size_t z : zs) {
    auto supp = code.hz.row(z).support();
    if (supp.size() > threshold) {
      throw ThresholdExceeded("check_z_reasonable: support of z" + std::to_string(z) +
                                  " has " + std::to_string(supp.size()) +
                                  " qubits, above the threshold " +
                                  std::to_string(threshold),
                              supp.size());
    }
    rep.checks_examined++;
    std::vector<BitVector> syndromes;
    for (size_t q : supp) {
      syndromes.push_back(code.hx.col(q));
    }
    BitVector syndrome(code.hx.rows);
    BitVector v(code.n);
    uint64_t total = uint64_t(1) << supp.size();
    for (uint64_t g = 1; g < total; g++) {
      size_t flip = std::countr_zero(g);
      v.set(supp[flip], !v.get(supp[flip]));
      syndrome.xor_in(syndromes[flip]);
      if (!syndrome.is_zero() || v.is_zero()) {
        continue;
      }
      if (!stab.in_row_space(v)) {
        rep.reasonable = false;
        rep.violations.push_back({z, v});
      }
    }
    // reset for the next check (Gray enumeration ends at a known state)
    v = BitVector(code.n);
    syndrome = BitVector(code.hx.rows);
  }
  return rep;
}

inline std::vector<size_t> all_z_checks(const CssCode& code) {
  std::vector<size_t> zs(code.hz.rows);
  for (size_t z = 0; z < zs.size(); z++) {
    zs[z] = z;
  }
  return zs;
}

inline std::string describe_violation(const ReasonablenessReport& rep) {
  if (rep.violations.empty()) {
    return "no violation";
  }
  const auto& [z, witness] = rep.violations.front();
  std::string msg = "z" + std::to_string(z) +
                    " hides a nontrivial Z-logical on qubits {";
  bool first = true;
  for (size_t q : witness.support()) {
    msg += (first ? "" : ", ") + std::to_string(q);
    first = false;
  }
  return msg + "}";
}

/// Pairing graph of one Z-check: one vertex per supported qubit, one edge per
/// consecutive pair of common qubits with each overlapping X-check.
struct ZGraphEdge {
  size_t u, v;        // vertex indices
  size_t x;           // generating X-check
  size_t pair_index;  // which pair of the overlap
};

struct ZGraph {
  size_t z = 0;
  std::vector<size_t> qubits;  // vertex -> qubit, ascending
  std::vector<ZGraphEdge> edges;
  std::vector<std::vector<size_t>> components;
};

inline ZGraph build_z_graph(const CssCode& code, size_t z) {
  ZGraph g;
  g.z = z;
  g.qubits = code.hz.row(z).support();
  std::map<size_t, size_t> vertex_of;
  for (size_t v = 0; v < g.qubits.size(); v++) {
    vertex_of[g.qubits[v]] = v;
  }
  for (size_t x = 0; x < code.hx.rows; x++) {
    std::vector<size_t> common;  // ascending qubit order = ascending (q;x) rank
    for (size_t q : code.hx.row(x).support()) {
      if (vertex_of.count(q)) {
        common.push_back(q);
      }
    }
    if (common.empty()) {
      continue;
    }
    if (common.size() % 2 != 0) {
      throw OddOverlap("build_z_graph: z" + std::to_string(z) + " and x" +
                       std::to_string(x) + " overlap on an odd number of qubits");
    }
    for (size_t t = 0; t + 1 < common.size(); t += 2) {
      g.edges.push_back({vertex_of[common[t]], vertex_of[common[t + 1]], x, t / 2});
    }
  }
  // connected components by BFS
  std::vector<int> comp(g.qubits.size(), -1);
  std::vector<std::vector<size_t>> incident(g.qubits.size());
  for (size_t e = 0; e < g.edges.size(); e++) {
    incident[g.edges[e].u].push_back(e);
    incident[g.edges[e].v].push_back(e);
  }
  for (size_t v = 0; v < g.qubits.size(); v++) {
    if (comp[v] >= 0) {
      continue;
    }
    int id = static_cast<int>(g.components.size());
    g.components.push_back({});
    std::queue<size_t> frontier;
    frontier.push(v);
    comp[v] = id;
    while (!frontier.empty()) {
      size_t u = frontier.front();
      frontier.pop();
      g.components[id].push_back(u);
      for (size_t e : incident[u]) {
        size_t w = g.edges[e].u == u ? g.edges[e].v : g.edges[e].u;
        if (comp[w] < 0) {
          comp[w] = id;
          frontier.push(w);
        }
      }
    }
  }
  return g;
}

/// Closed walk with distinct vertices: edges[i] joins verts[i] and
/// verts[(i+1) % N].
struct Cycle {
  std::vector<size_t> verts;
  std::vector<size_t> edges;
};

struct CycleBasisResult {
  std::vector<Cycle> cycles;
  size_t total_weight = 0;
  size_t max_edge_multiplicity = 0;
};

/// Fundamental cycles of a breadth-first spanning forest; basis size is
/// |E| - |V| + #components.
inline CycleBasisResult cycle_basis(size_t n_vertices,
                                    const std::vector<std::pair<size_t, size_t>>& edges) {
  std::vector<std::vector<std::pair<size_t, size_t>>> incident(n_vertices);
  for (size_t e = 0; e < edges.size(); e++) {
    incident[edges[e].first].push_back({edges[e].second, e});
    incident[edges[e].second].push_back({edges[e].first, e});
  }
  std::vector<int> parent(n_vertices, -1), parent_edge(n_vertices, -1), depth(n_vertices, -1);
  std::vector<bool> in_tree(edges.size(), false);
  for (size_t root = 0; root < n_vertices; root++) {
    if (depth[root] >= 0) {
      continue;
    }
    depth[root] = 0;
    std::queue<size_t> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      size_t u = frontier.front();
      frontier.pop();
      for (auto [w, e] : incident[u]) {
        if (depth[w] < 0) {
          depth[w] = depth[u] + 1;
          parent[w] = static_cast<int>(u);
          parent_edge[w] = static_cast<int>(e);
          in_tree[e] = true;
          frontier.push(w);
        }
      }
    }
  }

  CycleBasisResult res;
  std::vector<size_t> multiplicity(edges.size(), 0);
  for (size_t e = 0; e < edges.size(); e++) {
    if (in_tree[e]) {
      continue;
    }
    size_t u = edges[e].first, v = edges[e].second;
    std::vector<size_t> pu{u}, pv{v}, eu, ev;
    size_t a = u, b = v;
    while (depth[a] > depth[b]) {
      eu.push_back(parent_edge[a]);
      a = parent[a];
      pu.push_back(a);
    }
    while (depth[b] > depth[a]) {
      ev.push_back(parent_edge[b]);
      b = parent[b];
      pv.push_back(b);
    }
    while (a != b) {
      eu.push_back(parent_edge[a]);
      a = parent[a];
      pu.push_back(a);
      ev.push_back(parent_edge[b]);
      b = parent[b];
      pv.push_back(b);
    }
    // pu ends at the meeting vertex, pv too; walk u .. lca .. v and close
    Cycle c;
    c.verts = pu;
    c.edges = eu;
    for (size_t i = pv.size() - 1; i-- > 0;) {
      c.verts.push_back(pv[i]);
      c.edges.push_back(ev[i]);
    }
    c.edges.push_back(e);  // closes verts.back() -> verts.front()
    res.cycles.push_back(c);
    res.total_weight += c.edges.size();
    for (size_t ce : c.edges) {
      multiplicity[ce]++;
      res.max_edge_multiplicity = std::max(res.max_edge_multiplicity, multiplicity[ce]);
    }
  }
  return res;
}

/// A two-dimensional cell complex: a multigraph plus a face list of simple
/// cycles.
struct CellComplex2 {
  size_t n_vertices = 0;
  std::vector<std::pair<size_t, size_t>> edges;
  std::vector<Cycle> faces;

  ChainComplex to_chain() const {
    ChainComplex c;
    c.cells.resize(3);
    for (size_t v = 0; v < n_vertices; v++) {
      c.cells[0].push_back("v" + std::to_string(v));
    }
    for (size_t e = 0; e < edges.size(); e++) {
      c.cells[1].push_back("e" + std::to_string(e));
    }
    for (size_t f = 0; f < faces.size(); f++) {
      c.cells[2].push_back("f" + std::to_string(f));
    }
    BitMatrix d1(n_vertices, edges.size());
    for (size_t e = 0; e < edges.size(); e++) {
      d1.set(edges[e].first, e, true);
      if (edges[e].first != edges[e].second) {
        d1.set(edges[e].second, e, true);
      }
    }
    BitMatrix d2(edges.size(), faces.size());
    for (size_t f = 0; f < faces.size(); f++) {
      for (size_t e : faces[f].edges) {
        d2.set(e, f, true);
      }
    }
    c.boundary = {std::move(d1), std::move(d2)};
    c.validate();
    return c;
  }
};

namespace detail {

inline void validate_face(const CellComplex2& c, const Cycle& f) {
  size_t len = f.verts.size();
  if (len < 2 || f.edges.size() != len) {
    throw std::invalid_argument("cellulate: face is not a cycle");
  }
  std::set<size_t> seen_v(f.verts.begin(), f.verts.end());
  std::set<size_t> seen_e(f.edges.begin(), f.edges.end());
  if (seen_v.size() != len || seen_e.size() != len) {
    throw std::invalid_argument("cellulate: face is not a simple cycle");
  }
  for (size_t i = 0; i < len; i++) {
    auto [a, b] = c.edges.at(f.edges[i]);
    size_t u = f.verts[i], v = f.verts[(i + 1) % len];
    if (!((a == u && b == v) || (a == v && b == u))) {
      throw std::invalid_argument("cellulate: face edges do not match its vertex order");
    }
  }
}

}  // namespace detail

/// Replace every face by a fan of at most-triangular faces over new chord
/// edges (the rungs of a repetition-code ladder folded across the cycle).
/// Face weight drops to at most 3; all three homology dimensions are
/// preserved and the vertex set is untouched.
struct CellulateResult {
  CellComplex2 complex;
  size_t first_rung = 0;                    // edges before this index are original
  std::vector<size_t> rung_face;            // face that spawned each rung (input index)
};

inline CellulateResult cellulate(const CellComplex2& input) {
  CellulateResult res;
  res.complex.n_vertices = input.n_vertices;
  res.complex.edges = input.edges;
  res.first_rung = input.edges.size();
  for (size_t f = 0; f < input.faces.size(); f++) {
    const Cycle& face = input.faces[f];
    detail::validate_face(input, face);
    size_t len = face.verts.size();
    if (len <= 3) {
      res.complex.faces.push_back(face);
      continue;
    }
    // rung j (1-based) joins verts[ceil(j/2)] and verts[len-1-floor(j/2)]
    std::vector<size_t> rung(len - 2);  // rung[j] = edge index of rung j
    for (size_t j = 1; j + 3 <= len; j++) {
      size_t a = face.verts[(j + 1) / 2];
      size_t b = face.verts[len - 1 - j / 2];
      rung[j] = res.complex.edges.size();
      res.complex.edges.push_back({a, b});
      res.rung_face.push_back(f);
    }
    std::vector<bool> used(len, false);
    auto cyc = [&](size_t i) { return face.edges[i]; };
    // first triangle: the two edges at verts[0] plus rung 1
    res.complex.faces.push_back(Cycle{
        {face.verts[len - 1], face.verts[0], face.verts[1]},
        {cyc(len - 1), cyc(0), rung[1]}});
    used[len - 1] = used[0] = true;
    for (size_t j = 2; j + 2 <= len - 1; j++) {
      if (j % 2 == 0) {
        size_t l = j / 2;
        res.complex.faces.push_back(Cycle{
            {face.verts[l], face.verts[len - l], face.verts[len - l - 1]},
            {rung[j - 1], cyc(len - l - 1), rung[j]}});
        used[len - l - 1] = true;
      } else {
        size_t l = (j - 1) / 2;
        res.complex.faces.push_back(Cycle{
            {face.verts[len - l - 1], face.verts[l], face.verts[l + 1]},
            {rung[j - 1], cyc(l), rung[j]}});
        used[l] = true;
      }
    }
    // the last face absorbs the two uncovered cycle edges
    std::vector<size_t> rest;
    for (size_t i = 0; i < len; i++) {
      if (!used[i]) {
        rest.push_back(i);
      }
    }
    if (rest.size() != 2 || rest[0] + 1 != rest[1]) {
      throw std::logic_error("cellulate: unexpected leftover edges");
    }
    size_t s = rest[0];
    res.complex.faces.push_back(Cycle{
        {face.verts[s], face.verts[s + 1], face.verts[s + 2]},
        {cyc(s), cyc(s + 1), rung[len - 3]}});
  }
  return res;
}

/// Everything built for one coned Z-check: its pairing graph, cycle basis,
/// per-face heights, and the thickened, cellulated complex with the
/// bookkeeping needed to glue it into the code.
struct ConingComplex {
  size_t z = 0;
  ZGraph graph;
  CycleBasisResult basis;
  size_t height = 1;
  std::vector<int> face_heights;
  CellComplex2 cellulated;
  std::vector<size_t> vertex_qubit;  // per vertex of `cellulated`
  std::vector<int> vertex_level;     // 1-based height
  std::vector<long> edge_x;          // generating X-check of level-1 pairing edges, else -1
};

inline ConingComplex build_coning_complex(const CssCode& code, size_t z) {
  ConingComplex cc;
  cc.z = z;
  cc.graph = build_z_graph(code, z);
  std::vector<std::pair<size_t, size_t>> plain_edges;
  for (const auto& e : cc.graph.edges) {
    plain_edges.push_back({e.u, e.v});
  }
  cc.basis = cycle_basis(cc.graph.qubits.size(), plain_edges);

  // conflict graph of the basis cycles: cycles sharing an edge go to
  // different heights
  Graph conflicts(cc.basis.cycles.size());
  std::map<size_t, std::vector<size_t>> cycles_at_edge;
  for (size_t f = 0; f < cc.basis.cycles.size(); f++) {
    for (size_t e : cc.basis.cycles[f].edges) {
      cycles_at_edge[e].push_back(f);
    }
  }
  for (const auto& [e, fs] : cycles_at_edge) {
    conflicts.add_clique(fs);
  }
  auto [heights, chi] = greedy_coloring(conflicts);
  cc.face_heights = heights;
  cc.height = std::max(chi, 1);

  size_t nv = cc.graph.qubits.size(), ne = cc.graph.edges.size(), h = cc.height;
  CellComplex2 thick;
  thick.n_vertices = nv * h;
  auto vert = [&](size_t l, size_t v) { return (l - 1) * nv + v; };
  auto horiz = [&](size_t l, size_t e) { return (l - 1) * ne + e; };
  auto vertical = [&](size_t l, size_t v) { return h * ne + (l - 1) * nv + v; };
  cc.vertex_qubit.resize(thick.n_vertices);
  cc.vertex_level.resize(thick.n_vertices);
  for (size_t l = 1; l <= h; l++) {
    for (size_t v = 0; v < nv; v++) {
      cc.vertex_qubit[vert(l, v)] = cc.graph.qubits[v];
      cc.vertex_level[vert(l, v)] = static_cast<int>(l);
    }
  }
  for (size_t l = 1; l <= h; l++) {
    for (size_t e = 0; e < ne; e++) {
      thick.edges.push_back({vert(l, cc.graph.edges[e].u), vert(l, cc.graph.edges[e].v)});
      cc.edge_x.push_back(l == 1 ? static_cast<long>(cc.graph.edges[e].x) : -1);
    }
  }
  for (size_t l = 1; l + 1 <= h; l++) {
    for (size_t v = 0; v < nv; v++) {
      thick.edges.push_back({vert(l, v), vert(l + 1, v)});
      cc.edge_x.push_back(-1);
    }
  }
  // faces: each basis cycle at its height, plus one tube face per edge and
  // neighbouring level pair
  for (size_t f = 0; f < cc.basis.cycles.size(); f++) {
    const Cycle& cyc = cc.basis.cycles[f];
    size_t l = cc.face_heights[f];
    Cycle lifted;
    for (size_t v : cyc.verts) {
      lifted.verts.push_back(vert(l, v));
    }
    for (size_t e : cyc.edges) {
      lifted.edges.push_back(horiz(l, e));
    }
    thick.faces.push_back(lifted);
  }
  for (size_t l = 1; l + 1 <= h; l++) {
    for (size_t e = 0; e < ne; e++) {
      size_t u = cc.graph.edges[e].u, v = cc.graph.edges[e].v;
      thick.faces.push_back(Cycle{
          {vert(l, u), vert(l, v), vert(l + 1, v), vert(l + 1, u)},
          {horiz(l, e), vertical(l, v), horiz(l + 1, e), vertical(l, u)}});
    }
  }

  CellulateResult cellulated = cellulate(thick);
  cc.cellulated = cellulated.complex;
  cc.edge_x.resize(cc.cellulated.edges.size(), -1);  // rungs carry no X-check
  return cc;
}

struct ConeResult {
  CssCode code;
  std::vector<ConingComplex> cones;
  std::vector<size_t> kept;  // Z-checks left as plain generators
};

/// Replace each listed Z-check by its thickened, cellulated pairing complex:
/// vertices become the new Z-type generators (touching the original qubit at
/// level 1), edges become ancilla qubits, faces become new X-checks.
inline ConeResult cone(const CssCode& input, const std::vector<size_t>& zs,
                       size_t threshold = default_reasonableness_threshold(),
                       bool verify_reasonable = true) {
  input.validate();
  if (verify_reasonable) {
    ReasonablenessReport rep = check_z_reasonable(input, zs, threshold);
    if (!rep.reasonable) {
      throw ReasonablenessError("cone: " + describe_violation(rep));
    }
  }

  ConeResult res;
  std::set<size_t> coned(zs.begin(), zs.end());
  for (size_t z = 0; z < input.hz.rows; z++) {
    if (!coned.count(z)) {
      res.kept.push_back(z);
    }
  }
  for (size_t z : zs) {
    res.cones.push_back(build_coning_complex(input, z));
  }

  size_t nq = input.n, nx = input.hx.rows;
  size_t n_out = nq, n_zchecks = res.kept.size(), n_xchecks = nx;
  std::vector<size_t> edge_off, vert_off, face_off;
  for (const auto& cc : res.cones) {
    edge_off.push_back(n_out);
    n_out += cc.cellulated.edges.size();
    vert_off.push_back(n_zchecks);
    n_zchecks += cc.cellulated.n_vertices;
    face_off.push_back(n_xchecks);
    n_xchecks += cc.cellulated.faces.size();
  }

  BitMatrix hz(n_zchecks, n_out);
  for (size_t i = 0; i < res.kept.size(); i++) {
    for (size_t q : input.hz.row(res.kept[i]).support()) {
      hz.set(i, q, true);
    }
  }
  for (size_t c = 0; c < res.cones.size(); c++) {
    const auto& cc = res.cones[c];
    for (size_t e = 0; e < cc.cellulated.edges.size(); e++) {
      auto [u, v] = cc.cellulated.edges[e];
      hz.set(vert_off[c] + u, edge_off[c] + e, true);
      hz.set(vert_off[c] + v, edge_off[c] + e, true);
    }
    for (size_t v = 0; v < cc.cellulated.n_vertices; v++) {
      if (cc.vertex_level[v] == 1) {
        hz.set(vert_off[c] + v, cc.vertex_qubit[v], true);
      }
    }
  }

  BitMatrix hx(n_xchecks, n_out);
  for (size_t x = 0; x < nx; x++) {
    for (size_t q : input.hx.row(x).support()) {
      hx.set(x, q, true);
    }
  }
  for (size_t c = 0; c < res.cones.size(); c++) {
    const auto& cc = res.cones[c];
    for (size_t f = 0; f < cc.cellulated.faces.size(); f++) {
      for (size_t e : cc.cellulated.faces[f].edges) {
        hx.set(face_off[c] + f, edge_off[c] + e, true);
      }
    }
    for (size_t e = 0; e < cc.cellulated.edges.size(); e++) {
      if (cc.edge_x[e] >= 0) {
        hx.set(static_cast<size_t>(cc.edge_x[e]), edge_off[c] + e, true);
      }
    }
  }

  res.code = CssCode(hx, hz);
  res.code.validate();
  return res;
}

/// One stage of the pipeline as seen in the reference orientation.
struct StageProfile {
  std::string name;
  size_t n = 0, k = 0;
  HastingsProfile weights;
};

struct PipelineResult {
  CssCode output;
  std::vector<StageProfile> stages;
  ReasonablenessReport input_reasonable;
  ReasonablenessReport cone_reasonable;
};

/// X-reduction, Z-thickening, then coning of the surviving original Z-checks.
/// Reasonableness is verified by brute force on the input and again on the
/// thickened code before coning.
inline PipelineResult hastings_pipeline(const CssCode& input,
                                        size_t threshold = default_reasonableness_threshold()) {
  input.validate();
  PipelineResult res;
  auto record = [&res](const std::string& name, const CssCode& code) {
    res.stages.push_back({name, code.n, code.logical_dimension(), hastings_profile(code)});
  };
  record("input", input);

  res.input_reasonable = check_z_reasonable(input, all_z_checks(input), threshold);
  if (!res.input_reasonable.reasonable) {
    throw ReasonablenessError("hastings_pipeline: input is not Z-type reasonable: " +
                              describe_violation(res.input_reasonable));
  }

  XReduceResult reduced = x_reduce(input);
  record("x_reduce", reduced.code);

  ZThickenResult thickened = z_thicken(reduced.code);
  record("z_thicken", thickened.code);

  // The surviving original Z-checks are the leading rows of the thickened hz.
  // Their reasonableness follows from the input's: X-reduction preserves it
  // and Z-thickening preserves it relative to the original Z-checks. Verify
  // by brute force where the supports permit, otherwise rely on that
  // inheritance (the final logical dimension is still rank-checked).
  std::vector<size_t> zs;
  for (size_t z = 0; z < input.hz.rows; z++) {
    zs.push_back(z);
  }
  bool verified = true;
  try {
    res.cone_reasonable = check_z_reasonable(thickened.code, zs, threshold);
  } catch (const ThresholdExceeded&) {
    verified = false;
    res.cone_reasonable = res.input_reasonable;
    res.cone_reasonable.method = "inherited";
  }
  if (verified && !res.cone_reasonable.reasonable) {
    throw ReasonablenessError("hastings_pipeline: thickened code lost reasonableness");
  }
  ConeResult coned = cone(thickened.code, zs, threshold, verified);
  record("cone", coned.code);

  res.output = coned.code;
  return res;
}

}  // namespace layerwr
