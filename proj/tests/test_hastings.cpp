#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "layerwr/hastings.hpp"
#include "layerwr/hgp.hpp"

using namespace layerwr;

TEST_CASE("x_reduce on the three-qubit code") {
  auto res = x_reduce(fixtures::tri());
  CHECK(res.code.n == 4);
  CHECK(rank(res.code.hz) == 1);
  CHECK(rank(res.code.hx) == 2);
  CHECK(res.code.logical_dimension() == 1);
}

TEST_CASE("x_reduce on Shor") {
  auto shor = fixtures::shor();
  auto res = x_reduce(shor);
  CHECK(res.code.logical_dimension() == 1);
  auto p = hastings_profile(res.code);
  CHECK(p.wx <= 3);
  CHECK(p.qx <= 3);
}

TEST_CASE("x_reduce with no X-checks returns the input") {
  CssCode code(BitMatrix(0, 5), BitMatrix::from_rows(5, {{0, 1}, {2, 3, 4, 1}}));
  auto res = x_reduce(code);
  CHECK(res.code.n == 5);
  CHECK(res.code.hz == code.hz);
  CHECK(res.code.hx.rows == 0);
}

TEST_CASE("z_thicken") {
  auto tri = z_thicken(fixtures::tri());
  CHECK(tri.height == 1);
  CHECK(tri.code.n == 3);
  CHECK(tri.code.logical_dimension() == 1);

  auto shor = z_thicken(fixtures::shor());
  CHECK(shor.height == 2);  // pairs of Z-checks collide on the middle qubits
  CHECK(shor.code.logical_dimension() == 1);

  // thickened profile: the height map is injective at each qubit, so each
  // copied qubit sees at most one original Z-check
  auto p = hastings_profile(shor.code);
  auto in = hastings_profile(fixtures::shor());
  CHECK(p.wz <= std::max<size_t>(in.wz, in.qx + 2));
  CHECK(p.qz <= std::max<size_t>(3, in.wx));
  CHECK(p.qx <= std::max<size_t>(in.qx, 2));
  CHECK(p.wx <= in.wx + 2);

  auto pt = hastings_profile(x_reduce(fixtures::tri()).code);
  auto tt = z_thicken(x_reduce(fixtures::tri()).code);
  auto ptt = hastings_profile(tt.code);
  CHECK(ptt.wz <= std::max<size_t>(pt.wz, pt.qx + 2));
  CHECK(ptt.qx <= std::max<size_t>(pt.qx, 2));
}

TEST_CASE("reasonableness checks") {
  CHECK(check_z_reasonable(fixtures::shor(), all_z_checks(fixtures::shor())).reasonable);
  CHECK(check_z_reasonable(fixtures::steane(), all_z_checks(fixtures::steane())).reasonable);

  // a bare two-qubit Z-check hides the weight-1 logical Z on either qubit
  CssCode toy(BitMatrix(0, 2), BitMatrix::from_rows(2, {{0, 1}}));
  auto rep = check_z_reasonable(toy, {0});
  CHECK(!rep.reasonable);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations[0].second.weight() == 1);

  CssCode wide(BitMatrix(0, 30), BitMatrix::from_rows(30, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9,
                                                            10, 11, 12, 13, 14, 15, 16, 17,
                                                            18, 19, 20, 21, 22, 23}}));
  CHECK_THROWS_AS(check_z_reasonable(wide, {0}), ThresholdExceeded);
}

TEST_CASE("pairing graphs") {
  auto shor = fixtures::shor();
  auto g0 = build_z_graph(shor, 0);  // Z on qubits 0,1; X-check 0 covers both
  CHECK(g0.qubits == std::vector<size_t>{0, 1});
  REQUIRE(g0.edges.size() == 1);
  CHECK(g0.edges[0].x == 0);
  CHECK(g0.components.size() == 1);

  auto tri = fixtures::tri();
  auto gt = build_z_graph(tri, 0);
  CHECK(gt.qubits.size() == 3);
  REQUIRE(gt.edges.size() == 1);
  CHECK(gt.components.size() == 2);  // q2 is isolated

  // a Z-check disjoint from every X-check gives an edgeless graph
  CssCode disjoint(BitMatrix::from_rows(4, {{0, 1}}), BitMatrix::from_rows(4, {{2, 3}}));
  auto gd = build_z_graph(disjoint, 0);
  CHECK(gd.edges.empty());
  CHECK(gd.components.size() == 2);
}

TEST_CASE("cycle basis") {
  // a tree has no cycles
  CHECK(cycle_basis(4, {{0, 1}, {1, 2}, {1, 3}}).cycles.empty());

  auto tri = cycle_basis(3, {{0, 1}, {1, 2}, {2, 0}});
  REQUIRE(tri.cycles.size() == 1);
  CHECK(tri.cycles[0].verts.size() == 3);
  CHECK(tri.total_weight == 3);

  // 4-cycle with a chord: two fundamental cycles, the chord used at most twice
  auto chord = cycle_basis(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  CHECK(chord.cycles.size() == 2);
  CHECK(chord.max_edge_multiplicity <= 2);

  // parallel edges close a 2-cycle
  auto bigon = cycle_basis(2, {{0, 1}, {0, 1}});
  REQUIRE(bigon.cycles.size() == 1);
  CHECK(bigon.cycles[0].verts.size() == 2);
}

namespace {

CellComplex2 polygon(size_t n) {
  CellComplex2 c;
  c.n_vertices = n;
  Cycle face;
  for (size_t i = 0; i < n; i++) {
    c.edges.push_back({i, (i + 1) % n});
    face.verts.push_back(i);
    face.edges.push_back(i);
  }
  c.faces.push_back(face);
  return c;
}

}  // namespace

TEST_CASE("cellulate polygons") {
  for (size_t n : {3, 4, 5, 6, 7, 8, 11}) {
    CAPTURE(n);
    auto before = polygon(n).to_chain();
    auto res = cellulate(polygon(n));
    auto after = res.complex.to_chain();
    CHECK(after.d2().max_col_weight() <= 3);
    for (size_t level = 0; level <= 2; level++) {
      CHECK(after.homology_dim(level) == before.homology_dim(level));
    }
    if (n > 3) {
      CHECK(res.complex.faces.size() == n - 2);
      CHECK(res.complex.edges.size() == 2 * n - 3);
    }
  }

  // triangles pass through unchanged, as does an empty face list
  auto tri = cellulate(polygon(3));
  CHECK(tri.complex.edges.size() == 3);
  CHECK(tri.complex.faces.size() == 1);

  CellComplex2 bare;
  bare.n_vertices = 4;
  bare.edges = {{0, 1}, {2, 3}};
  auto none = cellulate(bare);
  CHECK(none.complex.faces.empty());
  CHECK(none.complex.edges.size() == 2);

  CellComplex2 bad = polygon(4);
  bad.faces[0].verts[2] = 0;  // repeated vertex
  CHECK_THROWS_AS(cellulate(bad), std::invalid_argument);
}

TEST_CASE("cellulate preserves homology on random cycle complexes") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; trial++) {
    size_t n = 4 + rng() % 6;
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t v = 1; v < n; v++) {
      edges.push_back({rng() % v, v});  // random spanning tree
    }
    for (size_t extra = rng() % 5; extra > 0; extra--) {
      size_t u = rng() % n, v = rng() % n;
      if (u != v) {
        edges.push_back({u, v});
      }
    }
    CellComplex2 complex;
    complex.n_vertices = n;
    complex.edges = edges;
    complex.faces = cycle_basis(n, edges).cycles;

    auto before = complex.to_chain();
    auto after = cellulate(complex).complex.to_chain();
    CHECK(after.d2().max_col_weight() <= 3);
    for (size_t level = 0; level <= 2; level++) {
      CHECK(after.homology_dim(level) == before.homology_dim(level));
    }
  }
}

TEST_CASE("coning keeps the logical subspace") {
  auto steane = fixtures::steane();
  auto cs = cone(steane, all_z_checks(steane));
  CHECK(cs.code.logical_dimension() == 1);

  auto shor = fixtures::shor();
  auto csh = cone(shor, all_z_checks(shor));
  CHECK(csh.code.logical_dimension() == 1);

  // empty selection is the identity
  auto nothing = cone(shor, {});
  CHECK(nothing.code.hx == shor.hx);
  CHECK(nothing.code.hz == shor.hz);

  // Image of the Z-boundary is preserved as a subspace: restricted to the
  // original qubit columns, every original Z-check is the sum of its
  // component checks, so stacking the originals on the restricted rows must
  // not raise the rank.
  BitMatrix orig_cols(csh.code.hz.rows, shor.n);
  for (size_t r = 0; r < csh.code.hz.rows; r++) {
    for (size_t q = 0; q < shor.n; q++) {
      orig_cols.set(r, q, csh.code.hz.get(r, q));
    }
  }
  CHECK(rank(vstack(shor.hz, orig_cols)) == rank(orig_cols));

  // an unreasonable selection is rejected
  CssCode toy(BitMatrix(0, 2), BitMatrix::from_rows(2, {{0, 1}}));
  CHECK_THROWS_AS(cone(toy, {0}), ReasonablenessError);
}

TEST_CASE("full pipeline on the named fixtures") {
  for (auto code : {fixtures::steane(), fixtures::shor()}) {
    auto res = hastings_pipeline(code);
    CHECK(res.output.logical_dimension() == code.logical_dimension());
    auto p = hastings_profile(res.output);
    CHECK(p.wz <= 36);
    CHECK(p.qz <= 3);
    CHECK(p.wx <= 42);
    CHECK(p.qx <= 4);
    for (const auto& stage : res.stages) {
      CHECK(stage.k == 1);
    }
  }
}

TEST_CASE("pipeline on small hypergraph products") {
  std::mt19937_64 rng(555);
  int completed = 0;
  for (int trial = 0; trial < 12 && completed < 4; trial++) {
    auto code = random_hypergraph_product(rng());
    size_t k_in = code.logical_dimension();
    try {
      auto res = hastings_pipeline(code);
      CHECK(res.output.logical_dimension() == k_in);
      for (const auto& stage : res.stages) {
        CHECK(stage.k == k_in);
      }
      completed++;
    } catch (const ReasonablenessError&) {
      // rejected inputs are a legitimate outcome; coning requires reasonableness
    } catch (const ThresholdExceeded&) {
      // intermediate supports can outgrow the brute-force cap
    }
  }
  CHECK(completed >= 2);
}
