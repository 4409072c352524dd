#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "layerwr/coloring.hpp"
#include "layerwr/hgp.hpp"

using namespace layerwr;

TEST_CASE("induced graphs of the three-qubit code") {
  auto g = build_induced_graphs(fixtures::tri());
  CHECK(g.gx.n == 1);
  CHECK(g.gx.edge_count() == 0);
  CHECK(g.gz.n == 1);
  CHECK(g.gz.edge_count() == 0);
  CHECK(g.gq.n == 3);
  CHECK(g.gq.edge_count() == 3);  // triangle via the weight-3 Z-check
}

TEST_CASE("induced graphs of Shor") {
  auto g = build_induced_graphs(fixtures::shor());

  // the first X-check turns qubits 0..5 into a clique, the second 3..8
  for (size_t i = 0; i < 6; i++) {
    for (size_t j = i + 1; j < 6; j++) {
      CHECK(g.gq.has_edge(i, j));
    }
  }
  for (size_t i = 3; i < 9; i++) {
    for (size_t j = i + 1; j < 9; j++) {
      CHECK(g.gq.has_edge(i, j));
    }
  }
  CHECK(!g.gq.has_edge(0, 6));

  // z0 and z2 both overlap the first X-check, so they collide; z0..z3 form a
  // clique and the Z graph needs at least four colors
  CHECK(g.gz.has_edge(0, 2));
  for (size_t i = 0; i < 4; i++) {
    for (size_t j = i + 1; j < 4; j++) {
      CHECK(g.gz.has_edge(i, j));
    }
  }
  auto [colors, chi] = greedy_coloring(g.gz);
  CHECK(chi >= 4);

  // both X-checks share qubits
  CHECK(g.gx.has_edge(0, 1));
}

TEST_CASE("single X-check, no Z-checks") {
  CssCode code(BitMatrix::from_rows(4, {{0, 1, 2, 3}}), BitMatrix(0, 4));
  auto g = build_induced_graphs(code);
  CHECK(g.gx.n == 1);
  CHECK(g.gz.n == 0);
  CHECK(g.gq.edge_count() == 6);
}

TEST_CASE("greedy coloring basics") {
  Graph triangle(3);
  triangle.add_clique({0, 1, 2});
  auto [tc, tchi] = greedy_coloring(triangle);
  CHECK(tchi == 3);
  CHECK(tchi <= static_cast<int>(triangle.max_degree()) + 1);

  Graph edgeless(5);
  auto [ec, echi] = greedy_coloring(edgeless);
  CHECK(echi == 1);

  Graph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  auto [pc, pchi] = greedy_coloring(path, {0, 1, 2});
  CHECK(pc == std::vector<int>{1, 2, 1});
}

TEST_CASE("the worked Shor coloring validates") {
  auto rep = validate_coloring(fixtures::shor(), fixtures::shor_coloring());
  CHECK(rep.cond1);
  CHECK(rep.cond2);
  CHECK(rep.cond3);
  CHECK(rep.cond4);
  CHECK(rep.valid());
}

TEST_CASE("proper colorings of the induced graphs always validate") {
  auto shor = fixtures::shor();
  auto coloring = color_from_graphs(build_induced_graphs(shor));
  CHECK(coloring.chi_z >= 4);
  CHECK(validate_coloring(shor, coloring).valid());

  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 8; trial++) {
    auto code = random_hypergraph_product(rng());
    auto c = color_from_graphs(build_induced_graphs(code));
    auto rep = validate_coloring(code, c);
    INFO(rep.summary());
    CHECK(rep.valid());
  }
}

TEST_CASE("constant qubit coloring is rejected") {
  auto tri = fixtures::tri();
  Coloring c = fixtures::tri_coloring();
  c.eta_q = {1, 1, 1};
  auto rep = validate_coloring(tri, c);
  CHECK(!rep.valid());
  CHECK(!rep.cond1);
  CHECK(!rep.cond2);
}

TEST_CASE("chi bounds are reported against the graph degree") {
  auto g = build_induced_graphs(fixtures::shor());
  auto [cx, chix] = greedy_coloring(g.gx);
  auto [cz, chiz] = greedy_coloring(g.gz);
  CHECK(chix <= static_cast<int>(g.gx.max_degree()) + 1);
  CHECK(chiz <= static_cast<int>(g.gz.max_degree()) + 1);
}

TEST_CASE("splitting an X or Z color class preserves validity") {
  auto shor = fixtures::shor();
  Coloring c = fixtures::shor_coloring();
  REQUIRE(validate_coloring(shor, c).valid());

  // send z2 (currently sharing color 1 with z0, z4) to a fresh color
  Coloring split = c;
  split.eta_z[2] = 3;
  split.chi_z = 3;
  CHECK(validate_coloring(shor, split).valid());

  Coloring split_x = c;
  split_x.eta_x[1] = 3;
  split_x.chi_x = 3;
  CHECK(validate_coloring(shor, split_x).valid());
}
