#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "layerwr/gf2.hpp"

using namespace layerwr;

namespace {

BitMatrix random_matrix(size_t rows, size_t cols, std::mt19937_64& rng, double density = 0.4) {
  BitMatrix m(rows, cols);
  for (size_t i = 0; i < rows; i++) {
    for (size_t j = 0; j < cols; j++) {
      if ((rng() % 1000) < density * 1000) {
        m.set(i, j, true);
      }
    }
  }
  return m;
}

}  // namespace

TEST_CASE("rank of simple matrices") {
  CHECK(rank(BitMatrix::identity(3)) == 3);
  CHECK(rank(BitMatrix::from_rows(5, {{0, 1, 2, 3, 4}})) == 1);
  CHECK(rank(fixtures::shor().hx) == 2);
  CHECK(rank(BitMatrix(4, 7)) == 0);
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(BitMatrix::identity(2)).empty());

  auto parity = BitMatrix::from_rows(3, {{0, 1, 2}});
  auto basis = kernel_basis(parity);
  REQUIRE(basis.size() == 2);
  for (const auto& v : basis) {
    CHECK(v.weight() % 2 == 0);
    CHECK(mat_vec(parity, v).is_zero());
  }

  // Hz of the three-qubit fixture: the full kernel has 4 elements, the two
  // basis vectors must be independent even-weight vectors.
  auto hz = fixtures::tri().hz;
  auto kb = kernel_basis(hz);
  REQUIRE(kb.size() == 2);
  CHECK(!(kb[0] == kb[1]));
  for (const auto& v : kb) {
    CHECK(mat_vec(hz, v).is_zero());
    CHECK(v.weight() == 2);
  }
}

TEST_CASE("solve") {
  BitVector b(3);
  b.set(1, true);
  auto x = solve(BitMatrix::identity(3), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  BitVector nonzero(2);
  nonzero.set(0, true);
  CHECK(!solve(BitMatrix(2, 4), nonzero).has_value());

  auto ones = BitMatrix::from_rows(3, {{0, 1, 2}});
  BitVector one(1);
  one.set(0, true);
  auto y = solve(ones, one);
  REQUIRE(y.has_value());
  CHECK(y->weight() % 2 == 1);
  CHECK(mat_vec(ones, *y) == one);
}

TEST_CASE("mat_mul") {
  std::mt19937_64 rng(7);
  auto b = random_matrix(4, 6, rng);
  CHECK(mat_mul(BitMatrix::identity(4), b) == b);
  CHECK(mat_mul(b, BitMatrix(6, 3)).is_zero());

  auto shor = fixtures::shor();
  CHECK(mat_mul(shor.hz, shor.hx.transposed()).is_zero());

  CHECK_THROWS_AS(mat_mul(BitMatrix(2, 3), BitMatrix(4, 2)), std::invalid_argument);
}

TEST_CASE("rank properties on random matrices") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 25; trial++) {
    size_t rows = 1 + rng() % 10, cols = 1 + rng() % 10;
    auto m = random_matrix(rows, cols, rng);
    size_t r = rank(m);
    CHECK(r == rank(m.transposed()));
    CHECK(cols == r + kernel_basis(m).size());
    for (const auto& v : kernel_basis(m)) {
      CHECK(mat_vec(m, v).is_zero());
    }
  }
}

TEST_CASE("solve result verifies") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; trial++) {
    auto m = random_matrix(1 + rng() % 8, 1 + rng() % 8, rng);
    BitVector b(m.rows);
    for (size_t i = 0; i < b.length; i++) {
      b.set(i, rng() & 1);
    }
    auto x = solve(m, b);
    if (x) {
      CHECK(mat_vec(m, *x) == b);
    } else {
      // cross-check absence with a rank argument
      BitMatrix aug = hstack(m, BitMatrix::from_entries(m.rows, 1, {}));
      for (size_t i = 0; i < b.length; i++) {
        aug.set(i, m.cols, b.get(i));
      }
      CHECK(rank(aug) == rank(m) + 1);
    }
  }
}

TEST_CASE("mat_mul associativity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 15; trial++) {
    size_t a = 1 + rng() % 6, b = 1 + rng() % 6, c = 1 + rng() % 6, d = 1 + rng() % 6;
    auto m1 = random_matrix(a, b, rng);
    auto m2 = random_matrix(b, c, rng);
    auto m3 = random_matrix(c, d, rng);
    CHECK(mat_mul(mat_mul(m1, m2), m3) == mat_mul(m1, mat_mul(m2, m3)));
  }
}

TEST_CASE("solve_many matches solve") {
  std::mt19937_64 rng(19);
  auto m = random_matrix(6, 9, rng);
  BitMatrix rhs = random_matrix(6, 5, rng);
  SolveMany sm = solve_many(m, rhs);
  for (size_t j = 0; j < rhs.cols; j++) {
    auto single = solve(m, rhs.col(j));
    CHECK(sm.ok[j] == single.has_value());
    if (single) {
      CHECK(sm.solutions.col(j) == *single);
    }
  }
}
