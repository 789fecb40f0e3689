#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "galcoh/errors.hpp"
#include "galcoh/linalg.hpp"
#include "oracles.hpp"

using namespace galcoh;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

bool is_smith_form(const IntMatrix& s, std::size_t rank) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) {
    if (s(i, i) < 0) return false;
    if ((i < rank) != (s(i, i) != 0)) return false;
    if (i + 1 < rank && s(i + 1, i + 1) % s(i, i) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("smith form of a small diagonal") {
  const auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  CHECK(s.diagonal() == IntVector{1, 6});
  CHECK(s.U * IntMatrix{{2, 0}, {0, 3}} * s.V == s.S);
}

TEST_CASE("smith form edge shapes") {
  CHECK(smith_normal_form(IntMatrix(0, 3)).rank == 0);
  CHECK(smith_normal_form(IntMatrix(2, 2)).rank == 0);
  const IntMatrix row{{6, 10, 15}};
  CHECK(smith_normal_form(row).diagonal() == IntVector{1});
  const IntMatrix col{{4}, {-6}};
  CHECK(smith_normal_form(col).diagonal() == IntVector{2});
}

TEST_CASE("invariant factors agree with gcds of minors") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix a = random_matrix(rng, r, c, t % 2 ? 6 : 40);
    const auto s = smith_normal_form(a);
    const auto expected = oracle::minor_gcd_invariants(a);
    REQUIRE(s.rank == expected.size());
    const IntVector d = s.diagonal();
    for (std::size_t i = 0; i < s.rank; ++i) CHECK(d[i] == expected[i]);
  }
}

TEST_CASE("transforms are unimodular and diagonalize") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    IntMatrix a = random_matrix(rng, r, c, 100);
    if (t % 5 == 0 && r > 1)  // force a dependency
      for (std::size_t j = 0; j < c; ++j) a(r - 1, j) = 3 * a(0, j);
    const auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.S);
    CHECK(s.U * s.U_inv == IntMatrix::identity(r));
    CHECK(s.V * s.V_inv == IntMatrix::identity(c));
    CHECK(is_smith_form(s.S, s.rank));
  }
}

TEST_CASE("determinant against cofactor expansion") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 5;
    const IntMatrix a = random_matrix(rng, n, n, 9);
    std::vector<std::vector<Int>> rows(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
    CHECK(determinant(a) == oracle::cofactor_determinant(rows));
  }
}

TEST_CASE("kernel basis is saturated and spans the kernel") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 6;
    const IntMatrix a = random_matrix(rng, r, c, 5);
    const auto ker = kernel_basis(a);
    const std::size_t rank = smith_normal_form(a).rank;
    CHECK(ker.size() == c - rank);
    for (const auto& v : ker) CHECK(a.apply(v) == IntVector(r));
    if (!ker.empty()) {
      // Saturated: the kernel matrix has all invariant factors 1.
      const auto s = smith_normal_form(IntMatrix::from_columns(ker, c));
      for (const auto& d : s.diagonal()) CHECK(d == 1);
    }
  }
}

TEST_CASE("cokernel structure") {
  const auto z6 = cokernel_structure(IntMatrix{{2, 0}, {0, 3}});
  CHECK(z6.free_rank == 0);
  CHECK(z6.torsion == IntVector{6});
  CHECK(z6.order() == 6);
  const auto mixed = cokernel_structure(IntMatrix{{2}, {0}});
  CHECK(mixed.free_rank == 1);
  CHECK(mixed.order() == 0);
  CHECK(cokernel_structure(IntMatrix::identity(3)).is_trivial());
}

TEST_CASE("solve finds integral solutions only") {
  const IntMatrix a{{2, 0}, {0, 4}};
  CHECK(solve(a, IntVector{2, 8}) == IntVector{1, 2});
  CHECK_FALSE(solve(a, IntVector{1, 0}).has_value());
}

TEST_CASE("subquotient coordinates") {
  // Z^2 / <(2, 0), (0, 3)> = Z/6.
  const Subquotient q(IntMatrix::identity(2), IntMatrix{{2, 0}, {0, 3}});
  CHECK(q.invariants() == IntVector{6});
  const auto g = q.coordinates(q.generator(0));
  REQUIRE(g.has_value());
  CHECK(*g == IntVector{1});
  CHECK(q.coordinates(IntVector{2, 3}) == IntVector{0});
}
