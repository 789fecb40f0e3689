#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "galcoh/errors.hpp"
#include "galcoh/module.hpp"
#include "galcoh/samples.hpp"

using namespace galcoh;

TEST_CASE("cyclic group layout") {
  const auto g = FiniteGroup::cyclic(6);
  CHECK(g->order() == 6);
  CHECK(g->mul(4, 5) == 3);
  CHECK(g->inverse(2) == 4);
  CHECK(g->cyclic_generator() == 1);
  CHECK(g->element_order(2) == 3);
}

TEST_CASE("subgroup counts of the test groups") {
  // Known lattice sizes.
  CHECK(all_subgroups(FiniteGroup::cyclic(12)).size() == 6);
  CHECK(all_subgroups(symmetric_group_3()).size() == 6);
  CHECK(all_subgroups(dihedral_group(4)).size() == 10);
  CHECK(all_subgroups(quaternion_group()).size() == 6);
  CHECK(all_subgroups(alternating_group_4()).size() == 10);
  const auto v4 = FiniteGroup::direct_product(*FiniteGroup::cyclic(2), *FiniteGroup::cyclic(2));
  CHECK(all_subgroups(v4).size() == 5);
  CHECK(v4->cyclic_generator() == -1);
}

TEST_CASE("coset action is a permutation action") {
  for (const auto& g : test_groups())
    for (const auto& h : all_subgroups(g)) {
      CHECK(h.index() * h.elements().size() == g->order());
      for (std::size_t x = 0; x < g->order(); ++x)
        for (std::size_t i = 0; i < h.index(); ++i) {
          const auto [j, hh] = h.act_on_coset(x, i);
          CHECK(h.contains(hh));
          CHECK(g->mul(x, h.representatives()[i]) == g->mul(h.representatives()[j], hh));
        }
    }
}

TEST_CASE("invalid tables are rejected") {
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {0, 1}}), InvalidInput);
  CHECK_THROWS_AS(Subgroup(FiniteGroup::cyclic(4), {0, 1}), InvalidInput);
}

TEST_CASE("module axioms are checked") {
  const auto g = FiniteGroup::cyclic(2);
  // The generator acting by 2 is not invertible.
  CHECK_THROWS_AS(GModule(g, FpAbGroup::free(1), {IntMatrix{{1}}, IntMatrix{{2}}}), InvalidInput);
  // Acting by -1 is fine, and trivially so on Z/2.
  CHECK_NOTHROW(GModule(g, FpAbGroup::cyclic_sum({2}), {IntMatrix{{1}}, IntMatrix{{-1}}}));
}

TEST_CASE("picard lattice of the conic bundle") {
  const auto m = chatelet_picard_module(FiniteGroup::cyclic(2));
  CHECK(m.rank() == 2);
  CHECK(m.action(1) == Int(-1) * IntMatrix::identity(2));
}

TEST_CASE("permutation and induced modules") {
  const auto g = symmetric_group_3();
  for (const auto& h : all_subgroups(g)) {
    const auto perm = permutation_module(h);
    CHECK(perm.rank() == h.index());
    const auto ind = induce_module(trivial_module(h.group(), 1), h);
    CHECK(ind.rank() == h.index());
  }
}

TEST_CASE("hom module round trip") {
  const auto g = FiniteGroup::cyclic(4);
  const auto m = sign_module(Subgroup::generated_by(g, {2}));
  const auto n = trivial_module(g, FpAbGroup::cyclic_sum({4}));
  const HomModule hom(m, n);
  // Hom(Z, Z/4) = Z/4.
  CHECK(hom.module().coeffs().structure().torsion == IntVector{4});
  const IntMatrix f{{3}};
  CHECK(hom.matrix_of(hom.coordinates_of(f)) == f);
}

TEST_CASE("random modules are valid and bounded") {
  std::mt19937_64 rng(5);
  for (const auto& g : test_groups())
    for (int t = 0; t < 5; ++t) {
      const auto m = random_module(g, rng, 4, 8);
      CHECK(m.rank() >= 1);
      CHECK(m.rank() <= 4);
    }
}
