#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "galcoh/cohomology.hpp"
#include "galcoh/errors.hpp"
#include "galcoh/samples.hpp"

using namespace galcoh;

namespace {

// |H^1(G, M)| for M = (Z/m)^k by counting crossed homomorphisms: a cocycle
// is fixed by its values on generators, c(xs) = c(x) + x c(s).
Int brute_force_h1_order(const GModule& m, long modulus) {
  const auto& g = m.group();
  const std::size_t k = m.rank();
  using Elt = std::vector<long>;
  auto act = [&](std::size_t x, const Elt& v) {
    Elt out(k, 0);
    for (std::size_t r = 0; r < k; ++r) {
      long s = 0;
      for (std::size_t c = 0; c < k; ++c) s += m.action(x)(r, c).get_si() * v[c];
      out[r] = ((s % modulus) + modulus) % modulus;
    }
    return out;
  };
  auto plus = [&](const Elt& a, const Elt& b) {
    Elt out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = (a[i] + b[i]) % modulus;
    return out;
  };
  std::vector<Elt> elements{Elt(k, 0)};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Elt> next;
    for (const auto& e : elements)
      for (long v = 0; v < modulus; ++v) {
        Elt x = e;
        x[i] = v;
        next.push_back(x);
      }
    elements = std::move(next);
  }
  const auto& gens = g->generators();
  std::size_t cocycles = 0;
  std::vector<std::size_t> choice(gens.size(), 0);
  for (;;) {
    std::vector<std::optional<Elt>> c(g->order());
    c[0] = Elt(k, 0);
    std::vector<std::size_t> queue{0};
    bool consistent = true;
    for (std::size_t qi = 0; qi < queue.size() && consistent; ++qi) {
      const std::size_t x = queue[qi];
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const std::size_t xs = g->mul(x, gens[s]);
        const Elt v = plus(*c[x], act(x, elements[choice[s]]));
        if (!c[xs]) {
          c[xs] = v;
          queue.push_back(xs);
        } else if (*c[xs] != v) {
          consistent = false;
          break;
        }
      }
    }
    if (consistent) {
      bool ok = true;
      for (std::size_t x = 0; x < g->order() && ok; ++x)
        for (std::size_t y = 0; y < g->order() && ok; ++y)
          ok = *c[g->mul(x, y)] == plus(*c[x], act(x, *c[y]));
      if (ok) ++cocycles;
    }
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == elements.size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  std::size_t fixed = 0;
  for (const auto& v : elements) {
    bool inv = true;
    for (std::size_t x = 0; x < g->order() && inv; ++x) inv = act(x, v) == v;
    if (inv) ++fixed;
  }
  // |B^1| = |M| / |M^G|.
  return Int(static_cast<unsigned long>(cocycles * fixed / elements.size()));
}

GModule finite_version(const GModule& lattice, long modulus) {
  return GModule(lattice.group(), FpAbGroup::cyclic_sum(IntVector(lattice.rank(), Int(modulus))), lattice.actions());
}

}  // namespace

TEST_CASE("picard lattice has H^1 = (Z/2)^2 both ways") {
  const auto m = chatelet_picard_module(FiniteGroup::cyclic(2));
  const CohomologyGroup h(m);
  CHECK(h.structure().torsion == IntVector{2, 2});
  CHECK(h1_cyclic(m) == h.structure());
}

TEST_CASE("sign module and trivial lattices") {
  const auto g = FiniteGroup::cyclic(2);
  CHECK(CohomologyGroup(sign_module(Subgroup::trivial(g))).structure().torsion == IntVector{2});
  for (const auto& grp : test_groups()) CHECK(CohomologyGroup(trivial_module(grp, 1)).is_trivial());
}

TEST_CASE("h1_cyclic rejects non-cyclic groups") {
  CHECK_THROWS_AS(h1_cyclic(trivial_module(symmetric_group_3(), 1)), InvalidInput);
}

TEST_CASE("H^1 order against crossed homomorphism count") {
  for (const auto& g : test_groups()) {
    if (g->order() > 8) continue;
    for (const auto& h : all_subgroups(g)) {
      if (h.index() > 3) continue;
      for (long modulus : {2L, 3L, 4L}) {
        if (h.index() == 3 && modulus == 4) continue;
        const GModule m = finite_version(permutation_module(h), modulus);
        CAPTURE(g->order());
        CAPTURE(h.index());
        CAPTURE(modulus);
        CHECK(CohomologyGroup(m).order() == brute_force_h1_order(m, modulus));
      }
      if (h.index() == 2)
        for (long modulus : {3L, 4L}) {
          const GModule m = finite_version(sign_module(h), modulus);
          CHECK(CohomologyGroup(m).order() == brute_force_h1_order(m, modulus));
        }
    }
  }
}

TEST_CASE("bar-cocycle H^1 agrees with the cyclic formula") {
  std::mt19937_64 rng(21);
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto g = FiniteGroup::cyclic(n);
    for (int t = 0; t < 6; ++t) {
      const auto m = random_module(g, rng);
      CHECK(CohomologyGroup(m).structure() == h1_cyclic(m));
    }
  }
}

TEST_CASE("cocycles and coboundaries") {
  const auto g = FiniteGroup::cyclic(3);
  const auto m = regular_module(g);
  const CohomologyGroup h(m);
  const IntVector b = h.coboundary(IntVector{1, 0, 0});
  CHECK(h.is_cocycle(b));
  CHECK(h.is_coboundary(b));
}

TEST_CASE("restriction then corestriction is multiplication by the index") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 40; ++t) {
    const auto inst = random_transfer_instance(rng);
    CHECK(transfer_identity_holds(inst.h, inst.m));
  }
}

TEST_CASE("Shapiro: permutation modules have no H^1") {
  for (const auto& g : test_groups())
    for (const auto& h : all_subgroups(g)) CHECK(shapiro_vanishes(h));
}

TEST_CASE("restriction to a subgroup of Z/2 lattice") {
  const auto g = FiniteGroup::cyclic(4);
  const Subgroup h = Subgroup::generated_by(g, {2});
  const auto m = sign_module(h);  // generator acts by -1
  const CohMap res = restriction_map(h, m);
  // H^1(Z/4, Z^-) = Z/2 and H^1(Z/2, Z) = 0.
  CHECK(res.source()->structure().torsion == IntVector{2});
  CHECK(res.target()->is_trivial());
  CHECK(res.is_zero());
}

TEST_CASE("dual maps") {
  const AbelianMap zero{{2, 2}, {2}, IntMatrix(1, 2)};
  CHECK(dual_map(zero).is_zero());
  const AbelianMap onto{{2, 2}, {2}, IntMatrix{{1, 0}}};
  CHECK(onto.is_surjective());
  CHECK(dual_map(onto).is_injective());
  const AbelianMap into{{2}, {4}, IntMatrix{{2}}};
  CHECK(into.is_injective());
  CHECK(dual_map(into).is_surjective());
  CHECK(dual_map(dual_map(into)) == into);
}
