#include "galcoh/samples.hpp"

#include <algorithm>

#include "galcoh/errors.hpp"

namespace galcoh {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

long uniform_long(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[uniform(rng, 0, v.size() - 1)];
}

std::vector<Subgroup> proper_subgroups(const GroupPtr& g) {
  std::vector<Subgroup> out;
  for (auto& h : all_subgroups(g))
    if (h.index() >= 2) out.push_back(std::move(h));
  return out;
}

GModule augmentation_quotient(const Subgroup& h) {
  const GModule perm = permutation_module(h);
  const std::size_t k = perm.rank();
  IntMatrix ones(k, 1);
  for (std::size_t i = 0; i < k; ++i) ones(i, 0) = 1;
  std::vector<IntMatrix> action;
  for (std::size_t g = 0; g < h.parent()->order(); ++g) action.push_back(perm.action(g));
  return GModule(h.parent(), FpAbGroup(k, ones), std::move(action));
}

GModule random_block(const GroupPtr& g, std::mt19937_64& rng, std::size_t room, long max_torsion) {
  std::vector<Subgroup> index_two, small_index;
  for (auto& h : all_subgroups(g)) {
    if (h.index() == 2) index_two.push_back(h);
    if (h.index() >= 2 && h.index() <= room) small_index.push_back(h);
  }
  const Int modulus = uniform(rng, 0, 2) == 0 ? Int(uniform_long(rng, 2, max_torsion)) : Int(0);
  for (;;) {
    switch (uniform(rng, 0, 4)) {
      case 0:
        return trivial_module(g, 1);
      case 1:
        if (max_torsion < 2) continue;
        return trivial_module(g, FpAbGroup::cyclic_sum({Int(uniform_long(rng, 2, max_torsion))}));
      case 2:
        if (index_two.empty()) continue;
        return sign_module(pick(index_two, rng), modulus);
      case 3:
        if (small_index.empty()) continue;
        return permutation_module(pick(small_index, rng), modulus);
      case 4: {
        if (small_index.empty()) continue;
        const Subgroup& h = pick(small_index, rng);
        if (h.index() < 2) continue;
        return augmentation_quotient(h);
      }
    }
  }
}

}  // namespace

std::vector<GroupPtr> test_groups() {
  std::vector<GroupPtr> out;
  for (std::size_t m = 1; m <= 12; ++m) out.push_back(FiniteGroup::cyclic(m));
  out.push_back(symmetric_group_3());
  out.push_back(FiniteGroup::direct_product(*FiniteGroup::cyclic(2), *FiniteGroup::cyclic(2)));
  out.push_back(dihedral_group(4));
  out.push_back(quaternion_group());
  out.push_back(alternating_group_4());
  out.push_back(FiniteGroup::direct_product(*FiniteGroup::cyclic(2), *FiniteGroup::cyclic(6)));
  out.push_back(dihedral_group(6));
  return out;
}

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return uniform(rng, 0, 1) ? u : Int(-1) * u;
  for (std::size_t step = 0; step < 2 * n; ++step) {
    const std::size_t i = uniform(rng, 0, n - 1);
    std::size_t j = uniform(rng, 0, n - 2);
    if (j >= i) ++j;
    const long c = uniform_long(rng, -2, 2);
    for (std::size_t r = 0; r < n; ++r) u(r, i) += c * u(r, j);
  }
  return u;
}

GModule random_module(const GroupPtr& g, std::mt19937_64& rng, std::size_t max_rank, long max_torsion) {
  const std::size_t target = uniform(rng, 1, std::max<std::size_t>(1, max_rank));
  GModule m = random_block(g, rng, target, max_torsion);
  while (m.rank() < target) {
    GModule b = random_block(g, rng, target - m.rank(), max_torsion);
    if (m.rank() + b.rank() > target) continue;
    m = direct_sum(m, b);
  }
  return change_basis(m, random_unimodular(m.rank(), rng));
}

IntMatrix random_equivariant_map(const GModule& q, const GModule& r, const Subgroup& h,
                                 std::mt19937_64& rng) {
  const HomModule hom(q, r);
  const Invariants inv = h0(restrict_module(hom.module(), h));
  IntVector coords(hom.module().rank());
  for (const auto& gen : inv.generators) {
    const long c = uniform_long(rng, -3, 3);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += c * gen[i];
  }
  return hom.matrix_of(coords);
}

TransferInstance random_transfer_instance(std::mt19937_64& rng) {
  const auto groups = test_groups();
  const GroupPtr& g = pick(groups, rng);
  const auto subs = all_subgroups(g);
  return TransferInstance{pick(subs, rng), random_module(g, rng, 4, 8)};
}

bool transfer_identity_holds(const Subgroup& h, const GModule& m) {
  const auto src = std::make_shared<const CohomologyGroup>(m);
  const auto mid = std::make_shared<const CohomologyGroup>(restrict_module(m, h));
  const CohMap res = restriction_map(h, src, mid);
  const CohMap cor = corestriction_map(h, mid, src);
  return compose(cor, res).same_as(scalar_map(src, Int(static_cast<unsigned long>(h.index()))));
}

bool shapiro_vanishes(const Subgroup& h) { return CohomologyGroup(permutation_module(h)).is_trivial(); }

Lemma52Instance random_lemma52_instance(std::mt19937_64& rng) {
  const auto groups = test_groups();
  for (;;) {
    const GroupPtr& g = pick(groups, rng);
    if (g->order() < 2) continue;
    const auto subs = proper_subgroups(g);
    const Subgroup& h = pick(subs, rng);
    const std::size_t n = h.index();
    const GModule p = random_module(g, rng, 2, 4);
    const GModule q = random_module(g, rng, 3, 4);
    const std::size_t kind = uniform(rng, 0, 2);
    if (kind == 0) {
      // All-torsion R of exponent dividing n: n h = 0 is G-equivariant.
      std::vector<long> divisors;
      for (long k = 2; k <= static_cast<long>(n); ++k)
        if (n % static_cast<std::size_t>(k) == 0) divisors.push_back(k);
      const Int k = pick(divisors, rng);
      GModule r = uniform(rng, 0, 1) ? trivial_module(g, FpAbGroup::cyclic_sum({k}))
                                     : permutation_module(pick(subs, rng), k);
      if (r.rank() > 4) continue;
      IntMatrix map = random_equivariant_map(q, r, h, rng);
      return Lemma52Instance{h, p, q, std::move(r), std::move(map), "torsion"};
    }
    const GModule r = random_module(g, rng, 3, 4);
    if (kind == 1) {
      IntMatrix map = random_equivariant_map(q, r, Subgroup::whole(g), rng);
      return Lemma52Instance{h, p, q, r, std::move(map), "equivariant"};
    }
    IntMatrix map = random_equivariant_map(q, r, h, rng);
    std::vector<std::size_t> all(g->order());
    for (std::size_t x = 0; x < all.size(); ++x) all[x] = x;
    if (GModuleMap::equivariance_violation(q, r, Int(static_cast<unsigned long>(n)) * map, all)) continue;
    return Lemma52Instance{h, p, q, r, std::move(map), "scaled"};
  }
}

CoresExtInstance random_cores_ext_instance(std::mt19937_64& rng) {
  static const std::pair<std::size_t, std::size_t> shapes[] = {{4, 2}, {6, 3}, {6, 2}};
  const auto& [order, sub_order] = shapes[uniform(rng, 0, 2)];
  const GroupPtr g = FiniteGroup::cyclic(order);
  const Subgroup h = Subgroup::generated_by(g, {order / sub_order});
  // Prefer instances with a nonzero class; give up after a few tries.
  for (int attempt = 0;; ++attempt) {
    const GModule sub = random_module(g, rng, 2, 4);
    const GModule quotient = random_module(g, rng, 2, 4);
    const ExtGroup ext(restrict_module(quotient, h), restrict_module(sub, h));
    IntVector coords(ext.size());
    bool nonzero = false;
    for (std::size_t j = 0; j < coords.size(); ++j) {
      const Int& inv = ext.invariants()[j];
      coords[j] = inv == 0 ? Int(uniform_long(rng, -3, 3)) : Int(uniform_long(rng, 0, 1000)) % inv;
      if (coords[j] != 0) nonzero = true;
    }
    if (nonzero || attempt >= 8) return CoresExtInstance{h, sub, quotient, std::move(coords)};
  }
}

CoresExtComparison compare_cores_ext(const Subgroup& h, const GModule& sub, const GModule& quotient,
                                     const IntVector& coords) {
  const ExtGroup ext_h(restrict_module(quotient, h), restrict_module(sub, h));
  const ExtGroup ext_g(quotient, sub);
  const ExtensionClass e = ext_h.extension_from_class(coords);
  CoresExtComparison out;
  out.via_extensions = ext_g.class_of(cores_ext(h, sub, quotient, e));
  out.via_transfer = corestriction_map(h, ext_h.h1(), ext_g.h1()).apply(coords);
  out.agree = ext_g.h1()->reduce(out.via_extensions) == ext_g.h1()->reduce(out.via_transfer);
  return out;
}

}  // namespace galcoh
