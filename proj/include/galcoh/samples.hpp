#pragma once

// Test groups, random modules and instances, and the self-checks run on
// them (transfer identity, Shapiro vanishing, extension corestriction,
// the commuting square for maps that are equivariant only up to index).

#include <random>
#include <string>
#include <vector>

#include "galcoh/extensions.hpp"

namespace galcoh {

/// Cyclic groups of order 1..12, S3, Z/2 x Z/2, D4, Q8, A4, Z/2 x Z/6, D6.
std::vector<GroupPtr> test_groups();

/// Direct sum of random blocks (trivial Z and Z/m, sign modules, permutation
/// modules and their augmentation quotients, optionally reduced mod m),
/// followed by a random unimodular change of basis.
GModule random_module(const GroupPtr& g, std::mt19937_64& rng, std::size_t max_rank = 4,
                      long max_torsion = 8);

/// Random unimodular n x n matrix with small entries.
IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng);

/// Random element of Hom_H(Q, R) for the subgroup (or the whole group).
IntMatrix random_equivariant_map(const GModule& q, const GModule& r, const Subgroup& h,
                                 std::mt19937_64& rng);

struct TransferInstance {
  Subgroup h;
  GModule m;
};
TransferInstance random_transfer_instance(std::mt19937_64& rng);
/// cor o res = [G:H] on H^1(G, M).
bool transfer_identity_holds(const Subgroup& h, const GModule& m);

/// H^1(G, Z[G/H]) = 0.
bool shapiro_vanishes(const Subgroup& h);

struct Lemma52Instance {
  Subgroup h;
  GModule p, q, r;
  IntMatrix map;
  std::string kind;  // "torsion", "equivariant" or "scaled"
};
Lemma52Instance random_lemma52_instance(std::mt19937_64& rng);

struct CoresExtInstance {
  Subgroup h;
  GModule sub, quotient;
  IntVector coords;  // class in Ext^1_H(Res quotient, Res sub)
};
/// G = Z/4 > Z/2, Z/6 > Z/3 or Z/6 > Z/2 with random modules and class.
CoresExtInstance random_cores_ext_instance(std::mt19937_64& rng);

struct CoresExtComparison {
  IntVector via_extensions;  // class of cores_ext(E)
  IntVector via_transfer;    // corestriction on H^1(-, Hom)
  bool agree = false;
};
CoresExtComparison compare_cores_ext(const Subgroup& h, const GModule& sub, const GModule& quotient,
                                     const IntVector& coords);

}  // namespace galcoh
