#pragma once

// Extensions 0 -> N -> E -> M -> 0 of G-modules, Ext^1 as H^1 of the Hom
// module, and the restriction/corestriction of extension classes.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galcoh/cohomology.hpp"

namespace galcoh {

/// An extension of `quotient` (M) by `sub` (N). The middle module is
/// N + M with g acting by [[rho_N(g), phi(g) rho_M(g)], [0, rho_M(g)]],
/// where phi is a 1-cocycle with values in Hom(M, N).
class ExtensionClass {
 public:
  ExtensionClass(GModule sub, GModule quotient, std::vector<IntMatrix> phi);

  /// Extension read off a block upper-triangular action on N + M;
  /// `corner[g]` is the upper-right block.
  static ExtensionClass from_block_action(GModule sub, GModule quotient,
                                          const std::vector<IntMatrix>& corner);
  static ExtensionClass split(GModule sub, GModule quotient);

  const GroupPtr& group() const { return sub_.group(); }
  const GModule& sub() const { return sub_; }
  const GModule& quotient() const { return quotient_; }
  const std::vector<IntMatrix>& phi() const { return phi_; }

  /// The middle term E as a module on N + M.
  GModule middle() const;

 private:
  GModule sub_;
  GModule quotient_;
  std::vector<IntMatrix> phi_;
};

/// Ext^1_G(M, N) = H^1(G, Hom(M, N)).
class ExtGroup {
 public:
  ExtGroup(const GModule& m, const GModule& n);

  const HomModule& hom() const { return *hom_; }
  const CohomologyPtr& h1() const { return h1_; }
  const IntVector& invariants() const { return h1_->invariants(); }
  CokernelStructure structure() const { return h1_->structure(); }
  std::size_t size() const { return h1_->size(); }

  /// Hom-module cochain of an extension.
  IntVector cochain_of(const ExtensionClass& e) const;
  IntVector class_of(const ExtensionClass& e) const;
  ExtensionClass extension_from_cocycle(const IntVector& cochain) const;
  ExtensionClass extension_from_class(const IntVector& coords) const;
  bool is_split(const ExtensionClass& e) const;

 private:
  std::shared_ptr<const HomModule> hom_;
  CohomologyPtr h1_;
};

/// Along alpha: N -> N'.
ExtensionClass pushout(const GModuleMap& alpha, const ExtensionClass& e);
/// Along beta: M' -> M.
ExtensionClass pullback(const GModuleMap& beta, const ExtensionClass& e);

/// View a G-extension as an H-extension.
ExtensionClass res_ext(const Subgroup& h, const ExtensionClass& e);
/// Ind_H^G of an H-extension, as an extension of Ind M by Ind N.
ExtensionClass induce_ext(const Subgroup& h, const ExtensionClass& e);
/// Corestriction of an H-extension whose terms are the restrictions of the
/// G-modules `sub` and `quotient`: induce, pull back along the unit
/// quotient -> Ind Res quotient, push out along the counit Ind Res sub -> sub.
ExtensionClass cores_ext(const Subgroup& h, const GModule& sub, const GModule& quotient,
                         const ExtensionClass& e);

struct Lemma52Witness {
  std::size_t generator;   // index of the Ext^1_G(P, Q) generator
  IntVector direct;        // (n h)_*(e)
  IntVector via_subgroup;  // f_*(h_*(f^*(e)))
  IntVector via_norm;      // (sum_i r_i h r_i^{-1})_*(e)
};

struct Lemma52Report {
  bool holds = true;
  std::size_t index = 0;
  CokernelStructure ext_pq;
  CokernelStructure ext_pr;
  std::vector<Lemma52Witness> witnesses;
  /// Diagnostics. The subgroup path always equals the map induced by the
  /// norm N(h) = sum_i r_i h r_i^{-1}; n h = N(h) when h is G-equivariant,
  /// but not in general when R has n-torsion.
  bool norm_path_holds = true;  // via_subgroup == via_norm everywhere
  bool norm_is_n_times_h = true;
};

/// Checks, on generators of Ext^1_G(P, Q), that (n h)_* = f_* o h_* o f^*
/// where h: Q -> R is H-equivariant, n = [G:H] and n h is G-equivariant.
/// Precondition failures raise InvalidInput naming the group element.
///
/// The identity can fail when R has n-torsion: for G = Z/2 x Z/2 = <a, b>,
/// H = <a>, P = Z, Q = Z with a acting by -1, R = F_2[G/H] and h(1) = [H],
/// 2h = 0 while f_* h_* f^* is nonzero on Ext^1_G(P, Q) = Z/2.
Lemma52Report lemma52_check(const Subgroup& h, const GModule& p, const GModule& q,
                            const GModule& r, const IntMatrix& map);

}  // namespace galcoh
