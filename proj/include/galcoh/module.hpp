#pragma once

// Modules over finite groups with finitely presented abelian coefficients.

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "galcoh/group.hpp"
#include "galcoh/linalg.hpp"

namespace galcoh {

/// Z^generators modulo the column span of `relations`.
struct FpAbGroup {
  std::size_t generators = 0;
  IntMatrix relations;  // generators x (number of relations)

  FpAbGroup() = default;
  FpAbGroup(std::size_t gens, IntMatrix rels);

  static FpAbGroup free(std::size_t rank);
  /// Z/m_1 + Z/m_2 + ...; m = 0 gives a free summand.
  static FpAbGroup cyclic_sum(const IntVector& moduli);

  CokernelStructure structure() const { return cokernel_structure(relations); }
  bool is_zero_element(const IntVector& v) const;
  bool equal_elements(const IntVector& a, const IntVector& b) const;

  friend bool operator==(const FpAbGroup& a, const FpAbGroup& b) {
    return a.generators == b.generators && a.relations == b.relations;
  }
};

/// Relations of an FpAbGroup in Smith-diagonal form: v is zero iff
/// (to_diagonal * v)_i == 0 mod moduli[i] for all i.
struct DiagonalPresentation {
  IntMatrix to_diagonal;    // U
  IntMatrix from_diagonal;  // U^{-1}
  IntVector moduli;         // one per generator; 1 = dead, 0 = free

  explicit DiagonalPresentation(const FpAbGroup& a);
  bool is_zero(const IntVector& v) const;
};

class GModule {
 public:
  GModule() = default;
  /// `action[g]` is the matrix of g on generators; all module axioms are
  /// checked modulo the relations.
  GModule(GroupPtr group, FpAbGroup coeffs, std::vector<IntMatrix> action);

  /// Action specified on the group's generating set only, extended along
  /// words; the result is fully validated.
  static GModule from_generator_action(GroupPtr group, FpAbGroup coeffs,
                                       const std::map<std::size_t, IntMatrix>& gen_action);

  const GroupPtr& group() const { return group_; }
  const FpAbGroup& coeffs() const { return coeffs_; }
  std::size_t rank() const { return coeffs_.generators; }
  const IntMatrix& action(std::size_t g) const { return action_[g]; }
  const std::vector<IntMatrix>& actions() const { return action_; }
  const DiagonalPresentation& diagonal() const { return *diagonal_; }

  bool is_zero_element(const IntVector& v) const { return diagonal_->is_zero(v); }
  bool equal_elements(const IntVector& a, const IntVector& b) const;

  /// Same group, same presentation, same action matrices.
  friend bool operator==(const GModule& a, const GModule& b);

 private:
  GroupPtr group_;
  FpAbGroup coeffs_;
  std::vector<IntMatrix> action_;
  std::shared_ptr<const DiagonalPresentation> diagonal_;
};

/// A homomorphism of coefficient groups, equivariant for every element of
/// `scope` (the whole group when scope is empty).
class GModuleMap {
 public:
  GModuleMap(GModule source, GModule target, IntMatrix matrix,
             std::optional<Subgroup> scope = std::nullopt);

  const GModule& source() const { return source_; }
  const GModule& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }
  const std::optional<Subgroup>& scope() const { return scope_; }

  /// First element g (parent index) where target(g) F != F source(g), if any.
  static std::optional<std::size_t> equivariance_violation(
      const GModule& source, const GModule& target, const IntMatrix& matrix,
      const std::vector<std::size_t>& elements);
  /// True when the matrix maps the source relations into the target relations.
  static bool respects_relations(const GModule& source, const GModule& target,
                                 const IntMatrix& matrix);

 private:
  GModule source_;
  GModule target_;
  IntMatrix matrix_;
  std::optional<Subgroup> scope_;
};

GModule trivial_module(GroupPtr group, FpAbGroup coeffs);
GModule trivial_module(GroupPtr group, std::size_t free_rank = 1);
/// Z (or Z/m) on which g acts by sign(g) = +-1 for a homomorphism to {+-1}
/// with kernel `kernel`; kernel must have index 1 or 2.
GModule sign_module(const Subgroup& kernel, const Int& modulus = 0);
GModule regular_module(GroupPtr group);
GModule permutation_module(const Subgroup& h, const Int& modulus = 0);
/// The rank-2 lattice on which the nontrivial element of a group of order 2
/// acts by -1: two copies of Z[G]/(1 + sigma).
GModule chatelet_picard_module(GroupPtr group);
GModule direct_sum(const GModule& a, const GModule& b);
GModule zero_module(GroupPtr group);
/// New generators = old generators * basis_change (unimodular).
GModule change_basis(const GModule& m, const IntMatrix& basis_change);

/// Hom(M, N) with conjugation action (g f)(m) = g f(g^{-1} m), presented
/// as a subquotient of integer matrices.
class HomModule {
 public:
  HomModule(const GModule& m, const GModule& n);

  const GModule& module() const { return module_; }
  const GModule& source() const { return source_; }
  const GModule& target() const { return target_; }

  /// Integer matrix (target gens x source gens) of the element with the
  /// given coordinates.
  IntMatrix matrix_of(const IntVector& coords) const;
  /// Coordinates of a homomorphism given by a matrix; throws InvalidInput
  /// when the matrix does not respect relations.
  IntVector coordinates_of(const IntMatrix& f) const;

 private:
  GModule source_;
  GModule target_;
  Subquotient quotient_;
  GModule module_;
};

/// Forget the action outside H; the result is a module over h.group().
GModule restrict_module(const GModule& m, const Subgroup& h);
/// Map restricted to the subgroup, as a map of h.group()-modules.
GModuleMap restrict_map(const GModuleMap& f, const Subgroup& h);

/// Induction from H (m must be a module over h.group()) to h.parent().
/// Coordinates are coset-major: block i holds r_i (x) M.
GModule induce_module(const GModule& m, const Subgroup& h);
/// M -> Ind Res M, m |-> sum_i r_i (x) r_i^{-1} m.
GModuleMap ind_unit(const GModule& m, const Subgroup& h);
/// Ind Res M -> M, r_i (x) m |-> r_i m.
GModuleMap ind_counit(const GModule& m, const Subgroup& h);

}  // namespace galcoh
