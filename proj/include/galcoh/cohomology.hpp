#pragma once

// H^0 and H^1 of finite groups with coefficients in finitely presented
// modules, restriction, corestriction (transfer) and Pontryagin duals.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "galcoh/module.hpp"

namespace galcoh {

/// Invariants M^G together with generators in module coordinates.
struct Invariants {
  FpAbGroup group;
  std::vector<IntVector> generators;
};

Invariants h0(const GModule& m);

/// H^1(G, M) from inhomogeneous cocycles.
///
/// A cochain is a vector of |G| * rank entries; slot g occupies
/// [g * rank, (g + 1) * rank). A cocycle is determined by its values on the
/// group's generating set, which is how the cocycle lattice is
/// parameterized internally.
class CohomologyGroup {
 public:
  explicit CohomologyGroup(GModule m);

  const GModule& module() const { return module_; }
  const GroupPtr& group() const { return module_.group(); }

  /// Invariant factors of the cyclic summands (0 = Z), one per generator.
  const IntVector& invariants() const { return quotient_.invariants(); }
  std::size_t size() const { return quotient_.size(); }
  CokernelStructure structure() const { return quotient_.structure(); }
  bool is_trivial() const { return size() == 0; }
  bool is_finite() const;
  Int order() const { return structure().order(); }

  std::size_t cochain_size() const;
  IntVector representative(std::size_t j) const;
  IntVector class_representative(const IntVector& coords) const;

  /// c(gh) = c(g) + g c(h) modulo the coefficient relations, for all g, h.
  bool is_cocycle(const IntVector& cochain) const;
  /// g |-> g m - m.
  IntVector coboundary(const IntVector& m) const;
  /// Generators of the coboundary lattice (including relation slots).
  std::vector<IntVector> coboundary_generators() const;
  /// Class coordinates of a cocycle, reduced; throws InvalidInput otherwise.
  IntVector coordinates(const IntVector& cochain) const;
  bool is_coboundary(const IntVector& cochain) const;
  IntVector reduce(IntVector coords) const { return quotient_.reduce(std::move(coords)); }

 private:
  IntVector to_parameters(const IntVector& cochain) const;

  GModule module_;
  std::vector<IntMatrix> diag_action_;
  IntMatrix extend_;  // parameters -> full cochain, diagonal coordinates
  Subquotient quotient_;
};

using CohomologyPtr = std::shared_ptr<const CohomologyGroup>;

/// Isomorphism type of H^1 for cyclic G as ker(N) / (sigma - 1) M.
CokernelStructure h1_cyclic(const GModule& m);

/// Homomorphism of finitely generated abelian groups given on cyclic
/// decompositions: column i is the image of the i-th source generator.
struct AbelianMap {
  IntVector source_invariants;
  IntVector target_invariants;
  IntMatrix matrix;

  bool is_zero() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }
  AbelianMap reduced() const;
  friend bool operator==(const AbelianMap& a, const AbelianMap& b);
};

AbelianMap compose(const AbelianMap& f, const AbelianMap& g);

enum class MapKind { Identity, Restriction, Corestriction, Induced, Scalar, Composite, TransposeDual };
std::string to_string(MapKind k);

class CohMap {
 public:
  using CochainMap = std::function<IntVector(const IntVector&)>;

  /// Builds the map on classes from a cochain-level map and verifies that
  /// cocycles go to cocycles and coboundaries to coboundaries.
  CohMap(CohomologyPtr source, CohomologyPtr target, const CochainMap& on_cochains, MapKind kind);
  CohMap(CohomologyPtr source, CohomologyPtr target, IntMatrix matrix, MapKind kind);

  const CohomologyPtr& source() const { return source_; }
  const CohomologyPtr& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }
  MapKind kind() const { return kind_; }

  IntVector apply(const IntVector& coords) const;
  AbelianMap as_abelian() const;
  bool is_zero() const { return as_abelian().is_zero(); }
  bool is_injective() const { return as_abelian().is_injective(); }
  bool is_surjective() const { return as_abelian().is_surjective(); }
  bool is_isomorphism() const { return as_abelian().is_isomorphism(); }

  /// Same matrix modulo the target invariants.
  bool same_as(const CohMap& other) const;

 private:
  CohomologyPtr source_;
  CohomologyPtr target_;
  IntMatrix matrix_;
  MapKind kind_;
};

/// f o g.
CohMap compose(const CohMap& f, const CohMap& g);
CohMap identity_map(const CohomologyPtr& c);
CohMap scalar_map(const CohomologyPtr& c, const Int& n);

/// H^1(G, M) -> H^1(H, Res M). `target` must be over h.group().
CohMap restriction_map(const Subgroup& h, const CohomologyPtr& source, const CohomologyPtr& target);
CohMap restriction_map(const Subgroup& h, const GModule& m);

/// Transfer H^1(H, Res M) -> H^1(G, M). With g r_i = r_{j(i)} h_i(g) for the
/// subgroup's left-coset representatives r_i, a cocycle c on H goes to
///   (cor c)(g) = sum_i r_{j(i)} c(h_i(g)).
CohMap corestriction_map(const Subgroup& h, const CohomologyPtr& source, const CohomologyPtr& target);
CohMap corestriction_map(const Subgroup& h, const GModule& m);

/// Postcomposition with a fully equivariant module map.
CohMap induced_map(const GModuleMap& f, const CohomologyPtr& source, const CohomologyPtr& target);
CohMap induced_map(const GModuleMap& f);

/// Pontryagin dual of a finite H^1 (isomorphic to it).
FpAbGroup dual_group(const CohomologyGroup& c);
/// Transpose map between the dual groups, in dual bases; contravariant.
AbelianMap dual_map(const AbelianMap& f);
AbelianMap dual_map(const CohMap& f);

}  // namespace galcoh
