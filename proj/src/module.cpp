#include "galcoh/module.hpp"

#include <string>

#include "galcoh/errors.hpp"

namespace galcoh {

// ---------------------------------------------------------------------------
// FpAbGroup

FpAbGroup::FpAbGroup(std::size_t gens, IntMatrix rels)
    : generators(gens), relations(std::move(rels)) {
  if (relations.rows() != generators) {
    if (relations.rows() == 0 && relations.cols() == 0)
      relations = IntMatrix(generators, 0);
    else
      throw InvalidInput("relation matrix must have one row per generator");
  }
}

FpAbGroup FpAbGroup::free(std::size_t rank) { return FpAbGroup(rank, IntMatrix(rank, 0)); }

FpAbGroup FpAbGroup::cyclic_sum(const IntVector& moduli) {
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (moduli[i] != 0) {
      IntVector c(moduli.size());
      c[i] = moduli[i];
      cols.push_back(std::move(c));
    }
  return FpAbGroup(moduli.size(), IntMatrix::from_columns(cols, moduli.size()));
}

bool FpAbGroup::is_zero_element(const IntVector& v) const {
  return DiagonalPresentation(*this).is_zero(v);
}

bool FpAbGroup::equal_elements(const IntVector& a, const IntVector& b) const {
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return is_zero_element(d);
}

DiagonalPresentation::DiagonalPresentation(const FpAbGroup& a) {
  const SmithDecomposition snf = smith_normal_form(a.relations);
  to_diagonal = snf.U;
  from_diagonal = snf.U_inv;
  moduli.assign(a.generators, Int(0));
  for (std::size_t i = 0; i < snf.rank; ++i) moduli[i] = snf.S(i, i);
}

bool DiagonalPresentation::is_zero(const IntVector& v) const {
  const IntVector w = to_diagonal.apply(v);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (moduli[i] == 1) continue;
    if (moduli[i] == 0) {
      if (w[i] != 0) return false;
    } else if (!mpz_divisible_p(w[i].get_mpz_t(), moduli[i].get_mpz_t())) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// GModule

namespace {

bool columns_vanish(const DiagonalPresentation& d, const IntMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!d.is_zero(m.column(j))) return false;
  return true;
}

}  // namespace

GModule::GModule(GroupPtr group, FpAbGroup coeffs, std::vector<IntMatrix> action)
    : group_(std::move(group)), coeffs_(std::move(coeffs)), action_(std::move(action)) {
  if (!group_) throw InvalidInput("module without group");
  const std::size_t n = group_->order(), r = coeffs_.generators;
  if (action_.size() != n) throw InvalidInput("one action matrix per group element required");
  for (const auto& a : action_)
    if (a.rows() != r || a.cols() != r) throw InvalidInput("action matrix has wrong size");
  diagonal_ = std::make_shared<const DiagonalPresentation>(coeffs_);
  const auto& d = *diagonal_;
  for (std::size_t g = 0; g < n; ++g)
    if (!columns_vanish(d, action_[g] * coeffs_.relations))
      throw InvalidInput("action of element " + std::to_string(g) +
                         " does not preserve the relations");
  if (!columns_vanish(d, action_[0] - IntMatrix::identity(r)))
    throw InvalidInput("identity does not act trivially");
  if (n <= 64) {
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h)
        if (!columns_vanish(d, action_[g] * action_[h] - action_[group_->mul(g, h)]))
          throw InvalidInput("action is not multiplicative at (" + std::to_string(g) + ", " +
                             std::to_string(h) + ")");
  } else {
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t s : group_->generators())
        if (!columns_vanish(d, action_[g] * action_[s] - action_[group_->mul(g, s)]))
          throw InvalidInput("action is not multiplicative at (" + std::to_string(g) + ", " +
                             std::to_string(s) + ")");
  }
}

GModule GModule::from_generator_action(GroupPtr group, FpAbGroup coeffs,
                                       const std::map<std::size_t, IntMatrix>& gen_action) {
  const std::size_t n = group->order(), r = coeffs.generators;
  std::vector<IntMatrix> action(n);
  action[0] = IntMatrix::identity(r);
  for (std::size_t s : group->generators())
    if (!gen_action.count(s))
      throw InvalidInput("missing action for group generator " + std::to_string(s));
  for (std::size_t g : group->bfs_order()) {
    if (g == 0) continue;
    action[g] = action[group->word_parent(g)] * gen_action.at(group->word_generator(g));
  }
  GModule m(std::move(group), std::move(coeffs), std::move(action));
  for (const auto& [s, a] : gen_action) {
    if (s >= n) throw InvalidInput("action given for element out of range");
    if (!columns_vanish(m.diagonal(), m.action(s) - a))
      throw InvalidInput("action of element " + std::to_string(s) +
                         " is inconsistent with the group relations");
  }
  return m;
}

bool GModule::equal_elements(const IntVector& a, const IntVector& b) const {
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return is_zero_element(d);
}

bool operator==(const GModule& a, const GModule& b) {
  return same_group(a.group_, b.group_) && a.coeffs_ == b.coeffs_ && a.action_ == b.action_;
}

// ---------------------------------------------------------------------------
// GModuleMap

std::optional<std::size_t> GModuleMap::equivariance_violation(
    const GModule& source, const GModule& target, const IntMatrix& matrix,
    const std::vector<std::size_t>& elements) {
  for (std::size_t g : elements)
    if (!columns_vanish(target.diagonal(),
                        target.action(g) * matrix - matrix * source.action(g)))
      return g;
  return std::nullopt;
}

bool GModuleMap::respects_relations(const GModule& source, const GModule& target,
                                    const IntMatrix& matrix) {
  return columns_vanish(target.diagonal(), matrix * source.coeffs().relations);
}

GModuleMap::GModuleMap(GModule source, GModule target, IntMatrix matrix,
                       std::optional<Subgroup> scope)
    : source_(std::move(source)),
      target_(std::move(target)),
      matrix_(std::move(matrix)),
      scope_(std::move(scope)) {
  if (!same_group(source_.group(), target_.group()))
    throw InvalidInput("module map between modules over different groups");
  if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
    throw InvalidInput("module map matrix has wrong size");
  if (!respects_relations(source_, target_, matrix_))
    throw InvalidInput("module map does not respect relations");
  std::vector<std::size_t> elements;
  if (scope_) {
    if (!same_group(scope_->parent(), source_.group()))
      throw InvalidInput("equivariance scope is not a subgroup of the module group");
    elements = scope_->elements();
  } else {
    for (std::size_t g = 0; g < source_.group()->order(); ++g) elements.push_back(g);
  }
  if (auto bad = equivariance_violation(source_, target_, matrix_, elements))
    throw InvalidInput("module map is not equivariant at element " + std::to_string(*bad));
}

// ---------------------------------------------------------------------------
// Constructions

GModule trivial_module(GroupPtr group, FpAbGroup coeffs) {
  const std::size_t r = coeffs.generators;
  std::vector<IntMatrix> action(group->order(), IntMatrix::identity(r));
  return GModule(std::move(group), std::move(coeffs), std::move(action));
}

GModule trivial_module(GroupPtr group, std::size_t free_rank) {
  return trivial_module(std::move(group), FpAbGroup::free(free_rank));
}

GModule zero_module(GroupPtr group) { return trivial_module(std::move(group), 0); }

GModule sign_module(const Subgroup& kernel, const Int& modulus) {
  if (kernel.index() > 2) throw InvalidInput("sign module needs a subgroup of index <= 2");
  const auto& g = kernel.parent();
  std::vector<IntMatrix> action;
  for (std::size_t x = 0; x < g->order(); ++x)
    action.push_back(IntMatrix{{kernel.contains(x) ? 1L : -1L}});
  FpAbGroup coeffs = modulus == 0 ? FpAbGroup::free(1) : FpAbGroup::cyclic_sum({modulus});
  return GModule(g, std::move(coeffs), std::move(action));
}

GModule regular_module(GroupPtr group) {
  const std::size_t n = group->order();
  std::vector<IntMatrix> action;
  for (std::size_t g = 0; g < n; ++g) {
    IntMatrix a(n, n);
    for (std::size_t x = 0; x < n; ++x) a(group->mul(g, x), x) = 1;
    action.push_back(std::move(a));
  }
  return GModule(group, FpAbGroup::free(n), std::move(action));
}

GModule permutation_module(const Subgroup& h, const Int& modulus) {
  const auto& g = h.parent();
  const std::size_t n = h.index();
  std::vector<IntMatrix> action;
  for (std::size_t x = 0; x < g->order(); ++x) {
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) a(h.act_on_coset(x, i).first, i) = 1;
    action.push_back(std::move(a));
  }
  FpAbGroup coeffs = modulus == 0 ? FpAbGroup::free(n)
                                  : FpAbGroup::cyclic_sum(IntVector(n, modulus));
  return GModule(g, std::move(coeffs), std::move(action));
}

namespace {

// Drops generators that the relations kill and rewrites the rest in
// Smith-diagonal coordinates.
GModule simplify_presentation(const GModule& m) {
  const auto& d = m.diagonal();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < d.moduli.size(); ++i)
    if (d.moduli[i] != 1) kept.push_back(i);
  IntVector moduli;
  for (std::size_t i : kept) moduli.push_back(d.moduli[i]);
  std::vector<IntMatrix> action;
  for (const auto& a : m.actions()) {
    const IntMatrix full = d.to_diagonal * a * d.from_diagonal;
    IntMatrix b(kept.size(), kept.size());
    for (std::size_t r = 0; r < kept.size(); ++r)
      for (std::size_t c = 0; c < kept.size(); ++c) b(r, c) = full(kept[r], kept[c]);
    action.push_back(std::move(b));
  }
  return GModule(m.group(), FpAbGroup::cyclic_sum(moduli), std::move(action));
}

}  // namespace

GModule chatelet_picard_module(GroupPtr group) {
  if (group->order() != 2)
    throw InvalidInput("the Chatelet Picard module is defined over a group of order 2");
  // Z[G]^2 modulo the images of 1 |-> 1 + sigma in each copy.
  const IntMatrix swap{{0, 1}, {1, 0}};
  const IntMatrix rel = IntMatrix::block_diagonal(IntMatrix{{1}, {1}}, IntMatrix{{1}, {1}});
  std::vector<IntMatrix> action{IntMatrix::identity(4), IntMatrix::block_diagonal(swap, swap)};
  const GModule presented(group, FpAbGroup(4, rel), std::move(action));
  return simplify_presentation(presented);
}

GModule direct_sum(const GModule& a, const GModule& b) {
  if (!same_group(a.group(), b.group())) throw InvalidInput("direct sum over different groups");
  std::vector<IntMatrix> action;
  for (std::size_t g = 0; g < a.group()->order(); ++g)
    action.push_back(IntMatrix::block_diagonal(a.action(g), b.action(g)));
  FpAbGroup coeffs(a.rank() + b.rank(),
                   IntMatrix::block_diagonal(a.coeffs().relations, b.coeffs().relations));
  return GModule(a.group(), std::move(coeffs), std::move(action));
}

GModule change_basis(const GModule& m, const IntMatrix& p) {
  const SmithDecomposition snf = smith_normal_form(p);
  if (!p.is_square() || p.rows() != m.rank() || snf.rank != p.rows() ||
      snf.S(p.rows() - 1, p.rows() - 1) != 1)
    throw InvalidInput("basis change must be unimodular");
  const IntMatrix p_inv = snf.V * snf.U;
  std::vector<IntMatrix> action;
  for (const auto& a : m.actions()) action.push_back(p_inv * a * p);
  return GModule(m.group(), FpAbGroup(m.rank(), p_inv * m.coeffs().relations),
                 std::move(action));
}

// ---------------------------------------------------------------------------
// HomModule

HomModule::HomModule(const GModule& m, const GModule& n) : source_(m), target_(n) {
  if (!same_group(m.group(), n.group())) throw InvalidInput("Hom of modules over different groups");
  const std::size_t a = m.rank(), b = n.rank();
  const auto& dn = n.diagonal();
  const IntMatrix& rm = m.coeffs().relations;
  const IntMatrix& rn = n.coeffs().relations;

  // F R_M must lie in the relation lattice of N.
  std::vector<IntVector> rows;
  IntVector moduli;
  for (std::size_t q = 0; q < rm.cols(); ++q)
    for (std::size_t i = 0; i < b; ++i) {
      if (dn.moduli[i] == 1) continue;
      IntVector row(a * b);
      for (std::size_t k = 0; k < b; ++k)
        for (std::size_t l = 0; l < a; ++l) row[k * a + l] = dn.to_diagonal(i, k) * rm(l, q);
      rows.push_back(std::move(row));
      moduli.push_back(dn.moduli[i]);
    }
  const IntMatrix cocycles =
      rows.empty() ? IntMatrix::identity(a * b)
                   : kernel_mod(IntMatrix::from_rows(rows, a * b), moduli);

  std::vector<IntVector> zero_maps;
  for (std::size_t q = 0; q < rn.cols(); ++q)
    for (std::size_t l = 0; l < a; ++l) {
      IntVector v(a * b);
      for (std::size_t k = 0; k < b; ++k) v[k * a + l] = rn(k, q);
      zero_maps.push_back(std::move(v));
    }
  quotient_ = Subquotient(cocycles, IntMatrix::from_columns(zero_maps, a * b));

  const std::size_t k = quotient_.size();
  const FpAbGroup coeffs = FpAbGroup::cyclic_sum(quotient_.invariants());
  const auto& group = m.group();
  std::vector<IntMatrix> action;
  for (std::size_t g = 0; g < group->order(); ++g) {
    IntMatrix act(k, k);
    const IntMatrix& left = n.action(g);
    const IntMatrix& right = m.action(group->inverse(g));
    for (std::size_t j = 0; j < k; ++j) {
      IntVector e(k);
      e[j] = 1;
      act.set_column(j, coordinates_of(left * matrix_of(e) * right));
    }
    action.push_back(std::move(act));
  }
  module_ = GModule(group, coeffs, std::move(action));
}

IntMatrix HomModule::matrix_of(const IntVector& coords) const {
  const std::size_t a = source_.rank(), b = target_.rank();
  IntVector v(a * b);
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] == 0) continue;
    const IntVector g = quotient_.generator(j);
    for (std::size_t t = 0; t < v.size(); ++t) v[t] += coords[j] * g[t];
  }
  IntMatrix f(b, a);
  for (std::size_t k = 0; k < b; ++k)
    for (std::size_t l = 0; l < a; ++l) f(k, l) = v[k * a + l];
  return f;
}

IntVector HomModule::coordinates_of(const IntMatrix& f) const {
  const std::size_t a = source_.rank(), b = target_.rank();
  if (f.rows() != b || f.cols() != a) throw InvalidInput("homomorphism matrix has wrong size");
  IntVector v(a * b);
  for (std::size_t k = 0; k < b; ++k)
    for (std::size_t l = 0; l < a; ++l) v[k * a + l] = f(k, l);
  auto c = quotient_.coordinates(v);
  if (!c) throw InvalidInput("matrix does not define a homomorphism of the coefficient groups");
  return *c;
}

// ---------------------------------------------------------------------------
// Restriction and induction

GModule restrict_module(const GModule& m, const Subgroup& h) {
  if (!same_group(m.group(), h.parent())) throw InvalidInput("restriction to a foreign subgroup");
  std::vector<IntMatrix> action;
  for (std::size_t x : h.elements()) action.push_back(m.action(x));
  return GModule(h.group(), m.coeffs(), std::move(action));
}

GModuleMap restrict_map(const GModuleMap& f, const Subgroup& h) {
  return GModuleMap(restrict_module(f.source(), h), restrict_module(f.target(), h), f.matrix());
}

GModule induce_module(const GModule& m, const Subgroup& h) {
  if (!same_group(m.group(), h.group()))
    throw InvalidInput("induction: module is not over the given subgroup");
  const std::size_t n = h.index(), r = m.rank();
  const auto& g = h.parent();
  IntMatrix rel(n * r, n * m.coeffs().relations.cols());
  const IntMatrix& rm = m.coeffs().relations;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t q = 0; q < rm.cols(); ++q) rel(i * r + a, i * rm.cols() + q) = rm(a, q);
  std::vector<IntMatrix> action;
  for (std::size_t x = 0; x < g->order(); ++x) {
    IntMatrix act(n * r, n * r);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [j, hh] = h.act_on_coset(x, i);
      const IntMatrix& block = m.action(static_cast<std::size_t>(h.to_local(hh)));
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) act(j * r + a, i * r + b) = block(a, b);
    }
    action.push_back(std::move(act));
  }
  return GModule(g, FpAbGroup(n * r, std::move(rel)), std::move(action));
}

GModuleMap ind_unit(const GModule& m, const Subgroup& h) {
  GModule ind = induce_module(restrict_module(m, h), h);
  const std::size_t n = h.index(), r = m.rank();
  const auto& g = h.parent();
  IntMatrix f(n * r, r);
  for (std::size_t i = 0; i < n; ++i) {
    const IntMatrix& block = m.action(g->inverse(h.representatives()[i]));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) f(i * r + a, b) = block(a, b);
  }
  return GModuleMap(m, std::move(ind), std::move(f));
}

GModuleMap ind_counit(const GModule& m, const Subgroup& h) {
  GModule ind = induce_module(restrict_module(m, h), h);
  const std::size_t n = h.index(), r = m.rank();
  IntMatrix f(r, n * r);
  for (std::size_t i = 0; i < n; ++i) {
    const IntMatrix& block = m.action(h.representatives()[i]);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) f(a, i * r + b) = block(a, b);
  }
  return GModuleMap(std::move(ind), m, std::move(f));
}

}  // namespace galcoh
