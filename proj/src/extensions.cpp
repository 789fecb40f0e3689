#include "galcoh/extensions.hpp"

#include <algorithm>

#include "galcoh/errors.hpp"

namespace galcoh {

ExtensionClass::ExtensionClass(GModule sub, GModule quotient, std::vector<IntMatrix> phi)
    : sub_(std::move(sub)), quotient_(std::move(quotient)), phi_(std::move(phi)) {
  if (!same_group(sub_.group(), quotient_.group()))
    throw InvalidInput("extension terms over different groups");
  if (phi_.size() != sub_.group()->order())
    throw InvalidInput("extension cocycle needs one value per group element");
  for (const auto& f : phi_)
    if (f.rows() != sub_.rank() || f.cols() != quotient_.rank())
      throw InvalidInput("extension cocycle value has wrong size");
  try {
    (void)middle();
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("invalid extension cocycle: ") + e.what());
  }
}

ExtensionClass ExtensionClass::from_block_action(GModule sub, GModule quotient,
                                                 const std::vector<IntMatrix>& corner) {
  const auto& g = sub.group();
  if (corner.size() != g->order()) throw InvalidInput("one corner block per group element required");
  std::vector<IntMatrix> phi;
  for (std::size_t x = 0; x < g->order(); ++x)
    phi.push_back(corner[x] * quotient.action(g->inverse(x)));
  return ExtensionClass(std::move(sub), std::move(quotient), std::move(phi));
}

ExtensionClass ExtensionClass::split(GModule sub, GModule quotient) {
  std::vector<IntMatrix> phi(sub.group()->order(), IntMatrix(sub.rank(), quotient.rank()));
  return ExtensionClass(std::move(sub), std::move(quotient), std::move(phi));
}

GModule ExtensionClass::middle() const {
  const std::size_t b = sub_.rank(), a = quotient_.rank();
  std::vector<IntMatrix> action;
  for (std::size_t g = 0; g < phi_.size(); ++g) {
    IntMatrix m(a + b, a + b);
    const IntMatrix corner = phi_[g] * quotient_.action(g);
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t j = 0; j < b; ++j) m(i, j) = sub_.action(g)(i, j);
      for (std::size_t j = 0; j < a; ++j) m(i, b + j) = corner(i, j);
    }
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < a; ++j) m(b + i, b + j) = quotient_.action(g)(i, j);
    action.push_back(std::move(m));
  }
  FpAbGroup coeffs(a + b, IntMatrix::block_diagonal(sub_.coeffs().relations,
                                                    quotient_.coeffs().relations));
  return GModule(sub_.group(), std::move(coeffs), std::move(action));
}

// ---------------------------------------------------------------------------
// ExtGroup

ExtGroup::ExtGroup(const GModule& m, const GModule& n)
    : hom_(std::make_shared<const HomModule>(m, n)),
      h1_(std::make_shared<const CohomologyGroup>(hom_->module())) {}

IntVector ExtGroup::cochain_of(const ExtensionClass& e) const {
  if (!(e.sub() == hom_->target()) || !(e.quotient() == hom_->source()))
    throw InvalidInput("extension does not belong to this Ext group");
  const std::size_t k = hom_->module().rank();
  IntVector cochain(h1_->cochain_size());
  for (std::size_t g = 0; g < e.phi().size(); ++g) {
    const IntVector c = hom_->coordinates_of(e.phi()[g]);
    std::copy(c.begin(), c.end(), cochain.begin() + static_cast<std::ptrdiff_t>(g * k));
  }
  return cochain;
}

IntVector ExtGroup::class_of(const ExtensionClass& e) const { return h1_->coordinates(cochain_of(e)); }

ExtensionClass ExtGroup::extension_from_cocycle(const IntVector& cochain) const {
  if (!h1_->is_cocycle(cochain)) throw InvalidInput("not a cocycle with values in Hom(M, N)");
  const std::size_t k = hom_->module().rank();
  std::vector<IntMatrix> phi;
  for (std::size_t g = 0; g < h1_->group()->order(); ++g) {
    IntVector c(cochain.begin() + static_cast<std::ptrdiff_t>(g * k),
                cochain.begin() + static_cast<std::ptrdiff_t>((g + 1) * k));
    phi.push_back(hom_->matrix_of(c));
  }
  return ExtensionClass(hom_->target(), hom_->source(), std::move(phi));
}

ExtensionClass ExtGroup::extension_from_class(const IntVector& coords) const {
  return extension_from_cocycle(h1_->class_representative(coords));
}

bool ExtGroup::is_split(const ExtensionClass& e) const {
  const IntVector c = class_of(e);
  return std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Functoriality

namespace {

void require_full_scope(const GModuleMap& f, const char* what) {
  if (f.scope() && f.scope()->index() != 1)
    throw InvalidInput(std::string(what) + " needs a map equivariant for the whole group");
}

}  // namespace

ExtensionClass pushout(const GModuleMap& alpha, const ExtensionClass& e) {
  require_full_scope(alpha, "pushout");
  if (!(alpha.source() == e.sub())) throw InvalidInput("pushout: map source is not the submodule");
  std::vector<IntMatrix> phi;
  for (const auto& f : e.phi()) phi.push_back(alpha.matrix() * f);
  return ExtensionClass(alpha.target(), e.quotient(), std::move(phi));
}

ExtensionClass pullback(const GModuleMap& beta, const ExtensionClass& e) {
  require_full_scope(beta, "pullback");
  if (!(beta.target() == e.quotient())) throw InvalidInput("pullback: map target is not the quotient");
  std::vector<IntMatrix> phi;
  for (const auto& f : e.phi()) phi.push_back(f * beta.matrix());
  return ExtensionClass(e.sub(), beta.source(), std::move(phi));
}

ExtensionClass res_ext(const Subgroup& h, const ExtensionClass& e) {
  std::vector<IntMatrix> phi;
  for (std::size_t x : h.elements()) phi.push_back(e.phi()[x]);
  return ExtensionClass(restrict_module(e.sub(), h), restrict_module(e.quotient(), h),
                        std::move(phi));
}

ExtensionClass induce_ext(const Subgroup& h, const ExtensionClass& e) {
  const GModule ind_e = induce_module(e.middle(), h);
  GModule ind_n = induce_module(e.sub(), h);
  GModule ind_m = induce_module(e.quotient(), h);
  const std::size_t b = e.sub().rank(), a = e.quotient().rank(), n = h.index();
  const std::size_t block = a + b;
  std::vector<IntMatrix> corner;
  for (std::size_t g = 0; g < h.parent()->order(); ++g) {
    const IntMatrix& act = ind_e.action(g);
    IntMatrix c(n * b, n * a);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t bi = 0; bi < b; ++bi)
          for (std::size_t ai = 0; ai < a; ++ai)
            c(j * b + bi, i * a + ai) = act(j * block + bi, i * block + b + ai);
    corner.push_back(std::move(c));
  }
  return ExtensionClass::from_block_action(std::move(ind_n), std::move(ind_m), corner);
}

ExtensionClass cores_ext(const Subgroup& h, const GModule& sub, const GModule& quotient,
                         const ExtensionClass& e) {
  if (!(restrict_module(sub, h) == e.sub()) || !(restrict_module(quotient, h) == e.quotient()))
    throw InvalidInput("corestriction needs an extension of restrictions of G-modules");
  const ExtensionClass induced = induce_ext(h, e);
  return pushout(ind_counit(sub, h), pullback(ind_unit(quotient, h), induced));
}

// ---------------------------------------------------------------------------
// Lemma 5.2 square

namespace {

// Postcomposition Hom(P, Q) -> Hom(P, R) with the matrix f, in Hom-module
// coordinates.
IntMatrix postcomposition(const HomModule& from, const HomModule& to, const IntMatrix& f) {
  const std::size_t k = from.module().rank();
  IntMatrix m(to.module().rank(), k);
  for (std::size_t j = 0; j < k; ++j) {
    IntVector e(k);
    e[j] = 1;
    m.set_column(j, to.coordinates_of(f * from.matrix_of(e)));
  }
  return m;
}

}  // namespace

Lemma52Report lemma52_check(const Subgroup& h, const GModule& p, const GModule& q,
                            const GModule& r, const IntMatrix& map) {
  const auto& g = h.parent();
  if (!same_group(p.group(), g) || !same_group(q.group(), g) || !same_group(r.group(), g))
    throw InvalidInput("P, Q, R must be modules over the subgroup's parent group");
  if (map.rows() != r.rank() || map.cols() != q.rank())
    throw InvalidInput("h has the wrong size for Q -> R");
  if (!GModuleMap::respects_relations(q, r, map))
    throw InvalidInput("h does not respect the coefficient relations");
  if (auto bad = GModuleMap::equivariance_violation(q, r, map, h.elements()))
    throw InvalidInput("h is not equivariant for the subgroup at element " + std::to_string(*bad));
  const Int n = static_cast<unsigned long>(h.index());
  const IntMatrix n_map = n * map;
  std::vector<std::size_t> all(g->order());
  for (std::size_t x = 0; x < all.size(); ++x) all[x] = x;
  if (auto bad = GModuleMap::equivariance_violation(q, r, n_map, all))
    throw InvalidInput("n h is not equivariant for the whole group at element " +
                       std::to_string(*bad));

  const ExtGroup ext_pq(p, q), ext_pr(p, r);
  const GModule ph = restrict_module(p, h), qh = restrict_module(q, h), rh = restrict_module(r, h);
  const ExtGroup ext_pq_h(ph, qh), ext_pr_h(ph, rh);

  const GModuleMap direct_map(ext_pq.hom().module(), ext_pr.hom().module(),
                              postcomposition(ext_pq.hom(), ext_pr.hom(), n_map));
  const CohMap direct = induced_map(direct_map, ext_pq.h1(), ext_pr.h1());

  const CohMap res = restriction_map(h, ext_pq.h1(), ext_pq_h.h1());
  const GModuleMap sub_map(ext_pq_h.hom().module(), ext_pr_h.hom().module(),
                           postcomposition(ext_pq_h.hom(), ext_pr_h.hom(), map));
  const CohMap push = induced_map(sub_map, ext_pq_h.h1(), ext_pr_h.h1());
  const CohMap cor = corestriction_map(h, ext_pr_h.h1(), ext_pr.h1());
  const CohMap via = compose(cor, compose(push, res));

  IntMatrix norm_of_map(r.rank(), q.rank());
  for (std::size_t rep : h.representatives())
    norm_of_map = norm_of_map + r.action(rep) * map * q.action(g->inverse(rep));
  const GModuleMap norm_module_map(ext_pq.hom().module(), ext_pr.hom().module(),
                                   postcomposition(ext_pq.hom(), ext_pr.hom(), norm_of_map));
  const CohMap via_norm = induced_map(norm_module_map, ext_pq.h1(), ext_pr.h1());

  Lemma52Report report;
  report.index = h.index();
  report.ext_pq = ext_pq.structure();
  report.ext_pr = ext_pr.structure();
  for (std::size_t j = 0; j < q.rank(); ++j)
    if (!r.equal_elements(norm_of_map.column(j), n_map.column(j))) report.norm_is_n_times_h = false;
  for (std::size_t j = 0; j < ext_pq.size(); ++j) {
    IntVector e(ext_pq.size());
    e[j] = 1;
    Lemma52Witness w{j, direct.apply(e), via.apply(e), via_norm.apply(e)};
    if (w.direct != w.via_subgroup) report.holds = false;
    if (w.via_norm != w.via_subgroup) report.norm_path_holds = false;
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

}  // namespace galcoh
