#include "galcoh/cohomology.hpp"

#include <algorithm>
#include <stdexcept>

#include "galcoh/errors.hpp"

namespace galcoh {

namespace {

std::vector<IntMatrix> diagonal_actions(const GModule& m) {
  const auto& d = m.diagonal();
  std::vector<IntMatrix> out;
  out.reserve(m.actions().size());
  for (const auto& a : m.actions()) out.push_back(d.to_diagonal * a * d.from_diagonal);
  return out;
}

bool vanishes_mod(const IntVector& v, const IntVector& moduli) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (moduli[i] == 1) continue;
    if (moduli[i] == 0 ? v[i] != 0 : !mpz_divisible_p(v[i].get_mpz_t(), moduli[i].get_mpz_t()))
      return false;
  }
  return true;
}

IntVector slot(const IntVector& cochain, std::size_t g, std::size_t r) {
  return IntVector(cochain.begin() + static_cast<std::ptrdiff_t>(g * r),
                   cochain.begin() + static_cast<std::ptrdiff_t>((g + 1) * r));
}

}  // namespace

// ---------------------------------------------------------------------------
// H^0

Invariants h0(const GModule& m) {
  const auto& d = m.diagonal();
  const std::size_t r = m.rank();
  const auto diag = diagonal_actions(m);
  std::vector<IntVector> rows;
  IntVector moduli;
  for (std::size_t s : m.group()->generators()) {
    const IntMatrix diff = diag[s] - IntMatrix::identity(r);
    for (std::size_t i = 0; i < r; ++i) {
      rows.push_back(diff.row(i));
      moduli.push_back(d.moduli[i]);
    }
  }
  const IntMatrix fixed = rows.empty() ? IntMatrix::identity(r)
                                       : kernel_mod(IntMatrix::from_rows(rows, r), moduli);
  std::vector<IntVector> rel;
  for (std::size_t i = 0; i < r; ++i)
    if (d.moduli[i] != 0) {
      IntVector v(r);
      v[i] = d.moduli[i];
      rel.push_back(std::move(v));
    }
  const Subquotient q(fixed, IntMatrix::from_columns(rel, r));
  Invariants out{FpAbGroup::cyclic_sum(q.invariants()), {}};
  for (std::size_t j = 0; j < q.size(); ++j)
    out.generators.push_back(d.from_diagonal.apply(q.generator(j)));
  return out;
}

// ---------------------------------------------------------------------------
// H^1 via cocycles

CohomologyGroup::CohomologyGroup(GModule m) : module_(std::move(m)) {
  const auto& group = *module_.group();
  const auto& d = module_.diagonal();
  const std::size_t n = group.order(), r = module_.rank();
  const auto& gens = group.generators();
  const std::size_t params = gens.size() * r;
  diag_action_ = diagonal_actions(module_);

  auto gen_slot = [&](std::size_t s) {
    return static_cast<std::size_t>(std::find(gens.begin(), gens.end(), s) - gens.begin());
  };

  // c(g s) = c(g) + g c(s) along the breadth-first words.
  std::vector<IntMatrix> value(n, IntMatrix(r, params));
  for (std::size_t g : group.bfs_order()) {
    if (g == 0) continue;
    const std::size_t p = group.word_parent(g);
    const std::size_t k = gen_slot(group.word_generator(g));
    IntMatrix v = value[p];
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) v(a, k * r + b) += diag_action_[p](a, b);
    value[g] = std::move(v);
  }
  extend_ = IntMatrix(n * r, params);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t c = 0; c < params; ++c) extend_(g * r + a, c) = value[g](a, c);

  std::vector<IntVector> rows;
  IntVector moduli;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      IntMatrix defect = value[group.mul(g, gens[k])] - value[g];
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) defect(a, k * r + b) -= diag_action_[g](a, b);
      if (defect.is_zero()) continue;
      for (std::size_t a = 0; a < r; ++a) {
        rows.push_back(defect.row(a));
        moduli.push_back(d.moduli[a]);
      }
    }
  const IntMatrix cocycles = rows.empty() ? IntMatrix::identity(params)
                                          : kernel_mod(IntMatrix::from_rows(rows, params), moduli);

  std::vector<IntVector> boundaries;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector v(params);
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (std::size_t a = 0; a < r; ++a)
        v[k * r + a] = diag_action_[gens[k]](a, i) - (a == i ? 1 : 0);
    boundaries.push_back(std::move(v));
  }
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t i = 0; i < r; ++i)
      if (d.moduli[i] != 0) {
        IntVector v(params);
        v[k * r + i] = d.moduli[i];
        boundaries.push_back(std::move(v));
      }
  quotient_ = Subquotient(cocycles, IntMatrix::from_columns(boundaries, params));
}

bool CohomologyGroup::is_finite() const {
  return std::none_of(invariants().begin(), invariants().end(), [](const Int& d) { return d == 0; });
}

std::size_t CohomologyGroup::cochain_size() const { return group()->order() * module_.rank(); }

IntVector CohomologyGroup::class_representative(const IntVector& coords) const {
  if (coords.size() != size()) throw InvalidInput("class coordinates have wrong length");
  IntVector params(extend_.cols());
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] == 0) continue;
    const IntVector g = quotient_.generator(j);
    for (std::size_t t = 0; t < params.size(); ++t) params[t] += coords[j] * g[t];
  }
  const IntVector diag = extend_.apply(params);
  const std::size_t r = module_.rank();
  const auto& back = module_.diagonal().from_diagonal;
  IntVector out(cochain_size());
  for (std::size_t g = 0; g < group()->order(); ++g) {
    const IntVector x = back.apply(slot(diag, g, r));
    std::copy(x.begin(), x.end(), out.begin() + static_cast<std::ptrdiff_t>(g * r));
  }
  return out;
}

IntVector CohomologyGroup::representative(std::size_t j) const {
  IntVector e(size());
  e.at(j) = 1;
  return class_representative(e);
}

bool CohomologyGroup::is_cocycle(const IntVector& cochain) const {
  if (cochain.size() != cochain_size()) throw InvalidInput("cochain has wrong length");
  const auto& group = *this->group();
  const auto& d = module_.diagonal();
  const std::size_t n = group.order(), r = module_.rank();
  std::vector<IntVector> y(n);
  for (std::size_t g = 0; g < n; ++g) y[g] = d.to_diagonal.apply(slot(cochain, g, r));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t s : group.generators()) {
      IntVector defect = y[group.mul(g, s)];
      const IntVector gs = diag_action_[g].apply(y[s]);
      for (std::size_t a = 0; a < r; ++a) defect[a] -= y[g][a] + gs[a];
      if (!vanishes_mod(defect, d.moduli)) return false;
    }
  return vanishes_mod(y[0], d.moduli);
}

IntVector CohomologyGroup::coboundary(const IntVector& m) const {
  const std::size_t r = module_.rank();
  IntVector out(cochain_size());
  for (std::size_t g = 0; g < group()->order(); ++g) {
    const IntVector gm = module_.action(g).apply(m);
    for (std::size_t a = 0; a < r; ++a) out[g * r + a] = gm[a] - m[a];
  }
  return out;
}

std::vector<IntVector> CohomologyGroup::coboundary_generators() const {
  const std::size_t r = module_.rank();
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r);
    e[i] = 1;
    out.push_back(coboundary(e));
  }
  const IntMatrix& rel = module_.coeffs().relations;
  for (std::size_t g = 0; g < group()->order(); ++g)
    for (std::size_t q = 0; q < rel.cols(); ++q) {
      IntVector v(cochain_size());
      for (std::size_t a = 0; a < r; ++a) v[g * r + a] = rel(a, q);
      out.push_back(std::move(v));
    }
  return out;
}

IntVector CohomologyGroup::to_parameters(const IntVector& cochain) const {
  const auto& gens = group()->generators();
  const std::size_t r = module_.rank();
  IntVector p(gens.size() * r);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const IntVector y = module_.diagonal().to_diagonal.apply(slot(cochain, gens[k], r));
    std::copy(y.begin(), y.end(), p.begin() + static_cast<std::ptrdiff_t>(k * r));
  }
  return p;
}

IntVector CohomologyGroup::coordinates(const IntVector& cochain) const {
  if (!is_cocycle(cochain)) throw InvalidInput("cochain is not a cocycle");
  auto c = quotient_.coordinates(to_parameters(cochain));
  if (!c) throw std::logic_error("cocycle outside the cocycle lattice");
  return *c;
}

bool CohomologyGroup::is_coboundary(const IntVector& cochain) const {
  const IntVector c = coordinates(cochain);
  return std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
}

CokernelStructure h1_cyclic(const GModule& m) {
  const long sigma = m.group()->cyclic_generator();
  if (sigma < 0) throw InvalidInput("h1_cyclic needs a cyclic group");
  const auto& d = m.diagonal();
  const std::size_t r = m.rank(), n = m.group()->order();
  const auto diag = diagonal_actions(m);
  IntMatrix norm(r, r);
  for (std::size_t k = 0; k < n; ++k)
    norm = norm + diag[m.group()->power(static_cast<std::size_t>(sigma), static_cast<long>(k))];
  const IntMatrix kernel = kernel_mod(norm, d.moduli);
  const IntMatrix diff = diag[static_cast<std::size_t>(sigma)] - IntMatrix::identity(r);
  std::vector<IntVector> image = diff.columns();
  for (std::size_t i = 0; i < r; ++i)
    if (d.moduli[i] != 0) {
      IntVector v(r);
      v[i] = d.moduli[i];
      image.push_back(std::move(v));
    }
  return Subquotient(kernel, IntMatrix::from_columns(image, r)).structure();
}

// ---------------------------------------------------------------------------
// Abelian maps

AbelianMap AbelianMap::reduced() const {
  AbelianMap out = *this;
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j = 0; j < matrix.cols(); ++j)
      out.matrix(i, j) = reduce_mod(matrix(i, j), target_invariants[i]);
  return out;
}

bool AbelianMap::is_zero() const { return reduced().matrix.is_zero(); }

bool AbelianMap::is_injective() const {
  const std::size_t k = source_invariants.size();
  if (k == 0) return true;
  const IntMatrix kernel = target_invariants.empty() ? IntMatrix::identity(k)
                                                     : kernel_mod(matrix, target_invariants);
  for (std::size_t j = 0; j < kernel.cols(); ++j)
    for (std::size_t i = 0; i < k; ++i) {
      const Int& a = source_invariants[i];
      const Int& x = kernel(i, j);
      if (a == 0 ? x != 0 : !mpz_divisible_p(x.get_mpz_t(), a.get_mpz_t())) return false;
    }
  return true;
}

bool AbelianMap::is_surjective() const {
  const std::size_t m = target_invariants.size();
  std::vector<IntVector> cols = matrix.columns();
  for (std::size_t i = 0; i < m; ++i)
    if (target_invariants[i] != 0) {
      IntVector v(m);
      v[i] = target_invariants[i];
      cols.push_back(std::move(v));
    }
  return cokernel_structure(IntMatrix::from_columns(cols, m)).is_trivial();
}

bool operator==(const AbelianMap& a, const AbelianMap& b) {
  return a.source_invariants == b.source_invariants &&
         a.target_invariants == b.target_invariants && a.reduced().matrix == b.reduced().matrix;
}

AbelianMap compose(const AbelianMap& f, const AbelianMap& g) {
  if (f.source_invariants != g.target_invariants)
    throw InvalidInput("composing maps with mismatched groups");
  return AbelianMap{g.source_invariants, f.target_invariants, f.matrix * g.matrix}.reduced();
}

AbelianMap dual_map(const AbelianMap& f) {
  auto finite = [](const IntVector& v) {
    return std::none_of(v.begin(), v.end(), [](const Int& d) { return d == 0; });
  };
  if (!finite(f.source_invariants) || !finite(f.target_invariants))
    throw InvalidInput("duals are only taken of finite groups");
  const AbelianMap r = f.reduced();
  const std::size_t k = f.source_invariants.size(), m = f.target_invariants.size();
  // chi_j o f = sum_i (m_ji a_i / b_j) psi_i in the dual bases.
  IntMatrix dual(k, m);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Int num = r.matrix(j, i) * f.source_invariants[i];
      if (!mpz_divisible_p(num.get_mpz_t(), f.target_invariants[j].get_mpz_t()))
        throw InvalidInput("map is not well defined on the cyclic decomposition");
      dual(i, j) = reduce_mod(num / f.target_invariants[j], f.source_invariants[i]);
    }
  return AbelianMap{f.target_invariants, f.source_invariants, dual};
}

// ---------------------------------------------------------------------------
// CohMap

std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::Identity: return "identity";
    case MapKind::Restriction: return "restriction";
    case MapKind::Corestriction: return "corestriction";
    case MapKind::Induced: return "induced-by-module-map";
    case MapKind::Scalar: return "scalar";
    case MapKind::Composite: return "composite";
    case MapKind::TransposeDual: return "transpose-dual";
  }
  return "unknown";
}

CohMap::CohMap(CohomologyPtr source, CohomologyPtr target, const CochainMap& on_cochains,
               MapKind kind)
    : source_(std::move(source)), target_(std::move(target)), kind_(kind) {
  matrix_ = IntMatrix(target_->size(), source_->size());
  for (std::size_t j = 0; j < source_->size(); ++j) {
    const IntVector image = on_cochains(source_->representative(j));
    if (!target_->is_cocycle(image))
      throw std::logic_error(to_string(kind) + " map does not send cocycles to cocycles");
    matrix_.set_column(j, target_->coordinates(image));
  }
  for (const auto& b : source_->coboundary_generators()) {
    const IntVector image = on_cochains(b);
    if (!target_->is_cocycle(image) || !target_->is_coboundary(image))
      throw std::logic_error(to_string(kind) + " map does not send coboundaries to coboundaries");
  }
}

CohMap::CohMap(CohomologyPtr source, CohomologyPtr target, IntMatrix matrix, MapKind kind)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)), kind_(kind) {
  if (matrix_.rows() != target_->size() || matrix_.cols() != source_->size())
    throw InvalidInput("cohomology map matrix has wrong size");
  matrix_ = as_abelian().reduced().matrix;
}

IntVector CohMap::apply(const IntVector& coords) const {
  return target_->reduce(matrix_.apply(coords));
}

AbelianMap CohMap::as_abelian() const {
  return AbelianMap{source_->invariants(), target_->invariants(), matrix_};
}

bool CohMap::same_as(const CohMap& other) const { return as_abelian() == other.as_abelian(); }

CohMap compose(const CohMap& f, const CohMap& g) {
  if (f.source()->invariants() != g.target()->invariants())
    throw InvalidInput("composing cohomology maps with mismatched groups");
  return CohMap(g.source(), f.target(), f.matrix() * g.matrix(), MapKind::Composite);
}

CohMap identity_map(const CohomologyPtr& c) {
  return CohMap(c, c, IntMatrix::identity(c->size()), MapKind::Identity);
}

CohMap scalar_map(const CohomologyPtr& c, const Int& n) {
  return CohMap(c, c, n * IntMatrix::identity(c->size()), MapKind::Scalar);
}

CohMap restriction_map(const Subgroup& h, const CohomologyPtr& source, const CohomologyPtr& target) {
  if (!same_group(source->group(), h.parent()) || !same_group(target->group(), h.group()))
    throw InvalidInput("restriction: groups do not match the subgroup");
  if (!(restrict_module(source->module(), h) == target->module()))
    throw InvalidInput("restriction: target module is not the restricted module");
  const std::size_t r = source->module().rank();
  auto on_cochains = [&](const IntVector& c) {
    IntVector out(target->cochain_size());
    for (std::size_t i = 0; i < h.elements().size(); ++i)
      for (std::size_t a = 0; a < r; ++a) out[i * r + a] = c[h.to_parent(i) * r + a];
    return out;
  };
  return CohMap(source, target, on_cochains, MapKind::Restriction);
}

CohMap restriction_map(const Subgroup& h, const GModule& m) {
  auto src = std::make_shared<const CohomologyGroup>(m);
  auto tgt = std::make_shared<const CohomologyGroup>(restrict_module(m, h));
  return restriction_map(h, src, tgt);
}

CohMap corestriction_map(const Subgroup& h, const CohomologyPtr& source, const CohomologyPtr& target) {
  if (!same_group(source->group(), h.group()) || !same_group(target->group(), h.parent()))
    throw InvalidInput("corestriction: groups do not match the subgroup");
  if (!(restrict_module(target->module(), h) == source->module()))
    throw InvalidInput("corestriction: source module is not the restricted module");
  const GModule& m = target->module();
  const std::size_t r = m.rank(), n = h.parent()->order();
  auto on_cochains = [&](const IntVector& c) {
    IntVector out(target->cochain_size());
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t i = 0; i < h.index(); ++i) {
        const auto [j, hh] = h.act_on_coset(g, i);
        const std::size_t local = static_cast<std::size_t>(h.to_local(hh));
        const IntVector v = m.action(h.representatives()[j]).apply(slot(c, local, r));
        for (std::size_t a = 0; a < r; ++a) out[g * r + a] += v[a];
      }
    return out;
  };
  return CohMap(source, target, on_cochains, MapKind::Corestriction);
}

CohMap corestriction_map(const Subgroup& h, const GModule& m) {
  auto src = std::make_shared<const CohomologyGroup>(restrict_module(m, h));
  auto tgt = std::make_shared<const CohomologyGroup>(m);
  return corestriction_map(h, src, tgt);
}

CohMap induced_map(const GModuleMap& f, const CohomologyPtr& source, const CohomologyPtr& target) {
  if (f.scope() && f.scope()->index() != 1)
    throw InvalidInput("induced map needs a map equivariant for the whole group");
  if (!(source->module() == f.source()) || !(target->module() == f.target()))
    throw InvalidInput("induced map: cohomology groups do not match the map");
  const std::size_t rs = f.source().rank(), rt = f.target().rank();
  const std::size_t n = source->group()->order();
  auto on_cochains = [&](const IntVector& c) {
    IntVector out(n * rt);
    for (std::size_t g = 0; g < n; ++g) {
      const IntVector v = f.matrix().apply(slot(c, g, rs));
      std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(g * rt));
    }
    return out;
  };
  return CohMap(source, target, on_cochains, MapKind::Induced);
}

CohMap induced_map(const GModuleMap& f) {
  return induced_map(f, std::make_shared<const CohomologyGroup>(f.source()),
                     std::make_shared<const CohomologyGroup>(f.target()));
}

FpAbGroup dual_group(const CohomologyGroup& c) {
  if (!c.is_finite()) throw InvalidInput("dual of an infinite cohomology group");
  return FpAbGroup::cyclic_sum(c.invariants());
}

AbelianMap dual_map(const CohMap& f) { return dual_map(f.as_abelian()); }

}  // namespace galcoh
