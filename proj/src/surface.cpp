#include "galcoh/surface.hpp"

#include <algorithm>

namespace galcoh {

namespace {

const GroupPtr& galois_group() {
  static const GroupPtr g = FiniteGroup::cyclic(2);
  return g;
}

void check_roots(const std::vector<AlgebraElement>& roots, std::size_t size) {
  if (roots.size() < 2) throw InvalidInput("the surface needs at least two roots e_i");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].size() != size) throw InvalidInput("root e_" + std::to_string(i + 1) + " is not in the base field");
    if (std::all_of(roots[i].begin(), roots[i].end(), [](const Rational& c) { return c == 0; }))
      throw InvalidInput("root e_" + std::to_string(i + 1) + " is zero");
    for (std::size_t j = 0; j < i; ++j)
      if (roots[i] == roots[j])
        throw InvalidInput("roots e_" + std::to_string(j + 1) + " and e_" + std::to_string(i + 1) + " coincide");
  }
}

AbelianMap scalar_on_pair(int delta) {
  return AbelianMap{{2, 2}, {2, 2}, Int(delta) * IntMatrix::identity(2)};
}

RuleApplication rule(std::string id, std::string description, std::vector<Fact> premises,
                     std::vector<Fact> conclusions) {
  return RuleApplication{std::move(id), std::move(description), std::move(premises), std::move(conclusions)};
}

void apply_degenerate(AnalysisReport& r) {
  r.brauer_l = "TRIVIAL_TARGET";
  r.chow_res = ChowVerdict::Zero;
  r.chow_cores = ChowVerdict::Injective;
  r.rule_trace.push_back(rule("R1", "sqrt(d) in L: the reduced Chow group over L is trivial",
                              {{"degenerate", "true"}},
                              {{"chow_res", "ZERO"}, {"chow_cores", "INJECTIVE"}}));
}

// Brauer-side maps to Chow-side verdicts (duality of the pairing).
void apply_duality_rules(AnalysisReport& r, const std::string& flavour) {
  const auto res = r.res_h1.verdict, cores = r.cores_h1.verdict;
  const auto surj = [](MapVerdict v) { return v == MapVerdict::Iso || v == MapVerdict::Surjective; };
  if (surj(res)) {
    r.chow_cores = ChowVerdict::Injective;
    r.rule_trace.push_back(rule("R2", "restriction on H^1 surjective => corestriction on Chow groups injective" + flavour,
                                {{"res_h1", to_string(res)}}, {{"chow_cores", "INJECTIVE"}}));
  } else if (res == MapVerdict::Zero) {
    r.chow_cores = ChowVerdict::Zero;
    r.rule_trace.push_back(rule("R2", "restriction on H^1 zero => corestriction on Chow groups zero" + flavour,
                                {{"res_h1", "ZERO"}}, {{"chow_cores", "ZERO"}}));
  }
  if (surj(cores)) {
    r.chow_res = ChowVerdict::Injective;
    r.rule_trace.push_back(rule("R3", "corestriction on H^1 surjective => restriction on Chow groups injective" + flavour,
                                {{"cores_h1", to_string(cores)}}, {{"chow_res", "INJECTIVE"}}));
  } else if (cores == MapVerdict::Zero) {
    r.chow_res = ChowVerdict::Zero;
    r.rule_trace.push_back(rule("R3", "corestriction on H^1 zero => restriction on Chow groups zero" + flavour,
                                {{"cores_h1", "ZERO"}}, {{"chow_res", "ZERO"}}));
  }
}

void apply_finiteness(AnalysisReport& r) {
  if (r.chow_res != ChowVerdict::Injective || r.chow_cores != ChowVerdict::Injective) return;
  r.chow_res = ChowVerdict::Bijective;
  r.chow_cores = ChowVerdict::Bijective;
  r.rule_trace.push_back(rule("R4", "the reduced Chow groups are finite: injective maps both ways are bijective",
                              {{"mode", "local"},
                               {"res_h1", to_string(r.res_h1.verdict)},
                               {"cores_h1", to_string(r.cores_h1.verdict)}},
                              {{"chow_res", "BIJECTIVE"}, {"chow_cores", "BIJECTIVE"}}));
}

void apply_parity(AnalysisReport& r, bool local) {
  const bool even = r.n % 2 == 0;
  const ChowVerdict odd_verdict = local ? ChowVerdict::Bijective : ChowVerdict::Injective;
  r.chow_res = even ? ChowVerdict::Zero : odd_verdict;
  r.chow_cores = even ? ChowVerdict::Injective : odd_verdict;
  r.rule_trace.push_back(rule("R5", "r > 2: verdicts from non-degeneracy and the parity of n",
                              {{"degenerate", "false"}, {"n_parity", r.n_parity()}},
                              {{"chow_res", to_string(r.chow_res)}, {"chow_cores", to_string(r.chow_cores)}}));
}

}  // namespace

ChateletSurface::ChateletSurface(LocalField k, AlgebraElement d, std::vector<AlgebraElement> roots)
    : base_(std::move(k)), d_(std::move(d)), roots_(std::move(roots)) {
  if (d_.size() != base_.degree()) throw InvalidInput("d is not an element of the base field");
  if (base_.algebra().is_zero(d_)) throw InvalidInput("d must be nonzero");
  if (base_.is_square(d_)) throw InvalidInput("d is a square in the base field");
  check_roots(roots_, base_.degree());
}

std::string to_string(MapVerdict v) {
  switch (v) {
    case MapVerdict::Iso: return "ISO";
    case MapVerdict::Zero: return "ZERO";
    case MapVerdict::Injective: return "INJECTIVE";
    case MapVerdict::Surjective: return "SURJECTIVE";
    case MapVerdict::Other: return "OTHER";
    case MapVerdict::NotComputed: return "NOT_COMPUTED";
  }
  return "?";
}

std::string to_string(ChowVerdict v) {
  switch (v) {
    case ChowVerdict::Zero: return "ZERO";
    case ChowVerdict::Injective: return "INJECTIVE";
    case ChowVerdict::Bijective: return "BIJECTIVE";
    case ChowVerdict::TrivialTarget: return "TRIVIAL_TARGET";
    case ChowVerdict::Unknown: return "UNKNOWN";
  }
  return "?";
}

bool implies_injective(ChowVerdict v) { return v == ChowVerdict::Injective || v == ChowVerdict::Bijective; }

MapVerdict classify(const AbelianMap& f) {
  if (f.is_isomorphism()) return MapVerdict::Iso;
  if (f.is_zero()) return MapVerdict::Zero;
  if (f.is_injective()) return MapVerdict::Injective;
  if (f.is_surjective()) return MapVerdict::Surjective;
  return MapVerdict::Other;
}

std::string AnalysisReport::field(const std::string& name) const {
  if (name == "mode") return mode;
  if (name == "degenerate") return !degenerate ? "unknown" : (*degenerate ? "true" : "false");
  if (name == "n_parity") return n_parity();
  if (name == "res_h1") return to_string(res_h1.verdict);
  if (name == "cores_h1") return to_string(cores_h1.verdict);
  if (name == "chow_res") return to_string(chow_res);
  if (name == "chow_cores") return to_string(chow_cores);
  if (name == "brauer_l") return brauer_l;
  throw InvalidInput("unknown report field " + name);
}

GModule picard_module(const ChateletSurface& s) {
  if (s.r() != 2)
    throw Unsupported("the Picard module is only modelled for r = 2; use analyze() for r > 2");
  return chatelet_picard_module(galois_group());
}

CohomologyPtr brauer_h1(const ChateletSurface& s, const LocalField& f) {
  if (!f.extends(s.base())) throw InvalidInput("field is not an extension of the surface's base field");
  const AlgebraElement d = f.algebra().embed(s.d(), f.levels());
  if (f.is_square(d)) throw DegenerateBranch("degenerate branch: d is a square in " + f.describe());
  return std::make_shared<const CohomologyGroup>(picard_module(s));
}

CohMap restriction_on_h1(const ChateletSurface& s, const LocalField& l) {
  const CohomologyPtr src = brauer_h1(s, s.base());
  const CohomologyPtr tgt = brauer_h1(s, l);
  // Each component sends the class of d in K^x/K^x2 to its class in L^x/L^x2.
  const int delta = l.is_square(l.algebra().embed(s.d(), l.levels())) ? 0 : 1;
  return CohMap(src, tgt, Int(delta) * IntMatrix::identity(src->size()), MapKind::Restriction);
}

CohMap corestriction_on_h1(const ChateletSurface& s, const LocalField& l) {
  const LocalField& k = s.base();
  const CohomologyPtr src = brauer_h1(s, l);
  const CohomologyPtr tgt = brauer_h1(s, k);
  const AlgebraElement norm = l.norm(l.algebra().embed(s.d(), l.levels()), k);
  int delta;
  if (k.is_square(norm)) delta = 0;
  else if (k.is_square(k.algebra().mul(norm, s.d()))) delta = 1;
  else throw Error("internal: N(d) is in neither square class of <d>");
  return CohMap(src, tgt, Int(delta) * IntMatrix::identity(src->size()), MapKind::Corestriction);
}

AnalysisReport analyze(const ChateletSurface& s, const LocalField& l) {
  const LocalField& k = s.base();
  if (!l.extends(k)) throw InvalidInput("L is not an extension of K in the same tower");
  AnalysisReport r;
  r.mode = "local";
  r.n = l.degree() / k.degree();
  r.assumptions.push_back("local duality for p-adic fields (finiteness of the groups involved)");
  r.brauer_k = s.r() == 2 ? brauer_h1(s, k)->structure().to_string() : "NOT_COMPUTED";
  const bool degenerate = l.is_square(l.algebra().embed(s.d(), l.levels()));
  r.degenerate = degenerate;
  if (degenerate) {
    apply_degenerate(r);
    return r;
  }
  if (s.r() != 2) {
    r.brauer_l = "NOT_COMPUTED";
    apply_parity(r, true);
    return r;
  }
  const CohMap res = restriction_on_h1(s, l);
  const CohMap cores = corestriction_on_h1(s, l);
  r.brauer_l = res.target()->structure().to_string();
  r.res_h1 = MapReport{classify(res.as_abelian()), res.as_abelian()};
  r.cores_h1 = MapReport{classify(cores.as_abelian()), cores.as_abelian()};
  apply_duality_rules(r, "");
  apply_finiteness(r);
  return r;
}

AnalysisReport analyze_number_field(const NumberFieldProblem& pr) {
  const TowerAlgebra& t = pr.tower;
  if (pr.base_levels > t.levels()) throw InvalidInput("K has more levels than L");
  const std::size_t kdeg = t.degree(pr.base_levels), top = t.levels();
  if (pr.d.size() != kdeg) throw InvalidInput("d is not an element of K");
  if (t.is_zero(pr.d)) throw InvalidInput("d must be nonzero");
  check_roots(pr.roots, kdeg);

  AnalysisReport r;
  r.mode = "number-field";
  r.n = t.degree() / kdeg;
  r.assumptions.push_back("K is a number field, so no degree-one 0-cycle hypothesis is needed");
  r.assumptions.push_back("the characteristic homomorphisms to Ext^1 are injective (external result, not re-derived)");

  const AlgebraElement d_l = t.embed(pr.d, top);
  bool k_certified = false;
  std::optional<bool> degenerate;
  if (pr.sqrt_witness) {
    const AlgebraElement& y = *pr.sqrt_witness;
    if (y.size() != t.degree()) throw InvalidInput("square-root witness is not an element of L");
    if (t.mul(y, y) != d_l) throw InvalidInput("square-root witness does not square to d");
    if (std::all_of(y.begin() + static_cast<std::ptrdiff_t>(kdeg), y.end(), [](const Rational& c) { return c == 0; }))
      throw InvalidInput("d is a square in K (witness lies in K)");
    degenerate = true;
  }
  for (const auto& c : pr.certificates) {
    if (c.kinds.size() < pr.base_levels || c.kinds.size() > top)
      throw InvalidInput("certificate must describe a completion of K or of an intermediate field of L/K");
    std::vector<TowerStep> steps;
    for (std::size_t i = 0; i < c.kinds.size(); ++i) steps.push_back(TowerStep{c.kinds[i], t.polynomial(i)});
    const LocalField completion(c.p, std::move(steps));
    const AlgebraElement d_c = t.embed(pr.d, c.kinds.size());
    if (completion.is_square(d_c)) {
      r.assumptions.push_back("certificate at p = " + std::to_string(c.p) + ": d is a square there (no information)");
      continue;
    }
    k_certified = true;
    if (c.kinds.size() == top) {
      if (degenerate && *degenerate) throw Error("internal: certificate contradicts square-root witness");
      degenerate = false;
    }
  }
  if (!k_certified) r.assumptions.push_back("d is not a square in K (asserted, no local certificate)");
  r.degenerate = degenerate;
  if (!degenerate) {
    r.brauer_k = pr.roots.size() == 2 ? "Z/2 + Z/2" : "NOT_COMPUTED";
    r.brauer_l = "NOT_COMPUTED";
    r.assumptions.push_back("neither a square-root witness nor a nonsquare certificate for d in L: verdicts UNKNOWN");
    return r;
  }
  if (pr.roots.size() == 2)
    r.brauer_k = CohomologyGroup(chatelet_picard_module(galois_group())).structure().to_string();
  else
    r.brauer_k = "NOT_COMPUTED";
  if (*degenerate) {
    apply_degenerate(r);
    return r;
  }
  if (pr.roots.size() != 2) {
    r.brauer_l = "NOT_COMPUTED";
    apply_parity(r, false);
    return r;
  }
  r.brauer_l = r.brauer_k;
  // d stays a nonsquare in L (certified), so restriction is the identity;
  // the norm sends d to d^n, a square exactly when n is even.
  const AlgebraElement norm = t.norm(d_l, pr.base_levels);
  if (norm != t.pow(pr.d, r.n)) throw Error("internal: N(d) != d^n");
  const AbelianMap res = scalar_on_pair(1), cores = scalar_on_pair(r.n % 2 == 0 ? 0 : 1);
  r.res_h1 = MapReport{classify(res), res};
  r.cores_h1 = MapReport{classify(cores), cores};
  apply_duality_rules(r, " (number-field form, via Ext^1)");
  return r;
}

}  // namespace galcoh
