#include "galcoh/jobs.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "galcoh/errors.hpp"
#include "galcoh/samples.hpp"
#include "galcoh/surface.hpp"

namespace galcoh {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Path-aware access to the input document

class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const json& raw() const { return *j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const { throw SchemaError(path_ + ": " + what); }

  void expect_object() const {
    if (!j_->is_object()) fail("expected an object");
  }
  void expect_array() const {
    if (!j_->is_array()) fail("expected an array");
  }
  void allow(std::initializer_list<const char*> keys) const {
    expect_object();
    for (const auto& [k, v] : j_->items()) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
        fail("unknown field '" + k + "'");
    }
  }
  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }
  Node at(const char* key) const {
    expect_object();
    if (!j_->contains(key)) fail(std::string("missing field '") + key + "'");
    return Node((*j_)[key], path_ + "." + key);
  }
  std::optional<Node> get(const char* key) const {
    if (!has(key)) return std::nullopt;
    return Node((*j_)[key], path_ + "." + key);
  }
  std::size_t size() const {
    expect_array();
    return j_->size();
  }
  Node operator[](std::size_t i) const {
    expect_array();
    return Node((*j_)[i], path_ + "[" + std::to_string(i) + "]");
  }

  Int as_int() const {
    if (j_->is_number_integer()) {
      if (j_->is_number_unsigned()) return Int(std::to_string(j_->get<std::uint64_t>()));
      return Int(std::to_string(j_->get<std::int64_t>()));
    }
    if (j_->is_string()) {
      const std::string s = j_->get<std::string>();
      const std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
      if (s.size() > start && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                                          [](char c) { return c >= '0' && c <= '9'; }))
        return Int(s[0] == '+' ? s.substr(1) : s);
    }
    fail("expected an integer");
  }
  long as_long(long lo, long hi) const {
    const Int v = as_int();
    if (v < lo || v > hi) fail("value out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v.get_si();
  }
  std::string as_string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }
  bool as_bool() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }
  // Element expressions may be given as strings or plain integers.
  std::string as_expression() const {
    if (j_->is_string()) return j_->get<std::string>();
    if (j_->is_number_integer()) return as_int().get_str();
    fail("expected an element (string expression or integer)");
  }

 private:
  const json* j_;
  std::string path_;
};

json to_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

json to_json(const CokernelStructure& c) {
  json o;
  o["structure"] = c.to_string();
  o["free_rank"] = c.free_rank;
  o["torsion"] = to_json(c.torsion);
  o["order"] = c.order() == 0 ? json("infinite") : to_json(c.order());
  return o;
}

std::string verdict_of(const AbelianMap& f) { return to_string(classify(f)); }

json to_json(const AbelianMap& f) {
  json o;
  o["verdict"] = verdict_of(f);
  o["source_invariants"] = to_json(f.source_invariants);
  o["target_invariants"] = to_json(f.target_invariants);
  o["matrix"] = to_json(f.matrix);
  return o;
}

// ---------------------------------------------------------------------------
// Input builders

IntMatrix parse_matrix(const Node& n) {
  const std::size_t rows = n.size();
  if (rows == 0) n.fail("matrix must have at least one row");
  const std::size_t cols = n[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Node row = n[i];
    if (row.size() != cols) row.fail("rows of different length");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = row[j].as_int();
  }
  return m;
}

IntVector parse_vector(const Node& n) {
  IntVector v;
  for (std::size_t i = 0; i < n.size(); ++i) v.push_back(n[i].as_int());
  return v;
}

std::vector<std::size_t> parse_elements(const Node& n, const GroupPtr& g) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n.size(); ++i)
    out.push_back(static_cast<std::size_t>(n[i].as_long(0, static_cast<long>(g->order()) - 1)));
  return out;
}

GroupPtr parse_group(const Node& n) {
  n.allow({"cyclic", "dihedral", "permutations", "named", "product"});
  if (n.raw().size() != 1) n.fail("give exactly one of cyclic, dihedral, permutations, named, product");
  if (auto c = n.get("cyclic")) return FiniteGroup::cyclic(static_cast<std::size_t>(c->as_long(1, 100000)));
  if (auto c = n.get("dihedral")) return dihedral_group(static_cast<std::size_t>(c->as_long(2, 10000)));
  if (auto c = n.get("permutations")) {
    std::vector<std::vector<std::size_t>> gens;
    for (std::size_t i = 0; i < c->size(); ++i) {
      const Node p = (*c)[i];
      std::vector<std::size_t> perm;
      for (std::size_t j = 0; j < p.size(); ++j) perm.push_back(static_cast<std::size_t>(p[j].as_long(0, 1000)));
      gens.push_back(std::move(perm));
    }
    if (gens.empty()) c->fail("at least one permutation required");
    return FiniteGroup::from_permutations(gens);
  }
  if (auto c = n.get("named")) {
    const std::string name = c->as_string();
    if (name == "S3") return symmetric_group_3();
    if (name == "Q8") return quaternion_group();
    if (name == "A4") return alternating_group_4();
    if (name == "D4") return dihedral_group(4);
    if (name == "D6") return dihedral_group(6);
    if (name == "Z2xZ2") return FiniteGroup::direct_product(*FiniteGroup::cyclic(2), *FiniteGroup::cyclic(2));
    if (name == "Z2xZ6") return FiniteGroup::direct_product(*FiniteGroup::cyclic(2), *FiniteGroup::cyclic(6));
    c->fail("unknown group name '" + name + "' (S3, Q8, A4, D4, D6, Z2xZ2, Z2xZ6)");
  }
  const Node c = n.at("product");
  if (c.size() != 2) c.fail("product takes two groups");
  return FiniteGroup::direct_product(*parse_group(c[0]), *parse_group(c[1]));
}

Subgroup parse_subgroup(const Node& n, const GroupPtr& g) {
  return Subgroup::generated_by(g, parse_elements(n, g));
}

GModule parse_module(const Node& n, const GroupPtr& g);

GModule explicit_module(const Node& n, const GroupPtr& g) {
  n.allow({"rank", "relations", "action"});
  const std::size_t rank = static_cast<std::size_t>(n.at("rank").as_long(0, 64));
  IntMatrix rels(rank, 0);
  if (auto r = n.get("relations")) {
    std::vector<IntVector> cols;
    for (std::size_t i = 0; i < r->size(); ++i) {
      IntVector v = parse_vector((*r)[i]);
      if (v.size() != rank) (*r)[i].fail("relation must have one entry per generator");
      cols.push_back(std::move(v));
    }
    if (!cols.empty()) rels = IntMatrix::from_columns(cols, rank);
  }
  std::map<std::size_t, IntMatrix> given;
  const Node act = n.at("action");
  for (std::size_t i = 0; i < act.size(); ++i) {
    const Node entry = act[i];
    entry.allow({"element", "matrix"});
    const auto el = static_cast<std::size_t>(entry.at("element").as_long(0, static_cast<long>(g->order()) - 1));
    IntMatrix m = parse_matrix(entry.at("matrix"));
    if (m.rows() != rank || m.cols() != rank) entry.fail("action matrix must be rank x rank");
    given[el] = std::move(m);
  }
  // Close the listed elements under multiplication: rho(g s) = rho(g) rho(s).
  std::vector<std::optional<IntMatrix>> action(g->order());
  action[0] = IntMatrix::identity(rank);
  std::vector<std::size_t> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& [s, a] : given) {
      const std::size_t gs = g->mul(queue[k], s);
      if (action[gs]) continue;
      action[gs] = *action[queue[k]] * a;
      queue.push_back(gs);
    }
  std::vector<IntMatrix> full;
  for (std::size_t x = 0; x < g->order(); ++x) {
    if (!action[x]) throw InvalidInput(n.path() + ": the listed elements do not generate the group");
    full.push_back(*action[x]);
  }
  if (given.count(0) && !(given.at(0) == IntMatrix::identity(rank)))
    throw InvalidInput(n.path() + ": the identity must act trivially");
  return GModule(g, FpAbGroup(rank, rels), std::move(full));
}

GModule builtin_module(const Node& n, const GroupPtr& g) {
  const std::string kind = n.at("builtin").as_string();
  auto modulus = [&]() { return n.has("modulus") ? n.at("modulus").as_int() : Int(0); };
  if (kind == "chatelet") {
    n.allow({"builtin"});
    return chatelet_picard_module(g);
  }
  if (kind == "regular") {
    n.allow({"builtin"});
    return regular_module(g);
  }
  if (kind == "trivial") {
    n.allow({"builtin", "rank", "torsion"});
    if (auto t = n.get("torsion")) return trivial_module(g, FpAbGroup::cyclic_sum(parse_vector(*t)));
    return trivial_module(g, static_cast<std::size_t>(n.has("rank") ? n.at("rank").as_long(0, 64) : 1));
  }
  if (kind == "sign") {
    n.allow({"builtin", "kernel", "modulus"});
    return sign_module(parse_subgroup(n.at("kernel"), g), modulus());
  }
  if (kind == "permutation") {
    n.allow({"builtin", "subgroup", "modulus"});
    return permutation_module(parse_subgroup(n.at("subgroup"), g), modulus());
  }
  n.at("builtin").fail("unknown builtin module '" + kind + "' (chatelet, regular, trivial, sign, permutation)");
}

GModule parse_module(const Node& n, const GroupPtr& g) {
  n.expect_object();
  if (n.has("builtin")) return builtin_module(n, g);
  if (n.has("sum")) {
    n.allow({"sum"});
    const Node s = n.at("sum");
    if (s.size() == 0) s.fail("empty sum");
    GModule m = parse_module(s[0], g);
    for (std::size_t i = 1; i < s.size(); ++i) m = direct_sum(m, parse_module(s[i], g));
    return m;
  }
  return explicit_module(n, g);
}

StepKind parse_kind(const Node& n) {
  const std::string k = n.as_string();
  if (k == "eisenstein") return StepKind::Eisenstein;
  if (k == "unramified") return StepKind::Unramified;
  n.fail("kind must be 'eisenstein' or 'unramified'");
}

TowerPolynomial parse_polynomial(const Node& n, const TowerAlgebra& below) {
  TowerPolynomial f;
  for (std::size_t i = 0; i < n.size(); ++i) f.push_back(below.parse(n[i].as_expression(), below.levels()));
  if (f.size() < 2) n.fail("polynomial needs degree at least 1");
  return f;
}

LocalField extend_local(LocalField k, const Node& steps) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Node s = steps[i];
    s.allow({"kind", "poly", "degree"});
    const StepKind kind = parse_kind(s.at("kind"));
    TowerPolynomial f;
    if (s.has("poly")) {
      if (s.has("degree")) s.fail("give either poly or degree");
      f = parse_polynomial(s.at("poly"), k.algebra());
    } else {
      const auto n = static_cast<std::size_t>(s.at("degree").as_long(1, 64));
      f = kind == StepKind::Eisenstein ? eisenstein_polynomial(k, n) : find_unramified_polynomial(k, n);
    }
    k = k.extended(TowerStep{kind, std::move(f)});
  }
  return k;
}

LocalField parse_local_field(const Node& n, long precision) {
  n.allow({"p", "tower"});
  const auto p = static_cast<unsigned long>(n.at("p").as_long(2, 1L << 30));
  LocalField k(p, {}, Precision{precision, 4096});
  if (auto t = n.get("tower")) k = extend_local(std::move(k), *t);
  return k;
}

TowerAlgebra extend_algebra(TowerAlgebra t, const Node& steps) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Node s = steps[i];
    s.allow({"poly"});
    auto polys = t.polynomials();
    polys.push_back(parse_polynomial(s.at("poly"), t));
    t = TowerAlgebra(std::move(polys));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Jobs

json job_snf(const Node& job) {
  job.allow({"type", "id", "matrix"});
  const IntMatrix a = parse_matrix(job.at("matrix"));
  const SmithDecomposition s = smith_normal_form(a);
  const IntVector diag = s.diagonal();
  json r;
  r["invariant_factors"] = to_json(IntVector(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(s.rank)));
  r["rank"] = s.rank;
  r["cokernel"] = to_json(cokernel_structure(a));
  r["S"] = to_json(s.S);
  r["U"] = to_json(s.U);
  r["V"] = to_json(s.V);
  r["verified"] = s.U * a * s.V == s.S;
  return r;
}

json job_h1(const Node& job) {
  job.allow({"type", "id", "group", "module", "subgroup"});
  const GroupPtr g = parse_group(job.at("group"));
  const GModule m = parse_module(job.at("module"), g);
  const auto h1 = std::make_shared<const CohomologyGroup>(m);
  json r = to_json(h1->structure());
  r["invariants"] = to_json(h1->invariants());
  r["group_order"] = g->order();
  if (g->cyclic_generator() >= 0) {
    const CokernelStructure c = h1_cyclic(m);
    r["cyclic_formula"] = c.to_string();
    r["cyclic_formula_agrees"] = c == h1->structure();
  }
  if (auto sub = job.get("subgroup")) {
    const Subgroup h = parse_subgroup(*sub, g);
    const auto h1h = std::make_shared<const CohomologyGroup>(restrict_module(m, h));
    const CohMap res = restriction_map(h, h1, h1h);
    const CohMap cor = corestriction_map(h, h1h, h1);
    r["index"] = h.index();
    r["h1_subgroup"] = h1h->structure().to_string();
    r["restriction"] = to_json(res.as_abelian());
    r["corestriction"] = to_json(cor.as_abelian());
    r["cor_res_is_index"] = compose(cor, res).same_as(scalar_map(h1, Int(static_cast<unsigned long>(h.index()))));
  }
  return r;
}

json lemma52_json(const Lemma52Report& rep) {
  json r;
  r["holds"] = rep.holds;
  r["index"] = rep.index;
  r["ext_pq"] = rep.ext_pq.to_string();
  r["ext_pr"] = rep.ext_pr.to_string();
  json w = json::array();
  for (const auto& x : rep.witnesses) {
    json o;
    o["generator"] = x.generator;
    o["direct"] = to_json(x.direct);
    o["via_subgroup"] = to_json(x.via_subgroup);
    o["via_norm"] = to_json(x.via_norm);
    w.push_back(std::move(o));
  }
  r["witnesses"] = std::move(w);
  r["norm_path_holds"] = rep.norm_path_holds;
  r["norm_is_n_times_h"] = rep.norm_is_n_times_h;
  return r;
}

// A failed self-check is an internal inconsistency: report it with code 5.
struct CheckFailed : Error {
  using Error::Error;
  json result;
};

json job_ext_check(const Node& job, const RunOptions& opt, std::size_t index) {
  const std::string check = job.at("check").as_string();
  if (check != "lemma52" && check != "cores-ext" && check != "transfer")
    job.at("check").fail("check must be lemma52, cores-ext or transfer");
  json r;
  r["check"] = check;
  if (auto rnd = job.get("random")) {
    job.allow({"type", "id", "check", "random"});
    const long count = rnd->as_long(1, 100000);
    std::mt19937_64 rng(opt.seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    long failures = 0, nontrivial = 0, norm_failures = 0;
    for (long i = 0; i < count; ++i) {
      if (check == "lemma52") {
        const auto in = random_lemma52_instance(rng);
        const auto rep = lemma52_check(in.h, in.p, in.q, in.r, in.map);
        failures += !rep.holds;
        norm_failures += !rep.norm_path_holds;
        nontrivial += rep.ext_pq.order() != 1;
      } else if (check == "cores-ext") {
        const auto in = random_cores_ext_instance(rng);
        const auto c = compare_cores_ext(in.h, in.sub, in.quotient, in.coords);
        failures += !c.agree;
        nontrivial += std::any_of(c.via_transfer.begin(), c.via_transfer.end(), [](const Int& x) { return x != 0; });
      } else {
        const auto in = random_transfer_instance(rng);
        failures += !transfer_identity_holds(in.h, in.m);
        nontrivial += !CohomologyGroup(in.m).is_trivial();
      }
    }
    r["seed"] = opt.seed;
    r["instances"] = count;
    r["nontrivial"] = nontrivial;
    r["failures"] = failures;
    if (check == "lemma52") r["norm_path_failures"] = norm_failures;
    r["holds"] = failures == 0;
  } else if (check == "lemma52") {
    job.allow({"type", "id", "check", "group", "subgroup", "P", "Q", "R", "h"});
    const GroupPtr g = parse_group(job.at("group"));
    const Subgroup h = parse_subgroup(job.at("subgroup"), g);
    const GModule p = parse_module(job.at("P"), g), q = parse_module(job.at("Q"), g),
                  rr = parse_module(job.at("R"), g);
    const json rep = lemma52_json(lemma52_check(h, p, q, rr, parse_matrix(job.at("h"))));
    for (const auto& [k, v] : rep.items()) r[k] = v;
  } else if (check == "cores-ext") {
    job.allow({"type", "id", "check", "group", "subgroup", "sub", "quotient", "class"});
    const GroupPtr g = parse_group(job.at("group"));
    const Subgroup h = parse_subgroup(job.at("subgroup"), g);
    const GModule sub = parse_module(job.at("sub"), g), quotient = parse_module(job.at("quotient"), g);
    const ExtGroup ext_h(restrict_module(quotient, h), restrict_module(sub, h));
    const IntVector coords = parse_vector(job.at("class"));
    if (coords.size() != ext_h.size())
      throw InvalidInput(job.path() + ".class: expected " + std::to_string(ext_h.size()) +
                         " coordinates for Ext^1_H = " + ext_h.structure().to_string());
    const auto c = compare_cores_ext(h, sub, quotient, coords);
    r["ext_subgroup"] = ext_h.structure().to_string();
    r["ext_group"] = ExtGroup(quotient, sub).structure().to_string();
    r["via_extensions"] = to_json(c.via_extensions);
    r["via_transfer"] = to_json(c.via_transfer);
    r["holds"] = c.agree;
  } else {
    job.allow({"type", "id", "check", "group", "subgroup", "module"});
    const GroupPtr g = parse_group(job.at("group"));
    const Subgroup h = parse_subgroup(job.at("subgroup"), g);
    r["index"] = h.index();
    r["holds"] = transfer_identity_holds(h, parse_module(job.at("module"), g));
  }
  if (!r["holds"].get<bool>()) {
    CheckFailed e("self-check '" + check + "' failed");
    e.result = r;
    throw e;
  }
  return r;
}

json job_square_class(const Node& job, const RunOptions& opt) {
  job.allow({"type", "id", "field", "element"});
  const LocalField k = parse_local_field(job.at("field"), opt.precision);
  const auto basis = k.square_class_basis();
  json r;
  r["field"] = k.describe();
  r["group_order"] = to_json(Int(1) << static_cast<unsigned>(basis.size()));
  json b = json::array();
  for (const auto& x : basis) b.push_back(k.algebra().format(x));
  r["basis"] = std::move(b);
  if (auto e = job.get("element")) {
    const AlgebraElement x = k.parse(e->as_expression());
    if (k.algebra().is_zero(x)) throw InvalidInput(e->path() + ": zero has no square class");
    const bool sq = k.is_square(x);
    r["element"] = k.algebra().format(x);
    r["valuation"] = k.valuation(x);
    r["square"] = sq;
    r["verdict"] = sq ? "square" : "nonsquare";
    r["class"] = k.square_class(x, basis);
  }
  return r;
}

json report_json(const AnalysisReport& a) {
  json r;
  r["mode"] = a.mode;
  r["degenerate"] = a.degenerate ? json(*a.degenerate) : json(nullptr);
  r["n"] = a.n;
  r["n_parity"] = a.n_parity();
  r["brauer_K"] = a.brauer_k;
  r["brauer_L"] = a.brauer_l;
  for (const auto& [name, m] : {std::pair{"res_h1", &a.res_h1}, std::pair{"cores_h1", &a.cores_h1}}) {
    json o;
    o["verdict"] = to_string(m->verdict);
    if (m->map) {
      o["matrix"] = to_json(m->map->matrix);
      o["dual_verdict"] = verdict_of(dual_map(*m->map));
    }
    r[name] = std::move(o);
  }
  r["chow_res"] = to_string(a.chow_res);
  r["chow_cores"] = to_string(a.chow_cores);
  json trace = json::array();
  for (const auto& rule : a.rule_trace) {
    json o;
    o["rule"] = rule.rule;
    o["description"] = rule.description;
    json pre = json::object(), con = json::object();
    for (const auto& [f, v] : rule.premises) pre[f] = v;
    for (const auto& [f, v] : rule.conclusions) con[f] = v;
    o["premises"] = std::move(pre);
    o["conclusions"] = std::move(con);
    trace.push_back(std::move(o));
  }
  r["rule_trace"] = std::move(trace);
  r["assumptions"] = a.assumptions;
  return r;
}

json job_analyze(const Node& job, const RunOptions& opt) {
  const std::string mode = job.has("mode") ? job.at("mode").as_string() : "local";
  const Node surf = job.at("surface");
  if (mode == "local") {
    job.allow({"type", "id", "mode", "field", "extension", "surface"});
    surf.allow({"d", "e"});
    const LocalField k = parse_local_field(job.at("field"), opt.precision);
    const LocalField l = extend_local(k, job.at("extension"));
    std::vector<AlgebraElement> roots;
    const Node e = surf.at("e");
    for (std::size_t i = 0; i < e.size(); ++i) roots.push_back(k.parse(e[i].as_expression()));
    const ChateletSurface s(k, k.parse(surf.at("d").as_expression()), std::move(roots));
    json r;
    r["K"] = k.describe();
    r["L"] = l.describe();
    const json rep = report_json(analyze(s, l));
    for (const auto& [key, v] : rep.items()) r[key] = v;
    return r;
  }
  if (mode != "number-field") job.at("mode").fail("mode must be 'local' or 'number-field'");
  job.allow({"type", "id", "mode", "field", "extension", "surface", "certificates"});
  surf.allow({"d", "e", "sqrt_witness"});
  NumberFieldProblem pr;
  if (auto field = job.get("field")) {  // absent: the base field is Q
    field->allow({"tower"});
    if (field->has("tower")) pr.tower = extend_algebra(TowerAlgebra(), field->at("tower"));
  }
  pr.base_levels = pr.tower.levels();
  pr.tower = extend_algebra(pr.tower, job.at("extension"));
  pr.d = pr.tower.parse(surf.at("d").as_expression(), pr.base_levels);
  const Node e = surf.at("e");
  for (std::size_t i = 0; i < e.size(); ++i)
    pr.roots.push_back(pr.tower.parse(e[i].as_expression(), pr.base_levels));
  if (auto w = surf.get("sqrt_witness")) pr.sqrt_witness = pr.tower.parse(w->as_expression(), pr.tower.levels());
  if (auto cs = job.get("certificates")) {
    for (std::size_t i = 0; i < cs->size(); ++i) {
      const Node c = (*cs)[i];
      c.allow({"p", "kinds"});
      LocalCertificate cert{static_cast<unsigned long>(c.at("p").as_long(2, 1L << 30)), {}};
      const Node kinds = c.at("kinds");
      for (std::size_t j = 0; j < kinds.size(); ++j) cert.kinds.push_back(parse_kind(kinds[j]));
      pr.certificates.push_back(std::move(cert));
    }
  }
  return report_json(analyze_number_field(pr));
}

// ---------------------------------------------------------------------------
// Reports

std::string error_kind(int code) {
  switch (code) {
    case 2: return "invalid-input";
    case 3: return "precision";
    case 4: return "schema";
    default: return "internal";
  }
}

json error_json(int code, const std::string& message) {
  json e;
  e["code"] = code;
  e["kind"] = error_kind(code);
  e["message"] = message;
  return e;
}

json run_one(const Node& job, const RunOptions& opt, std::size_t index, int& code) {
  json rep;
  rep["index"] = index;
  code = 0;
  try {
    job.expect_object();
    if (auto id = job.get("id")) rep["id"] = id->as_string();
    const std::string type = job.at("type").as_string();
    rep["type"] = type;
    json result;
    if (type == "snf") result = job_snf(job);
    else if (type == "h1") result = job_h1(job);
    else if (type == "ext-check") result = job_ext_check(job, opt, index);
    else if (type == "square-class") result = job_square_class(job, opt);
    else if (type == "analyze") result = job_analyze(job, opt);
    else job.at("type").fail("unknown job type '" + type + "' (snf, h1, ext-check, square-class, analyze)");
    rep["status"] = "ok";
    rep["result"] = std::move(result);
  } catch (const CheckFailed& e) {
    code = e.code();
    rep["status"] = "error";
    rep["error"] = error_json(code, e.what());
    rep["result"] = e.result;
  } catch (const Error& e) {
    code = e.code();
    rep["status"] = "error";
    rep["error"] = error_json(code, e.what());
  } catch (const std::exception& e) {
    code = 5;
    rep["status"] = "error";
    rep["error"] = error_json(code, e.what());
  }
  return rep;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string render_text(const json& doc, bool trace) {
  std::ostringstream out;
  for (const auto& rep : doc["reports"]) {
    out << "job " << rep["index"].get<std::size_t>();
    if (rep.contains("id")) out << " [" << rep["id"].get<std::string>() << "]";
    if (rep.contains("type")) out << " " << rep["type"].get<std::string>();
    out << ": " << rep["status"].get<std::string>() << "\n";
    if (rep.contains("error"))
      out << "  error (" << rep["error"]["kind"].get<std::string>() << "): "
          << rep["error"]["message"].get<std::string>() << "\n";
    if (!rep.contains("result")) continue;
    for (const auto& [k, v] : rep["result"].items()) {
      if (k == "rule_trace") {
        if (!trace) continue;
        out << "  rule_trace:\n";
        for (const auto& r : v) {
          out << "    " << r["rule"].get<std::string>() << ": " << r["description"].get<std::string>() << "\n";
          out << "      if";
          for (const auto& [f, x] : r["premises"].items()) out << " " << f << "=" << x.get<std::string>();
          out << " then";
          for (const auto& [f, x] : r["conclusions"].items()) out << " " << f << "=" << x.get<std::string>();
          out << "\n";
        }
        continue;
      }
      if (v.is_object()) {
        out << "  " << k << ":\n";
        for (const auto& [k2, v2] : v.items()) out << "    " << k2 << ": " << scalar_text(v2) << "\n";
      } else {
        out << "  " << k << ": " << scalar_text(v) << "\n";
      }
    }
  }
  out << "exit code " << doc["exit_code"].get<int>() << "\n";
  return out.str();
}

}  // namespace

LocalField local_field_from_json(std::string_view text, long precision) {
  json input;
  try {
    input = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("field is not valid JSON: ") + e.what());
  }
  return parse_local_field(Node(input, "$"), precision);
}

RunResult run_jobs(std::string_view document, const RunOptions& options) {
  json doc;
  doc["version"] = 1;
  json reports = json::array();
  int exit_code = 0;
  try {
    json input;
    try {
      input = json::parse(document);
    } catch (const json::parse_error& e) {
      throw SchemaError(std::string("input is not valid JSON: ") + e.what());
    }
    const Node root(input, "$");
    root.allow({"version", "jobs"});
    if (root.at("version").as_long(0, 1000) != 1) root.at("version").fail("unsupported version (expected 1)");
    const Node jobs = root.at("jobs");
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      int code = 0;
      reports.push_back(run_one(jobs[i], options, i, code));
      exit_code = std::max(exit_code, code);
    }
  } catch (const Error& e) {
    exit_code = std::max(exit_code, e.code());
    doc["error"] = error_json(e.code(), e.what());
  }
  doc["exit_code"] = exit_code;
  doc["reports"] = std::move(reports);
  RunResult out;
  out.exit_code = exit_code;
  out.output = options.format == RunOptions::Format::Json ? doc.dump(2) + "\n" : render_text(doc, options.trace);
  if (options.format == RunOptions::Format::Text && doc.contains("error"))
    out.output = "error (" + doc["error"]["kind"].get<std::string>() + "): " +
                 doc["error"]["message"].get<std::string>() + "\n" + out.output;
  return out;
}

}  // namespace galcoh
