#include "galcoh/padic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "galcoh/errors.hpp"

namespace galcoh {

namespace {

template <class T>
bool all_zero(const std::vector<T>& v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return x == 0; });
}

// Multiplication in a tower: split into coefficients over the level below,
// multiply as polynomials, then reduce by the monic step polynomial.
// `polys[i]` holds the coefficients of step i + 1 in the ring of T.
template <class T, class Reduce>
std::vector<T> tower_mul(std::size_t level, const std::vector<T>& a, const std::vector<T>& b,
                         const std::vector<std::vector<std::vector<T>>>& polys,
                         const std::vector<std::size_t>& degrees, const Reduce& reduce) {
  if (level == 0) {
    T c = a[0] * b[0];
    reduce(c);
    return {c};
  }
  const auto& f = polys[level - 1];
  const std::size_t m = f.size() - 1, sub = degrees[level - 1];
  auto chunk = [sub](const std::vector<T>& v, std::size_t i) {
    return std::vector<T>(v.begin() + static_cast<std::ptrdiff_t>(i * sub),
                          v.begin() + static_cast<std::ptrdiff_t>((i + 1) * sub));
  };
  std::vector<std::vector<T>> ac(m), bc(m);
  for (std::size_t i = 0; i < m; ++i) {
    ac[i] = chunk(a, i);
    bc[i] = chunk(b, i);
  }
  std::vector<std::vector<T>> prod(2 * m - 1, std::vector<T>(sub, T(0)));
  for (std::size_t i = 0; i < m; ++i) {
    if (all_zero(ac[i])) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (all_zero(bc[j])) continue;
      const auto c = tower_mul(level - 1, ac[i], bc[j], polys, degrees, reduce);
      for (std::size_t k = 0; k < sub; ++k) {
        prod[i + j][k] += c[k];
        reduce(prod[i + j][k]);
      }
    }
  }
  for (std::size_t k = 2 * m - 1; k-- > m;) {
    if (all_zero(prod[k])) continue;
    const auto top = prod[k];
    for (std::size_t i = 0; i < m; ++i) {
      if (all_zero(f[i])) continue;
      const auto c = tower_mul(level - 1, top, f[i], polys, degrees, reduce);
      for (std::size_t s = 0; s < sub; ++s) {
        prod[k - m + i][s] -= c[s];
        reduce(prod[k - m + i][s]);
      }
    }
  }
  std::vector<T> out;
  out.reserve(m * sub);
  for (std::size_t i = 0; i < m; ++i) out.insert(out.end(), prod[i].begin(), prod[i].end());
  return out;
}

struct NoReduce {
  void operator()(Rational& x) const { x.canonicalize(); }
};

long vp(const Int& x, unsigned long p) {
  if (x == 0) return std::numeric_limits<long>::max();
  Int t;
  return static_cast<long>(mpz_remove(t.get_mpz_t(), x.get_mpz_t(), Int(p).get_mpz_t()));
}

long vp(const Rational& x, unsigned long p) {
  if (x == 0) return std::numeric_limits<long>::max();
  return vp(Int(x.get_num()), p) - vp(Int(x.get_den()), p);
}

Int ipow(unsigned long p, long k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// TowerAlgebra

TowerAlgebra::TowerAlgebra(std::vector<TowerPolynomial> polys) {
  for (auto& f : polys) {
    const std::size_t d = degrees_.back();
    if (f.size() < 2) throw InvalidInput("tower polynomial must have degree at least 1");
    for (auto& c : f) {
      if (c.size() != d) throw InvalidInput("tower polynomial coefficient has the wrong level");
      for (auto& x : c) x.canonicalize();
    }
    const auto& lead = f.back();
    if (lead[0] != 1 || !std::all_of(lead.begin() + 1, lead.end(), [](const Rational& x) { return x == 0; }))
      throw InvalidInput("tower polynomial must be monic");
    degrees_.push_back(d * (f.size() - 1));
    polys_.push_back(std::move(f));
  }
}

std::size_t TowerAlgebra::level_of(const AlgebraElement& x) const {
  for (std::size_t l = 0; l < degrees_.size(); ++l)
    if (degrees_[l] == x.size()) return l;
  throw InvalidInput("element length matches no level of the tower");
}

AlgebraElement TowerAlgebra::zero(std::size_t level) const {
  return AlgebraElement(degrees_.at(level), Rational(0));
}

AlgebraElement TowerAlgebra::one(std::size_t level) const { return constant(1, level); }

AlgebraElement TowerAlgebra::constant(const Rational& c, std::size_t level) const {
  AlgebraElement x = zero(level);
  x[0] = c;
  return x;
}

AlgebraElement TowerAlgebra::generator(std::size_t i, std::size_t level) const {
  if (i == 0 || i > level || level > levels())
    throw InvalidInput("generator t" + std::to_string(i) + " is not available at this level");
  AlgebraElement x = zero(level);
  // t_i = 1 at index degrees_[i-1] when its step has degree > 1.
  if (step_degree(i - 1) == 1) {
    // Degree-one step: t_i = -a_0.
    AlgebraElement c = embed(neg(polys_[i - 1][0]), level);
    return c;
  }
  x[degrees_[i - 1]] = 1;
  return x;
}

AlgebraElement TowerAlgebra::add(const AlgebraElement& a, const AlgebraElement& b) const {
  if (a.size() != b.size()) throw InvalidInput("adding elements of different levels");
  AlgebraElement r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

AlgebraElement TowerAlgebra::sub(const AlgebraElement& a, const AlgebraElement& b) const {
  if (a.size() != b.size()) throw InvalidInput("subtracting elements of different levels");
  AlgebraElement r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

AlgebraElement TowerAlgebra::neg(const AlgebraElement& a) const {
  AlgebraElement r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

AlgebraElement TowerAlgebra::mul(const AlgebraElement& a, const AlgebraElement& b) const {
  if (a.size() != b.size()) throw InvalidInput("multiplying elements of different levels");
  return tower_mul(level_of(a), a, b, polys_, degrees_, NoReduce{});
}

AlgebraElement TowerAlgebra::pow(const AlgebraElement& a, unsigned long k) const {
  AlgebraElement r = one(level_of(a)), base = a;
  while (k) {
    if (k & 1) r = mul(r, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return r;
}

AlgebraElement TowerAlgebra::embed(const AlgebraElement& a, std::size_t level) const {
  if (level > levels() || a.size() > degrees_[level]) throw InvalidInput("cannot embed into a lower level");
  (void)level_of(a);
  AlgebraElement r = zero(level);
  std::copy(a.begin(), a.end(), r.begin());
  return r;
}

bool TowerAlgebra::is_zero(const AlgebraElement& a) const { return all_zero(a); }

AlgebraElement TowerAlgebra::norm(const AlgebraElement& x, std::size_t to_level) const {
  std::size_t level = level_of(x);
  if (to_level > level) throw InvalidInput("norm target is above the element's level");
  AlgebraElement cur = x;
  for (; level > to_level; --level) {
    const std::size_t m = step_degree(level - 1), sub = degrees_[level - 1];
    // entry(i, j) = coefficient of t^i in x t^j.
    std::vector<std::vector<AlgebraElement>> entry(m, std::vector<AlgebraElement>(m));
    const AlgebraElement t = generator(level, level);
    AlgebraElement col = cur;
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < m; ++i)
        entry[i][j] = AlgebraElement(col.begin() + static_cast<std::ptrdiff_t>(i * sub),
                                     col.begin() + static_cast<std::ptrdiff_t>((i + 1) * sub));
      if (j + 1 < m) col = mul(col, t);
    }
    // Division-free determinant over subsets of used columns.
    const std::size_t full = std::size_t{1} << m;
    std::vector<std::optional<AlgebraElement>> dp(full);
    dp[0] = one(level - 1);
    for (std::size_t mask = 0; mask < full; ++mask) {
      if (!dp[mask]) continue;
      const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
      if (row == m) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (mask & (std::size_t{1} << j)) continue;
        if (is_zero(entry[row][j])) continue;
        AlgebraElement term = mul(*dp[mask], entry[row][j]);
        if (__builtin_popcountll(mask >> (j + 1)) % 2) term = neg(term);
        auto& slot = dp[mask | (std::size_t{1} << j)];
        slot = slot ? add(*slot, term) : term;
      }
    }
    cur = dp[full - 1] ? *dp[full - 1] : zero(level - 1);
  }
  return cur;
}

namespace {

class ExpressionParser {
 public:
  ExpressionParser(const TowerAlgebra& alg, std::string_view text, std::size_t level)
      : alg_(alg), text_(text), level_(level) {}

  AlgebraElement run() {
    AlgebraElement x = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("cannot parse element '" + std::string(text_) + "' at position " +
                       std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  AlgebraElement expr() {
    AlgebraElement x = term();
    for (;;) {
      if (eat('+')) x = alg_.add(x, term());
      else if (eat('-')) x = alg_.sub(x, term());
      else return x;
    }
  }
  AlgebraElement term() {
    AlgebraElement x = unary();
    for (;;) {
      if (eat('*')) {
        x = alg_.mul(x, unary());
      } else if (eat('/')) {
        const AlgebraElement d = unary();
        if (!std::all_of(d.begin() + 1, d.end(), [](const Rational& c) { return c == 0; }) || d[0] == 0)
          fail("division only by nonzero rational constants");
        for (auto& c : x) {
          c /= d[0];
          c.canonicalize();
        }
      } else {
        return x;
      }
    }
  }
  AlgebraElement unary() {
    if (eat('-')) return alg_.neg(unary());
    if (eat('+')) return unary();
    return power();
  }
  AlgebraElement power() {
    AlgebraElement x = atom();
    if (eat('^')) {
      const std::string k = digits();
      if (k.size() > 6) fail("exponent too large");
      x = alg_.pow(x, std::stoul(k));
    }
    return x;
  }
  AlgebraElement atom() {
    skip();
    if (eat('(')) {
      AlgebraElement x = expr();
      if (!eat(')')) fail("expected ')'");
      return x;
    }
    if (pos_ < text_.size() && text_[pos_] == 't') {
      ++pos_;
      const std::string k = digits();
      const std::size_t i = std::stoul(k);
      if (i == 0 || i > level_) fail("generator t" + k + " is not part of this field");
      return alg_.generator(i, level_);
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      return alg_.constant(Rational(Int(digits())), level_);
    fail("expected a number, generator or '('");
  }

  const TowerAlgebra& alg_;
  std::string_view text_;
  std::size_t level_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement TowerAlgebra::parse(std::string_view text, std::size_t level) const {
  if (level > levels()) throw InvalidInput("level beyond the tower");
  return ExpressionParser(*this, text, level).run();
}

std::string TowerAlgebra::format(const AlgebraElement& x) const {
  const std::size_t level = level_of(x);
  std::ostringstream out;
  bool first = true;
  for (std::size_t idx = 0; idx < x.size(); ++idx) {
    if (x[idx] == 0) continue;
    std::string mono;
    std::size_t rest = idx;
    for (std::size_t s = 0; s < level; ++s) {
      const std::size_t m = step_degree(s);
      const std::size_t e = rest % m;
      rest /= m;
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "t" + std::to_string(s + 1);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    Rational c = x[idx];
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    if (c < 0) c = -c;
    if (mono.empty()) out << c.get_str();
    else if (c == 1) out << mono;
    else out << c.get_str() << "*" << mono;
    first = false;
  }
  if (first) return "0";
  return out.str();
}

// ---------------------------------------------------------------------------
// Arithmetic modulo p^N in the integral monomial basis

class PadicRing {
 public:
  PadicRing(const LocalField& field, long digits)
      : field_(field), digits_(digits), modulus_(ipow(field.p(), digits)) {
    for (const auto& step : field.steps()) {
      std::vector<IntVector> f;
      for (const auto& c : step.poly) f.push_back(convert(c));
      polys_.push_back(std::move(f));
    }
    for (std::size_t l = 0; l <= field.levels(); ++l) degrees_.push_back(field.algebra().degree(l));
  }

  long digits() const { return digits_; }
  const Int& modulus() const { return modulus_; }

  void reduce(Int& x) const { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t()); }

  // p-integral rational vector -> residues mod p^N.
  IntVector convert(const AlgebraElement& x) const {
    IntVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      Int den = x[i].get_den();
      if (den % field_.p() == 0) throw InvalidInput("coordinate is not p-integral");
      Int inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus_.get_mpz_t());
      out[i] = Int(x[i].get_num()) * inv;
      reduce(out[i]);
    }
    return out;
  }

  IntVector mul(const IntVector& a, const IntVector& b) const {
    const auto r = [this](Int& x) { reduce(x); };
    return tower_mul(level_of(a), a, b, polys_, degrees_, r);
  }
  IntVector add(const IntVector& a, const IntVector& b) const {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      r[i] = a[i] + b[i];
      reduce(r[i]);
    }
    return r;
  }
  IntVector sub(const IntVector& a, const IntVector& b) const {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      r[i] = a[i] - b[i];
      reduce(r[i]);
    }
    return r;
  }
  IntVector pow(IntVector a, Int k) const {
    IntVector r(a.size());
    r[0] = 1;
    reduce(r[0]);
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) r = mul(r, a);
      k >>= 1;
      if (k > 0) a = mul(a, a);
    }
    return r;
  }

  // Valuation in units of the level's uniformizer, as (value, exact). An
  // inexact value is a lower bound coming from coordinates that vanish
  // modulo p^N.
  std::pair<long, bool> valuation(const IntVector& x) const { return valuation(level_of(x), x.data()); }

  std::size_t level_of(const IntVector& x) const {
    for (std::size_t l = 0; l < degrees_.size(); ++l)
      if (degrees_[l] == x.size()) return l;
    throw InvalidInput("element length matches no level of the tower");
  }

 private:
  std::pair<long, bool> valuation(std::size_t level, const Int* x) const {
    if (level == 0) {
      if (*x == 0) return {digits_, false};
      return {vp(*x, field_.p()), true};
    }
    const auto& step = field_.steps()[level - 1];
    const std::size_t m = step.poly.size() - 1, sub = degrees_[level - 1];
    const bool eis = step.kind == StepKind::Eisenstein;
    long best_exact = std::numeric_limits<long>::max(), best_bound = std::numeric_limits<long>::max();
    for (std::size_t j = 0; j < m; ++j) {
      auto [v, exact] = valuation(level - 1, x + j * sub);
      const long w = eis ? static_cast<long>(m) * v + static_cast<long>(j) : v;
      if (exact) best_exact = std::min(best_exact, w);
      else best_bound = std::min(best_bound, w);
    }
    if (best_exact <= best_bound) return {best_exact, true};
    return {best_bound, false};
  }

  const LocalField& field_;
  long digits_;
  Int modulus_;
  std::vector<std::vector<IntVector>> polys_;
  std::vector<std::size_t> degrees_;
};

namespace {

// Exact valuation of a rational tower element at `level`, in units of that
// level's uniformizer; nullopt for zero.
std::optional<long> exact_valuation(const LocalField& k, std::size_t level, const Rational* x) {
  if (level == 0) {
    if (*x == 0) return std::nullopt;
    return vp(*x, k.p());
  }
  const auto& step = k.steps()[level - 1];
  const std::size_t m = step.poly.size() - 1, sub = k.algebra().degree(level - 1);
  std::optional<long> best;
  for (std::size_t j = 0; j < m; ++j) {
    auto v = exact_valuation(k, level - 1, x + j * sub);
    if (!v) continue;
    const long w = step.kind == StepKind::Eisenstein ? static_cast<long>(m) * *v + static_cast<long>(j) : *v;
    if (!best || w < *best) best = w;
  }
  return best;
}

// The residue field of a level, as coordinate vectors mod p with entries on
// the level's residue indices.
class ResidueField {
 public:
  ResidueField(const PadicRing& ring, std::size_t size, std::vector<std::size_t> indices, unsigned long p)
      : ring_(ring), size_(size), indices_(std::move(indices)), p_(p) {}

  using Elem = IntVector;  // length = number of residue indices

  Elem mul(const Elem& a, const Elem& b) const { return project(ring_.mul(lift(a), lift(b))); }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      r[i] = a[i] - b[i];
      mpz_fdiv_r_ui(r[i].get_mpz_t(), r[i].get_mpz_t(), p_);
    }
    return r;
  }
  bool is_zero(const Elem& a) const { return all_zero(a); }

  IntVector lift(const Elem& a) const {
    IntVector x(size_);
    for (std::size_t i = 0; i < indices_.size(); ++i) x[indices_[i]] = a[i];
    return x;
  }
  Elem project(const IntVector& x) const {
    Elem r(indices_.size());
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      r[i] = x[indices_[i]];
      mpz_fdiv_r_ui(r[i].get_mpz_t(), r[i].get_mpz_t(), p_);
    }
    return r;
  }
  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    Elem cur(indices_.size());
    for (;;) {
      out.push_back(cur);
      std::size_t i = 0;
      for (; i < cur.size(); ++i) {
        cur[i] += 1;
        if (cur[i] < p_) break;
        cur[i] = 0;
      }
      if (i == cur.size()) break;
    }
    return out;
  }

  // Monic-divisor search; `f` little-endian with leading coefficient one.
  bool is_irreducible(const std::vector<Elem>& f) const {
    const std::size_t n = f.size() - 1;
    if (n <= 1) return true;
    const auto elems = elements();
    for (std::size_t k = 1; 2 * k <= n; ++k) {
      std::vector<std::size_t> counter(k, 0);
      for (;;) {
        std::vector<Elem> g;
        for (std::size_t i = 0; i < k; ++i) g.push_back(elems[counter[i]]);
        if (divides(g, f)) return false;
        std::size_t i = 0;
        for (; i < k; ++i) {
          if (++counter[i] < elems.size()) break;
          counter[i] = 0;
        }
        if (i == k) break;
      }
    }
    return true;
  }

 private:
  // g is monic of degree k, given by its k lower coefficients.
  bool divides(const std::vector<Elem>& g, std::vector<Elem> f) const {
    const std::size_t k = g.size();
    for (std::size_t d = f.size() - 1; d >= k; --d) {
      const Elem c = f[d];
      if (is_zero(c)) continue;
      f[d] = sub(f[d], c);
      for (std::size_t i = 0; i < k; ++i) f[d - k + i] = sub(f[d - k + i], mul(c, g[i]));
    }
    for (std::size_t i = 0; i < k; ++i)
      if (!is_zero(f[i])) return false;
    return true;
  }

  const PadicRing& ring_;
  std::size_t size_;
  std::vector<std::size_t> indices_;
  unsigned long p_;
};

}  // namespace

// ---------------------------------------------------------------------------
// LocalField

LocalField::LocalField(unsigned long p, std::vector<TowerStep> steps, Precision precision)
    : p_(p), precision_(precision) {
  if (p < 2 || mpz_probab_prime_p(Int(p).get_mpz_t(), 30) == 0)
    throw InvalidInput("p = " + std::to_string(p) + " is not a prime");
  if (precision_.initial < 0 || precision_.cap < 1) throw InvalidInput("invalid precision");
  for (auto& s : steps) append(std::move(s));
}

void LocalField::append(TowerStep step) {
  const std::size_t level = levels();
  const std::size_t d = algebra_.degree();
  auto& f = step.poly;
  if (f.size() < 2) throw InvalidInput("tower step needs a polynomial of degree at least 1");
  for (const auto& c : f) {
    if (c.size() != d) throw InvalidInput("tower step coefficient has the wrong level");
    for (const auto& x : c)
      if (x.get_den() % p_ == 0) throw InvalidInput("tower step coefficients must be p-integral");
  }
  const std::size_t m = f.size() - 1;
  if (step.kind == StepKind::Eisenstein) {
    for (std::size_t i = 0; i < m; ++i) {
      auto v = exact_valuation(*this, level, f[i].data());
      if (i == 0 && (!v || *v != 1))
        throw InvalidInput("Eisenstein polynomial needs a constant term of valuation 1");
      if (v && *v < 1) throw InvalidInput("Eisenstein polynomial needs lower coefficients in the maximal ideal");
    }
  } else {
    const PadicRing ring(*this, 1);
    const ResidueField rf(ring, d, residue_indices_.back(), p_);
    std::vector<ResidueField::Elem> red;
    for (const auto& c : f) red.push_back(rf.project(ring.convert(c)));
    if (!rf.is_irreducible(red))
      throw InvalidInput("unramified step polynomial is reducible over the residue field");
  }

  std::vector<TowerPolynomial> polys = algebra_.polynomials();
  polys.push_back(f);
  algebra_ = TowerAlgebra(std::move(polys));
  std::vector<std::size_t> idx;
  if (step.kind == StepKind::Eisenstein) {
    idx = residue_indices_.back();
    e_.push_back(e_.back() * m);
    f_.push_back(f_.back());
  } else {
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t r : residue_indices_.back()) idx.push_back(j * d + r);
    e_.push_back(e_.back());
    f_.push_back(f_.back() * m);
  }
  residue_indices_.push_back(std::move(idx));
  steps_.push_back(std::move(step));
}

LocalField LocalField::rationals(unsigned long p) { return LocalField(p, {}); }

LocalField LocalField::extended(TowerStep step) const {
  LocalField k = *this;
  k.append(std::move(step));
  return k;
}

LocalField LocalField::prefix(std::size_t levels) const {
  if (levels > this->levels()) throw InvalidInput("prefix longer than the tower");
  return LocalField(p_, std::vector<TowerStep>(steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(levels)),
                    precision_);
}

bool LocalField::extends(const LocalField& k) const {
  if (k.p_ != p_ || k.levels() > levels()) return false;
  for (std::size_t i = 0; i < k.levels(); ++i)
    if (k.steps_[i].kind != steps_[i].kind || k.steps_[i].poly != steps_[i].poly) return false;
  return true;
}

Int LocalField::residue_size() const { return ipow(p_, static_cast<long>(residue_degree())); }

long LocalField::default_precision() const { return std::max(24L, 6 * valuation_of_two() + 12); }

LocalField LocalField::with_precision(Precision p) const {
  if (p.initial < 0 || p.cap < 1) throw InvalidInput("invalid precision");
  LocalField k = *this;
  k.precision_ = p;
  return k;
}

AlgebraElement LocalField::uniformizer() const {
  for (std::size_t i = levels(); i-- > 0;)
    if (steps_[i].kind == StepKind::Eisenstein) return algebra_.generator(i + 1, levels());
  return algebra_.constant(static_cast<long>(p_), levels());
}

std::vector<AlgebraElement> LocalField::residue_representatives() const {
  const PadicRing ring(*this, 1);
  const ResidueField rf(ring, degree(), residue_indices_.back(), p_);
  std::vector<AlgebraElement> out;
  for (const auto& r : rf.elements()) {
    const IntVector x = rf.lift(r);
    AlgebraElement a(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = Rational(x[i]);
    out.push_back(std::move(a));
  }
  return out;
}

PadicElement LocalField::to_padic(const AlgebraElement& x, long digits) const {
  if (x.size() != degree()) throw InvalidInput("element does not belong to this field");
  if (digits < 1) throw InvalidInput("precision must be positive");
  long shift = 0;
  for (const auto& c : x)
    if (c != 0) shift = std::max(shift, -vp(c, p_));
  AlgebraElement scaled = x;
  const Int ps = ipow(p_, shift);
  for (auto& c : scaled) {
    c *= ps;
    c.canonicalize();
  }
  const PadicRing ring(*this, digits);
  return PadicElement{ring.convert(scaled), shift, digits};
}

PadicElement LocalField::mul(const PadicElement& a, const PadicElement& b) const {
  const long digits = std::min(a.precision, b.precision);
  const PadicRing ring(*this, digits);
  IntVector x = a.coords, y = b.coords;
  for (auto& c : x) ring.reduce(c);
  for (auto& c : y) ring.reduce(c);
  return PadicElement{ring.mul(x, y), a.shift + b.shift, digits};
}

namespace {

PadicElement aligned_sum(const LocalField& k, const PadicElement& a, const PadicElement& b, int sign) {
  const long s = std::max(a.shift, b.shift);
  const long digits = std::min(a.precision + s - a.shift, b.precision + s - b.shift);
  const Int fa = ipow(k.p(), s - a.shift), fb = ipow(k.p(), s - b.shift), mod = ipow(k.p(), digits);
  IntVector out(a.coords.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.coords[i] * fa + sign * b.coords[i] * fb;
    mpz_fdiv_r(out[i].get_mpz_t(), out[i].get_mpz_t(), mod.get_mpz_t());
  }
  return PadicElement{std::move(out), s, digits};
}

}  // namespace

PadicElement LocalField::add(const PadicElement& a, const PadicElement& b) const {
  return aligned_sum(*this, a, b, 1);
}

PadicElement LocalField::sub(const PadicElement& a, const PadicElement& b) const {
  return aligned_sum(*this, a, b, -1);
}

long LocalField::valuation(const PadicElement& x) const {
  const PadicRing ring(*this, x.precision);
  auto [v, exact] = ring.valuation(x.coords);
  if (!exact) throw PrecisionError("element is indistinguishable from zero at precision " +
                                   std::to_string(x.precision));
  return v - x.shift * static_cast<long>(ramification_index());
}

long LocalField::valuation(const AlgebraElement& x) const {
  if (x.size() != degree()) throw InvalidInput("element does not belong to this field");
  auto v = exact_valuation(*this, levels(), x.data());
  if (!v) throw InvalidInput("valuation of zero");
  return *v;
}

bool LocalField::is_square(const AlgebraElement& x) const {
  if (x.size() != degree()) throw InvalidInput("element does not belong to this field");
  if (algebra_.is_zero(x)) throw InvalidInput("square test of zero");
  const long v = valuation(x);
  if (v % 2 != 0) return false;
  const long e = static_cast<long>(ramification_index());
  long shift = 0;
  for (const auto& c : x)
    if (c != 0) shift = std::max(shift, -vp(c, p_));
  const long loss = shift + (v >= 0 ? v : 0);
  for (long n = precision_.initial > 0 ? precision_.initial : default_precision();; n *= 2) {
    try {
      return is_square_at(x, v, (n + e - 1) / e + loss);
    } catch (const PrecisionError&) {
      if (n >= precision_.cap) throw;
    }
  }
}

bool LocalField::is_square_at(const AlgebraElement& x, long v, long digits) const {
  const long e = static_cast<long>(ramification_index());
  const PadicElement px = to_padic(x, digits);
  const PadicRing ring(*this, digits);
  const IntVector pi = ring.convert(uniformizer());
  // x / pi^v is a unit; with pi^e = p * unit, dividing by pi^{2k} equals
  // multiplying by pi^{2k(e-1)} / p^{2k} up to a square.
  IntVector w;
  long divide;
  if (v >= 0) {
    w = ring.mul(px.coords, ring.pow(pi, Int(v * (e - 1))));
    divide = px.shift + v;
  } else {
    w = ring.mul(px.coords, ring.pow(pi, Int(-v)));
    divide = px.shift;
  }
  const long left = digits - divide;
  const long needed = p_ == 2 ? 4 : 1;
  if (left < needed) throw PrecisionError("square test needs more precision");
  const Int pd = ipow(p_, divide);
  IntVector u(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!mpz_divisible_p(w[i].get_mpz_t(), pd.get_mpz_t()))
      throw Error("internal: unit part is not integral");
    u[i] = w[i] / pd;
  }
  const PadicRing small(*this, left);
  for (auto& c : u) small.reduce(c);

  if (p_ != 2) {
    const PadicRing modp(*this, 1);
    IntVector u1 = u;
    for (auto& c : u1) modp.reduce(c);
    IntVector r = modp.pow(u1, (residue_size() - 1) / 2);
    r[0] -= 1;
    modp.reduce(r[0]);
    const ResidueField rf(modp, degree(), residue_indices_.back(), p_);
    return rf.is_zero(rf.project(r));
  }

  // Residue characteristic 2: search digits y = sum r_j pi^j, j <= e, such
  // that y^2 = u modulo pi^{2e+1}; after fixing r_0..r_j any completion
  // agrees with y^2 modulo pi^{min(2j+2, e+j+1)}.
  const IntVector spi = ring.convert(uniformizer());
  IntVector pi_small = spi;
  for (auto& c : pi_small) small.reduce(c);
  std::vector<IntVector> reps;
  for (const auto& r : residue_representatives()) reps.push_back(small.convert(r));
  std::vector<IntVector> pi_pow{IntVector(u.size())};
  pi_pow[0][0] = 1;
  for (long j = 1; j <= e; ++j) pi_pow.push_back(small.mul(pi_pow.back(), pi_small));

  const std::function<bool(long, const IntVector&)> dfs = [&](long j, const IntVector& y) -> bool {
    const long bound = std::min({2 * j + 2, e + j + 1, 2 * e + 1});
    auto [val, exact] = small.valuation(small.sub(small.mul(y, y), u));
    if (val < bound) {
      if (exact) return false;
      throw PrecisionError("square test needs more precision");
    }
    if (j == e) return true;
    for (const auto& r : reps)
      if (dfs(j + 1, small.add(y, small.mul(r, pi_pow[static_cast<std::size_t>(j + 1)])))) return true;
    return false;
  };
  for (std::size_t i = 1; i < reps.size(); ++i)
    if (dfs(0, reps[i])) return true;
  return false;
}

AlgebraElement LocalField::norm(const AlgebraElement& x, const LocalField& k) const {
  if (!extends(k)) throw InvalidInput("norm target is not a subfield of the tower");
  if (x.size() != degree()) throw InvalidInput("element does not belong to this field");
  return algebra_.norm(x, k.levels());
}

std::vector<AlgebraElement> LocalField::square_class_basis() const {
  std::vector<AlgebraElement> basis;
  const auto reps = residue_representatives();
  const std::size_t unit_rank = p_ == 2 ? degree() + 1 : 1;
  // span holds every product of a subset of the basis.
  std::vector<AlgebraElement> span{algebra_.one(levels())};
  auto try_add = [&](const AlgebraElement& c) {
    for (const auto& s : span)
      if (is_square(algebra_.mul(c, s))) return;
    basis.push_back(c);
    const std::size_t n = span.size();
    for (std::size_t i = 0; i < n; ++i) span.push_back(algebra_.mul(span[i], c));
  };
  if (p_ != 2) {
    for (std::size_t i = 1; i < reps.size() && basis.empty(); ++i) try_add(reps[i]);
  } else {
    try_add(algebra_.constant(-1, levels()));
    const AlgebraElement pi = uniformizer();
    const long e = static_cast<long>(ramification_index());
    AlgebraElement pij = algebra_.one(levels());
    for (long j = 1; j <= 2 * e && basis.size() < unit_rank; ++j) {
      pij = algebra_.mul(pij, pi);
      for (std::size_t i = 1; i < reps.size() && basis.size() < unit_rank; ++i)
        try_add(algebra_.add(algebra_.one(levels()), algebra_.mul(pij, reps[i])));
    }
  }
  if (basis.size() != unit_rank) throw Error("internal: unit square classes not spanned");
  basis.push_back(uniformizer());
  return basis;
}

std::vector<int> LocalField::square_class(const AlgebraElement& x,
                                          const std::vector<AlgebraElement>& basis) const {
  if (algebra_.is_zero(x)) throw InvalidInput("square class of zero");
  const std::size_t m = basis.size();
  if (m > 24) throw Unsupported("square-class basis too large");
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    AlgebraElement y = x;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t{1} << i)) y = algebra_.mul(y, basis[i]);
    if (is_square(y)) {
      std::vector<int> bits(m);
      for (std::size_t i = 0; i < m; ++i) bits[i] = (mask >> i) & 1;
      return bits;
    }
  }
  throw InvalidInput("element is not in the span of the square-class basis");
}

std::string LocalField::describe() const {
  std::ostringstream out;
  out << "Q_" << p_;
  for (std::size_t i = 0; i < levels(); ++i) {
    const auto& s = steps_[i];
    const TowerAlgebra below(std::vector<TowerPolynomial>(algebra_.polynomials().begin(),
                                                          algebra_.polynomials().begin() + static_cast<std::ptrdiff_t>(i)));
    out << "(t" << (i + 1) << ": " << (s.kind == StepKind::Eisenstein ? "eisenstein " : "unramified ");
    bool first = true;
    for (std::size_t k = s.poly.size(); k-- > 0;) {
      if (below.is_zero(s.poly[k])) continue;
      if (!first) out << " + ";
      std::string c = below.format(s.poly[k]);
      const std::string mono = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
      if (mono.empty()) out << "(" << c << ")";
      else if (c == "1") out << mono;
      else out << "(" << c << ")*" << mono;
      first = false;
    }
    out << ")";
  }
  out << " [e=" << ramification_index() << ", f=" << residue_degree() << "]";
  return out.str();
}

// ---------------------------------------------------------------------------
// Grid helpers

TowerPolynomial find_unramified_polynomial(const LocalField& k, std::size_t n) {
  if (n == 0) throw InvalidInput("degree must be positive");
  const auto reps = k.residue_representatives();
  const auto& alg = k.algebra();
  std::vector<std::size_t> counter(n, 0);
  for (;;) {
    TowerPolynomial f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(reps[counter[i]]);
    f.push_back(alg.one(k.levels()));
    if (n == 1 || !alg.is_zero(f[0])) {
      try {
        (void)k.extended(TowerStep{StepKind::Unramified, f});
        return f;
      } catch (const InvalidInput&) {
      }
    }
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++counter[i] < reps.size()) break;
      counter[i] = 0;
    }
    if (i == n) throw Error("internal: no irreducible polynomial found");
  }
}

TowerPolynomial eisenstein_polynomial(const LocalField& k, std::size_t n) {
  if (n == 0) throw InvalidInput("degree must be positive");
  const auto& alg = k.algebra();
  TowerPolynomial f(n + 1, alg.zero(k.levels()));
  f[0] = alg.neg(k.uniformizer());
  f[n] = alg.one(k.levels());
  return f;
}

}  // namespace galcoh
