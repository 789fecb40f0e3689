#include "oracles.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace oracle {

using galcoh::AlgebraElement;
using galcoh::LocalField;
using galcoh::StepKind;
using galcoh::TowerAlgebra;

Int cofactor_determinant(const std::vector<std::vector<Int>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Int>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Int> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    const Int term = m[0][j] * cofactor_determinant(minor);
    det += (j % 2 == 0) ? term : Int(-term);
  }
  return det;
}

Rational gauss_determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Columns of the matrix of multiplication by each basis monomial, derived
// directly from t_i^{d_i} = -sum_j c_j t_i^j.
using RMatrix = std::vector<std::vector<Rational>>;  // [column][row]

std::vector<RMatrix> monomial_matrices(const TowerAlgebra& t) {
  const std::size_t levels = t.levels();
  const std::size_t n = t.degree();
  std::vector<std::size_t> deg(levels), stride(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    deg[i] = t.step_degree(i);
    stride[i] = t.degree(i);
  }
  auto exponent = [&](std::size_t b, std::size_t i) { return (b / stride[i]) % deg[i]; };

  std::vector<RMatrix> gen(levels, RMatrix(n, std::vector<Rational>(n)));
  auto apply = [&](const RMatrix& m, const std::vector<Rational>& v) {
    std::vector<Rational> out(n);
    for (std::size_t c = 0; c < n; ++c)
      if (v[c] != 0)
        for (std::size_t r = 0; r < n; ++r) out[r] += v[c] * m[c][r];
    return out;
  };
  for (std::size_t i = 0; i < levels; ++i) {
    const auto& poly = t.polynomial(i);
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ei = exponent(b, i);
      if (ei + 1 < deg[i]) {
        gen[i][b][b + stride[i]] = 1;
        continue;
      }
      const std::size_t rest = b - ei * stride[i];
      for (std::size_t j = 0; j < deg[i]; ++j) {
        const AlgebraElement& c = poly[j];  // level i element, length stride[i]
        for (std::size_t lower = 0; lower < c.size(); ++lower) {
          if (c[lower] == 0) continue;
          std::vector<Rational> v(n);
          v[rest + j * stride[i]] = 1;
          for (std::size_t l = 0; l < i; ++l)
            for (std::size_t k = 0; k < exponent(lower, l); ++k) v = apply(gen[l], v);
          for (std::size_t r = 0; r < n; ++r) gen[i][b][r] -= c[lower] * v[r];
        }
      }
    }
  }
  std::vector<RMatrix> out(n, RMatrix(n, std::vector<Rational>(n)));
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t col = 0; col < n; ++col) {
      std::vector<Rational> v(n);
      v[col] = 1;
      for (std::size_t l = 0; l < levels; ++l)
        for (std::size_t k = 0; k < exponent(b, l); ++k) v = apply(gen[l], v);
      out[b][col] = std::move(v);
    }
  return out;
}

Int lcm_of_denominators(const AlgebraElement& x) {
  Int d = 1;
  for (const auto& c : x) d = lcm(d, Int(c.get_den()));
  return d;
}

}  // namespace

std::vector<Int> minor_gcd_invariants(const IntMatrix& a) {
  std::vector<Int> out;
  Int previous = 1;
  const std::size_t kmax = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    Int g = 0;
    for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
        std::vector<std::vector<Int>> m(k, std::vector<Int>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a(rows[i], cols[j]);
        g = gcd(g, cofactor_determinant(m));
      });
    });
    if (g == 0) break;
    out.push_back(g / previous);
    previous = g;
  }
  return out;
}

Rational multiplication_norm(const TowerAlgebra& t, const AlgebraElement& x) {
  const auto mats = monomial_matrices(t);
  const std::size_t n = t.degree();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t b = 0; b < n; ++b)
    if (x[b] != 0)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) m[r][c] += x[b] * mats[b][c][r];
  return gauss_determinant(std::move(m));
}

// ---------------------------------------------------------------------------

QuotientRing::QuotientRing(const LocalField& field) : p_(field.p()) {
  k_ = 0;
  __int128 m = 1;
  while (m * static_cast<__int128>(p_) < (static_cast<__int128>(1) << 62)) {
    m *= p_;
    ++k_;
  }
  modulus_ = static_cast<std::int64_t>(m);

  const TowerAlgebra& t = field.algebra();
  n_ = t.degree();
  const auto mats = monomial_matrices(t);
  basis_mul_.assign(n_, std::vector<Vec>(n_, Vec(n_)));
  for (std::size_t b = 0; b < n_; ++b)
    for (std::size_t c = 0; c < n_; ++c)
      for (std::size_t r = 0; r < n_; ++r) {
        const Rational& v = mats[b][c][r];
        if (v.get_den() != 1) throw std::runtime_error("tower polynomial is not integral");
        Int z = v.get_num() % Int(modulus_);
        if (z < 0) z += modulus_;
        basis_mul_[b][c][r] = z.get_si();
      }

  pi_ = Vec(n_);
  pi_[0] = static_cast<std::int64_t>(p_);
  std::vector<std::size_t> unramified_strides, unramified_degrees;
  for (std::size_t i = 0; i < field.levels(); ++i) {
    if (field.steps()[i].kind == StepKind::Eisenstein) {
      e_ *= t.step_degree(i);
      pi_ = Vec(n_);
      pi_[t.degree(i)] = 1;  // t_{i+1}
    } else {
      f_ *= t.step_degree(i);
      unramified_strides.push_back(t.degree(i));
      unramified_degrees.push_back(t.step_degree(i));
    }
  }
  for (std::size_t i = 0; i < f_; ++i) q_ *= p_;

  // Residue representatives: polynomials in the unramified generators with
  // digits 0..p-1.
  std::vector<std::size_t> monomials{0};
  for (std::size_t s = 0; s < unramified_strides.size(); ++s) {
    std::vector<std::size_t> next;
    for (std::size_t m0 : monomials)
      for (std::size_t k = 0; k < unramified_degrees[s]; ++k) next.push_back(m0 + k * unramified_strides[s]);
    monomials = std::move(next);
  }
  residues_.push_back(Vec(n_));
  for (std::size_t idx = 0; idx < monomials.size(); ++idx) {
    std::vector<Vec> next;
    for (const Vec& r : residues_)
      for (std::uint64_t digit = 0; digit < p_; ++digit) {
        Vec v = r;
        v[monomials[idx]] = static_cast<std::int64_t>(digit);
        next.push_back(std::move(v));
      }
    residues_ = std::move(next);
  }
}

std::int64_t QuotientRing::mod(__int128 v) const {
  v %= modulus_;
  if (v < 0) v += modulus_;
  return static_cast<std::int64_t>(v);
}

QuotientRing::Vec QuotientRing::from(const AlgebraElement& x) const {
  Vec out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i].get_den() != 1) throw std::runtime_error("element is not integral");
    Int z = x[i].get_num() % Int(modulus_);
    if (z < 0) z += modulus_;
    out[i] = z.get_si();
  }
  return out;
}

QuotientRing::Vec QuotientRing::mul(const Vec& a, const Vec& b) const {
  std::vector<__int128> acc(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t c = 0; c < n_; ++c) {
      if (b[c] == 0) continue;
      const std::int64_t ab = mod(static_cast<__int128>(a[i]) * b[c]);
      const Vec& col = basis_mul_[i][c];
      for (std::size_t r = 0; r < n_; ++r)
        if (col[r]) acc[r] = mod(acc[r] + static_cast<__int128>(ab) * col[r]);
    }
  }
  Vec out(n_);
  for (std::size_t r = 0; r < n_; ++r) out[r] = mod(acc[r]);
  return out;
}

QuotientRing::Vec QuotientRing::add(const Vec& a, const Vec& b) const {
  Vec out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = mod(static_cast<__int128>(a[i]) + b[i]);
  return out;
}

QuotientRing::Vec QuotientRing::sub(const Vec& a, const Vec& b) const {
  Vec out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = mod(static_cast<__int128>(a[i]) - b[i]);
  return out;
}

QuotientRing::Vec QuotientRing::uniformizer_power(const Vec& x, long k) const {
  Vec out = x;
  for (long i = 0; i < k; ++i) out = mul(out, pi_);
  return out;
}

bool QuotientRing::is_zero(const Vec& x) const {
  for (auto c : x)
    if (c != 0) return false;
  return true;
}

bool QuotientRing::divisible(const Vec& x, long m) const {
  if (m <= 0) return true;
  const long e = static_cast<long>(e_);
  const long k = (m + e - 1) / e;
  if (k > k_) throw std::runtime_error("oracle precision exceeded");
  const Vec y = uniformizer_power(x, e * k - m);
  std::int64_t pk = 1;
  for (long i = 0; i < k; ++i) pk *= static_cast<std::int64_t>(p_);
  for (auto c : y)
    if (c % pk != 0) return false;
  return true;
}

long QuotientRing::valuation(const Vec& x) const {
  const long limit = static_cast<long>(e_) * (k_ - 4);
  long v = 0;
  while (v < limit && divisible(x, v + 1)) ++v;
  return v >= limit ? -1 : v;
}

std::vector<QuotientRing::Vec> QuotientRing::digit_expansions(std::size_t digits, bool unit) const {
  std::vector<Vec> out{Vec(n_)};
  Vec pj(n_);
  pj[0] = 1;
  for (std::size_t j = 0; j < digits; ++j) {
    std::vector<Vec> next;
    for (const Vec& w : out)
      for (std::size_t r = 0; r < residues_.size(); ++r) {
        if (unit && j == 0 && r == 0) continue;
        next.push_back(add(w, mul(residues_[r], pj)));
      }
    out = std::move(next);
    pj = mul(pj, pi_);
  }
  return out;
}

bool QuotientRing::is_square(const AlgebraElement& x) const {
  const Int den = lcm_of_denominators(x);
  AlgebraElement scaled = x;
  for (auto& c : scaled) c *= Rational(den * den);
  const Vec xv = from(scaled);
  const long v = valuation(xv);
  if (v < 0) throw std::runtime_error("oracle: element indistinguishable from zero");
  if (v % 2 != 0) return false;
  const long two = p_ == 2 ? static_cast<long>(e_) : 0;
  const long target = v + 2 * two + 1;
  const std::size_t digits = p_ == 2 ? e_ + 1 : 1;

  Vec shift(n_);
  shift[0] = 1;
  shift = uniformizer_power(shift, v / 2);
  // w^2 mod pi only depends on the leading digit, so filter on it first.
  for (std::size_t r = 1; r < residues_.size(); ++r) {
    const Vec y0 = mul(shift, residues_[r]);
    if (!divisible(sub(mul(y0, y0), xv), v + 1)) continue;
    std::vector<Vec> tails{Vec(n_)};
    Vec pj = pi_;
    for (std::size_t j = 1; j < digits; ++j) {
      std::vector<Vec> next;
      for (const Vec& w : tails)
        for (const Vec& res : residues_) next.push_back(add(w, mul(res, pj)));
      tails = std::move(next);
      pj = mul(pj, pi_);
    }
    for (const Vec& tail : tails) {
      const Vec y = mul(shift, add(residues_[r], tail));
      if (divisible(sub(mul(y, y), xv), target)) return true;
    }
  }
  return false;
}

std::size_t QuotientRing::square_class_group_order() const {
  const long two = p_ == 2 ? static_cast<long>(e_) : 0;
  const long n = 2 * two + 1;
  const auto units = digit_expansions(static_cast<std::size_t>(n), true);
  std::vector<Vec> squares;
  for (const Vec& u : units) {
    const Vec s = mul(u, u);
    bool seen = false;
    for (const Vec& t : squares)
      if (divisible(sub(s, t), n)) {
        seen = true;
        break;
      }
    if (!seen) squares.push_back(s);
  }
  return 2 * units.size() / squares.size();
}

}  // namespace oracle
