#pragma once

// Towers of local fields built from unramified and Eisenstein steps over
// Q_p, with exact elements and certified p-adic decisions.

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "galcoh/linalg.hpp"

namespace galcoh {

using Rational = mpq_class;

/// Element of Q[t_1, ..., t_k] / (f_1, ..., f_k) in the monomial basis
/// t_1^{i_1} ... t_k^{i_k}, i_j < deg f_j, with the lowest level varying
/// fastest. The length of the vector fixes the level.
using AlgebraElement = std::vector<Rational>;

/// Monic polynomial over the level below, little-endian; the last
/// coefficient is 1.
using TowerPolynomial = std::vector<AlgebraElement>;

/// The exact Q-algebra of a tower of monic polynomials.
class TowerAlgebra {
 public:
  TowerAlgebra() = default;
  explicit TowerAlgebra(std::vector<TowerPolynomial> polys);

  std::size_t levels() const { return polys_.size(); }
  /// Dimension over Q of level `level` (level 0 is Q).
  std::size_t degree(std::size_t level) const { return degrees_[level]; }
  std::size_t degree() const { return degrees_.back(); }
  std::size_t step_degree(std::size_t step) const { return polys_[step].size() - 1; }
  const TowerPolynomial& polynomial(std::size_t step) const { return polys_[step]; }
  const std::vector<TowerPolynomial>& polynomials() const { return polys_; }

  /// Level of an element from its length.
  std::size_t level_of(const AlgebraElement& x) const;

  AlgebraElement zero(std::size_t level) const;
  AlgebraElement one(std::size_t level) const;
  AlgebraElement constant(const Rational& c, std::size_t level) const;
  /// t_i (1-based) at the given level.
  AlgebraElement generator(std::size_t i, std::size_t level) const;

  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement neg(const AlgebraElement& a) const;
  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement pow(const AlgebraElement& a, unsigned long k) const;
  /// Pads a lower-level element to `level`.
  AlgebraElement embed(const AlgebraElement& a, std::size_t level) const;
  bool is_zero(const AlgebraElement& a) const;

  /// Determinant of multiplication by x over the level `to_level`.
  AlgebraElement norm(const AlgebraElement& x, std::size_t to_level) const;

  /// Parses integers, rationals a/b, generators t1, t2, ... with + - * ^ and
  /// parentheses; division only by rational constants.
  AlgebraElement parse(std::string_view text, std::size_t level) const;
  std::string format(const AlgebraElement& x) const;

 private:
  std::vector<TowerPolynomial> polys_;
  std::vector<std::size_t> degrees_{1};
};

enum class StepKind { Unramified, Eisenstein };

struct TowerStep {
  StepKind kind;
  TowerPolynomial poly;
};

/// Approximation p^{-shift} * sum coords[i] b_i with every coordinate known
/// modulo p^precision (b_i the integral monomial basis).
struct PadicElement {
  IntVector coords;
  long shift = 0;
  long precision = 0;
};

/// Precision policy, in uniformizer digits. initial == 0 selects the
/// default max(24, 6 v(2) + 12); decisions double the precision until
/// certified, up to `cap`.
struct Precision {
  long initial = 0;
  long cap = 4096;
};

class LocalField {
 public:
  /// Validates every step: Eisenstein polynomials must have lower
  /// coefficients in the maximal ideal and constant term of valuation one;
  /// unramified polynomials must be irreducible over the residue field.
  LocalField(unsigned long p, std::vector<TowerStep> steps, Precision precision = {});

  static LocalField rationals(unsigned long p);
  LocalField extended(TowerStep step) const;
  /// The field of the first `levels` steps.
  LocalField prefix(std::size_t levels) const;
  /// True when `k` is this field's tower truncated.
  bool extends(const LocalField& k) const;

  unsigned long p() const { return p_; }
  std::size_t levels() const { return steps_.size(); }
  const std::vector<TowerStep>& steps() const { return steps_; }
  const TowerAlgebra& algebra() const { return algebra_; }
  std::size_t degree() const { return algebra_.degree(); }
  std::size_t ramification_index() const { return e_.back(); }
  std::size_t residue_degree() const { return f_.back(); }
  Int residue_size() const;
  /// v(2) for the normalized valuation.
  long valuation_of_two() const { return p_ == 2 ? static_cast<long>(ramification_index()) : 0; }
  long default_precision() const;

  AlgebraElement parse(std::string_view text) const { return algebra_.parse(text, levels()); }
  AlgebraElement uniformizer() const;
  /// Lifts of all residue field elements (q of them, zero first).
  std::vector<AlgebraElement> residue_representatives() const;

  PadicElement to_padic(const AlgebraElement& x, long digits) const;
  PadicElement mul(const PadicElement& a, const PadicElement& b) const;
  PadicElement add(const PadicElement& a, const PadicElement& b) const;
  PadicElement sub(const PadicElement& a, const PadicElement& b) const;

  /// Normalized valuation (uniformizer has valuation 1); PrecisionError if
  /// the value is indistinguishable from zero.
  long valuation(const PadicElement& x) const;
  long valuation(const AlgebraElement& x) const;

  bool is_square(const AlgebraElement& x) const;

  /// N_{L/K}(x) for K a prefix of this field, exactly.
  AlgebraElement norm(const AlgebraElement& x, const LocalField& k) const;

  /// Basis of K^x / K^x^2 over F_2.
  std::vector<AlgebraElement> square_class_basis() const;
  /// Coordinates of x over the given basis.
  std::vector<int> square_class(const AlgebraElement& x,
                                const std::vector<AlgebraElement>& basis) const;

  const Precision& precision() const { return precision_; }
  LocalField with_precision(Precision p) const;

  std::string describe() const;

 private:
  friend class PadicRing;
  void append(TowerStep step);
  bool is_square_at(const AlgebraElement& x, long v, long digits) const;

  unsigned long p_;
  std::vector<TowerStep> steps_;
  TowerAlgebra algebra_;
  Precision precision_;
  std::vector<std::size_t> e_{1};  // ramification index per level
  std::vector<std::size_t> f_{1};  // residue degree per level
  // Per level: basis indices with no positive Eisenstein exponent.
  std::vector<std::vector<std::size_t>> residue_indices_{{0}};
};

/// Monic irreducible polynomial of degree n over the residue field of k,
/// lifted to a tower polynomial; the first one in a fixed enumeration.
TowerPolynomial find_unramified_polynomial(const LocalField& k, std::size_t n);
/// x^n - pi_k.
TowerPolynomial eisenstein_polynomial(const LocalField& k, std::size_t n);

}  // namespace galcoh
