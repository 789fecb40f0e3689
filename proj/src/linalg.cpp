#include "galcoh/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace galcoh {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns,
                                  std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows)
      throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows,
                               std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void IntMatrix::set_column(std::size_t j, const IntVector& v) {
  if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

std::vector<IntVector> IntMatrix::columns() const {
  std::vector<IntVector> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw std::out_of_range("submatrix out of range");
  IntMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Int& x) { return x == 0; });
}

IntVector IntMatrix::apply(const IntVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  IntVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (x[j] != 0) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
  IntMatrix m(a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
  }
  return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
  IntMatrix m(a.rows_ + b.rows_, a.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, j) = b(i, j);
  return m;
}

IntMatrix IntMatrix::block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix sum: dimension mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix difference: dimension mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

IntMatrix operator*(const Int& s, const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.data_) x *= s;
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Int reduce_mod(const Int& a, const Int& m) {
  if (m == 0) return a;
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

namespace {

Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Elementary operations on S, mirrored on the transforms so that
// U * A * V = S holds throughout.
class SmithWorker {
 public:
  explicit SmithWorker(const IntMatrix& a)
      : S(a),
        U(IntMatrix::identity(a.rows())),
        V(IntMatrix::identity(a.cols())),
        Ui(IntMatrix::identity(a.rows())),
        Vi(IntMatrix::identity(a.cols())) {}

  void row_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < S.cols(); ++c) std::swap(S(i, c), S(j, c));
    for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U(i, c), U(j, c));
    for (std::size_t r = 0; r < Ui.rows(); ++r) std::swap(Ui(r, i), Ui(r, j));
  }
  // row_i += q * row_j
  void row_addmul(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < S.cols(); ++c)
      if (S(j, c) != 0) S(i, c) += q * S(j, c);
    for (std::size_t c = 0; c < U.cols(); ++c)
      if (U(j, c) != 0) U(i, c) += q * U(j, c);
    for (std::size_t r = 0; r < Ui.rows(); ++r)
      if (Ui(r, i) != 0) Ui(r, j) -= q * Ui(r, i);
  }
  void row_negate(std::size_t i) {
    for (std::size_t c = 0; c < S.cols(); ++c) S(i, c) = -S(i, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) = -U(i, c);
    for (std::size_t r = 0; r < Ui.rows(); ++r) Ui(r, i) = -Ui(r, i);
  }
  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < S.rows(); ++r) std::swap(S(r, i), S(r, j));
    for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V(r, i), V(r, j));
    for (std::size_t c = 0; c < Vi.cols(); ++c) std::swap(Vi(i, c), Vi(j, c));
  }
  // col_i += q * col_j
  void col_addmul(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < S.rows(); ++r)
      if (S(r, j) != 0) S(r, i) += q * S(r, j);
    for (std::size_t r = 0; r < V.rows(); ++r)
      if (V(r, j) != 0) V(r, i) += q * V(r, j);
    for (std::size_t c = 0; c < Vi.cols(); ++c)
      if (Vi(i, c) != 0) Vi(j, c) -= q * Vi(i, c);
  }

  IntMatrix S, U, V, Ui, Vi;
};

}  // namespace

IntVector SmithDecomposition::diagonal() const {
  IntVector d(std::min(S.rows(), S.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = S(i, i);
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  SmithWorker w(a);
  IntMatrix& S = w.S;
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (S(i, j) != 0 && (!found || abs(S(i, j)) < abs(S(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (S(i, t) != 0) {
          w.row_addmul(i, t, -tdiv(S(i, t), S(t, t)));
          if (S(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (S(t, j) != 0) {
          w.col_addmul(j, t, -tdiv(S(t, j), S(t, t)));
          if (S(t, j) != 0) clean = false;
        }
      if (!clean) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (S(i, t) != 0 && abs(S(i, t)) < abs(S(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(t, j) != 0 && abs(S(t, j)) < abs(S(bi, bj))) bi = t, bj = j;
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        continue;
      }
      // Divisibility: fold an offending row into the pivot row.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) != 0 && !mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            w.row_addmul(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (S(t, t) < 0) w.row_negate(t);
  }
  SmithDecomposition out;
  out.rank = t;
  out.S = std::move(w.S);
  out.U = std::move(w.U);
  out.V = std::move(w.V);
  out.U_inv = std::move(w.Ui);
  out.V_inv = std::move(w.Vi);
  return out;
}

Int CokernelStructure::order() const {
  if (free_rank > 0) return 0;
  Int o = 1;
  for (const auto& d : torsion) o *= d;
  return o;
}

std::string CokernelStructure::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  for (std::size_t i = 0; i < free_rank; ++i) {
    if (!first) os << " + ";
    os << "Z";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

CokernelStructure cokernel_structure(const IntMatrix& relations) {
  const SmithDecomposition snf = smith_normal_form(relations);
  CokernelStructure c;
  c.free_rank = relations.rows() - snf.rank;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.S(i, i) != 1) c.torsion.push_back(snf.S(i, i));
  return c;
}

std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
  const SmithDecomposition snf = smith_normal_form(a);
  const IntVector ub = snf.U.apply(b);
  IntVector y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < snf.rank) {
      const Int& d = snf.S(i, i);
      if (!mpz_divisible_p(ub[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      y[i] = ub[i] / d;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V.apply(y);
}

Int determinant(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  IntMatrix m = a;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

ColumnEchelon column_echelon(const IntMatrix& a) {
  ColumnEchelon e;
  e.H = a;
  e.V = IntMatrix::identity(a.cols());
  IntMatrix& H = e.H;
  IntMatrix& V = e.V;
  const std::size_t m = a.rows(), n = a.cols();
  auto col_addmul = [&](std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < m; ++r)
      if (H(r, j) != 0) H(r, i) += q * H(r, j);
    for (std::size_t r = 0; r < n; ++r)
      if (V(r, j) != 0) V(r, i) += q * V(r, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m; ++r) std::swap(H(r, i), H(r, j));
    for (std::size_t r = 0; r < n; ++r) std::swap(V(r, i), V(r, j));
  };
  std::size_t c = 0;
  for (std::size_t i = 0; i < m && c < n; ++i) {
    for (;;) {
      std::size_t p = n;
      for (std::size_t j = c; j < n; ++j)
        if (H(i, j) != 0 && (p == n || abs(H(i, j)) < abs(H(i, p)))) p = j;
      if (p == n) break;
      bool single = true;
      for (std::size_t j = c; j < n; ++j)
        if (j != p && H(i, j) != 0) {
          col_addmul(j, p, -tdiv(H(i, j), H(i, p)));
          if (H(i, j) != 0) single = false;
        }
      if (!single) continue;
      col_swap(c, p);
      if (H(i, c) < 0) {
        for (std::size_t r = 0; r < m; ++r) H(r, c) = -H(r, c);
        for (std::size_t r = 0; r < n; ++r) V(r, c) = -V(r, c);
      }
      // Reduce earlier pivot columns in this row to [0, pivot).
      for (std::size_t j = 0; j < c; ++j)
        if (H(i, j) != 0) col_addmul(j, c, -fdiv(H(i, j), H(i, c)));
      e.pivot_rows.push_back(i);
      ++c;
      break;
    }
  }
  e.rank = c;
  return e;
}

std::vector<IntVector> kernel_basis(const IntMatrix& a) {
  const ColumnEchelon e = column_echelon(a);
  std::vector<IntVector> out;
  for (std::size_t j = e.rank; j < a.cols(); ++j) out.push_back(e.V.column(j));
  return out;
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  const ColumnEchelon e = column_echelon(generators);
  return e.H.submatrix(0, 0, generators.rows(), e.rank);
}

IntMatrix kernel_mod(const IntMatrix& a, const IntVector& moduli) {
  if (moduli.size() != a.rows()) throw std::invalid_argument("kernel_mod: moduli size");
  const std::size_t n = a.cols();
  IntMatrix basis = IntMatrix::identity(n);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::size_t k = basis.cols();
    if (k == 0) break;
    const Int& m = moduli[i];
    if (m == 1) continue;
    IntVector w(k);
    bool zero = true;
    for (std::size_t j = 0; j < k; ++j) {
      Int acc = 0;
      for (std::size_t r = 0; r < n; ++r)
        if (a(i, r) != 0 && basis(r, j) != 0) acc += a(i, r) * basis(r, j);
      w[j] = reduce_mod(acc, m);
      if (w[j] != 0) zero = false;
    }
    if (zero) continue;
    // Kernel of the single row [w | m] (or [w] when m == 0), projected onto
    // the first k coordinates.
    IntMatrix row(1, m == 0 ? k : k + 1);
    for (std::size_t j = 0; j < k; ++j) row(0, j) = w[j];
    if (m != 0) row(0, k) = m;
    const ColumnEchelon e = column_echelon(row);
    IntMatrix y(k, row.cols() - e.rank);
    for (std::size_t j = e.rank; j < row.cols(); ++j)
      for (std::size_t r = 0; r < k; ++r) y(r, j - e.rank) = e.V(r, j);
    basis = basis * y;
  }
  return lattice_basis(basis);
}

// ---------------------------------------------------------------------------
// LatticeCoordinates / Subquotient

LatticeCoordinates::LatticeCoordinates(const IntMatrix& basis)
    : basis_(basis), echelon_(column_echelon(basis)) {
  if (echelon_.rank != basis.cols())
    throw std::invalid_argument("lattice basis is not of full column rank");
}

std::optional<IntVector> LatticeCoordinates::coordinates(const IntVector& v) const {
  if (v.size() != basis_.rows()) throw std::invalid_argument("coordinates: dimension mismatch");
  IntVector r = v;
  IntVector y(echelon_.rank);
  const IntMatrix& H = echelon_.H;
  for (std::size_t j = 0; j < echelon_.rank; ++j) {
    const std::size_t p = echelon_.pivot_rows[j];
    if (r[p] == 0) continue;
    if (!mpz_divisible_p(r[p].get_mpz_t(), H(p, j).get_mpz_t())) return std::nullopt;
    y[j] = r[p] / H(p, j);
    for (std::size_t i = p; i < r.size(); ++i)
      if (H(i, j) != 0) r[i] -= y[j] * H(i, j);
  }
  for (const auto& x : r)
    if (x != 0) return std::nullopt;
  return echelon_.V.apply(y);
}

Subquotient::Subquotient(const IntMatrix& ambient_basis, const IntMatrix& sub_generators)
    : ambient_(ambient_basis) {
  const std::size_t k = ambient_basis.cols();
  IntMatrix x(k, sub_generators.cols());
  for (std::size_t j = 0; j < sub_generators.cols(); ++j) {
    auto c = ambient_.coordinates(sub_generators.column(j));
    if (!c) throw std::logic_error("subquotient: sublattice not contained in ambient lattice");
    x.set_column(j, *c);
  }
  const SmithDecomposition snf = smith_normal_form(x);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < k; ++i) {
    const Int d = i < snf.rank ? snf.S(i, i) : Int(0);
    if (d == 1) continue;
    kept.push_back(i);
    invariants_.push_back(d);
  }
  u_rows_ = IntMatrix(kept.size(), k);
  IntMatrix ui_cols(k, kept.size());
  for (std::size_t t = 0; t < kept.size(); ++t)
    for (std::size_t c = 0; c < k; ++c) {
      u_rows_(t, c) = snf.U(kept[t], c);
      ui_cols(c, t) = snf.U_inv(c, kept[t]);
    }
  generators_ = ambient_basis * ui_cols;
}

CokernelStructure Subquotient::structure() const {
  CokernelStructure c;
  for (const auto& d : invariants_)
    if (d == 0)
      ++c.free_rank;
    else
      c.torsion.push_back(d);
  return c;
}

IntVector Subquotient::reduce(IntVector coords) const {
  for (std::size_t i = 0; i < coords.size(); ++i)
    coords[i] = reduce_mod(coords[i], invariants_[i]);
  return coords;
}

std::optional<IntVector> Subquotient::coordinates(const IntVector& v) const {
  auto c = ambient_.coordinates(v);
  if (!c) return std::nullopt;
  return reduce(u_rows_.apply(*c));
}

}  // namespace galcoh
