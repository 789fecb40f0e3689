#pragma once

// Exact integer linear algebra over arbitrary-precision integers.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace galcoh {

using Int = mpz_class;
using IntVector = std::vector<Int>;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(const std::vector<IntVector>& columns,
                                std::size_t rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows,
                             std::size_t cols);
  static IntMatrix diagonal(const IntVector& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  void set_column(std::size_t j, const IntVector& v);
  std::vector<IntVector> columns() const;

  IntMatrix transpose() const;
  IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                      std::size_t nc) const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  IntVector apply(const IntVector& x) const;

  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Int& s, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// U * A * V = S with S diagonal, d_i >= 0, d_i | d_{i+1}, zeros last.
/// U_inv and V_inv are the exact inverses of U and V.
struct SmithDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  IntMatrix U_inv;
  IntMatrix V_inv;
  std::size_t rank = 0;

  IntVector diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Lattice basis of {x : A x = 0}; the returned lattice is saturated.
std::vector<IntVector> kernel_basis(const IntMatrix& a);

/// Isomorphism type of Z^rows / (column span of the relation matrix).
struct CokernelStructure {
  std::size_t free_rank = 0;
  IntVector torsion;  // invariant factors > 1, each dividing the next

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  /// Order of the group; 0 when infinite.
  Int order() const;
  friend bool operator==(const CokernelStructure&,
                         const CokernelStructure&) = default;
  std::string to_string() const;
};

CokernelStructure cokernel_structure(const IntMatrix& relations);

std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b);

Int determinant(const IntMatrix& a);

/// Column echelon form A * V = H. Column j < rank of H has its pivot in row
/// pivot_rows[j] (strictly increasing), is zero above it, and the pivot is
/// positive. Columns rank.. of H are zero, so the matching columns of V span
/// the kernel of A.
struct ColumnEchelon {
  IntMatrix H;
  IntMatrix V;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

ColumnEchelon column_echelon(const IntMatrix& a);

/// Basis (as columns, full column rank) of the lattice spanned by the
/// columns of `generators`.
IntMatrix lattice_basis(const IntMatrix& generators);

/// Basis of {x in Z^n : (A x)_i == 0 mod moduli[i]}; modulus 0 means the
/// row must vanish exactly.
IntMatrix kernel_mod(const IntMatrix& a, const IntVector& moduli);

/// Coordinates with respect to a fixed full-column-rank lattice basis.
class LatticeCoordinates {
 public:
  LatticeCoordinates() = default;
  explicit LatticeCoordinates(const IntMatrix& basis);

  std::size_t dimension() const { return echelon_.rank; }
  std::size_t ambient_dimension() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  /// Coefficients c with basis * c = v, or nullopt when v is off-lattice.
  std::optional<IntVector> coordinates(const IntVector& v) const;

 private:
  IntMatrix basis_;
  ColumnEchelon echelon_;
};

/// The quotient Z / B of a lattice Z (given by a basis) by a sublattice B
/// (given by generators), in Smith-normalized coordinates.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(const IntMatrix& ambient_basis, const IntMatrix& sub_generators);

  /// Invariant factors of the nontrivial cyclic summands; 0 stands for Z.
  const IntVector& invariants() const { return invariants_; }
  std::size_t size() const { return invariants_.size(); }
  CokernelStructure structure() const;

  /// Representative (in ambient coordinates) of the j-th generator.
  IntVector generator(std::size_t j) const { return generators_.column(j); }
  const IntMatrix& generators() const { return generators_; }

  /// Class coordinates, reduced modulo the invariants; nullopt if v is not
  /// in the ambient lattice.
  std::optional<IntVector> coordinates(const IntVector& v) const;

  IntVector reduce(IntVector coords) const;

 private:
  LatticeCoordinates ambient_;
  IntMatrix u_rows_;  // rows of U for the kept summands
  IntVector invariants_;
  IntMatrix generators_;
};

/// Non-negative residue of a modulo m (m > 0); a itself when m == 0.
Int reduce_mod(const Int& a, const Int& m);

}  // namespace galcoh
