#pragma once

#include <optional>
#include <vector>

#include "hopfkit/scalar.hpp"

namespace hopfkit {

using Vec = std::vector<Scalar>;

/// Dense matrix over a single coefficient field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(long rows, long cols, const FieldDesc& f);
  static Matrix identity(long n, const FieldDesc& f);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const FieldDesc& field() const { return field_; }

  Scalar& at(long i, long j) { return a_[i * cols_ + j]; }
  const Scalar& at(long i, long j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Vec apply(const Vec& x) const;        // M * x
  Vec apply_left(const Vec& x) const;   // x^T * M
  bool operator==(const Matrix& o) const;

  Vec row(long i) const;
  void set_row(long i, const Vec& v);

  bool is_zero() const;

 private:
  long rows_ = 0, cols_ = 0;
  FieldDesc field_ = FieldDesc::rationals();
  std::vector<Scalar> a_;
};

struct RrefResult {
  long rank = 0;
  Matrix R;          // reduced row echelon form of M
  Matrix transform;  // invertible, transform * M = R
  std::vector<long> pivots;
};

/// Reduced row echelon form with transform certificate.
RrefResult rref(const Matrix& m);

/// One solution of M x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// Null space {x : M x = 0} as a canonical subspace.
class Subspace;
Subspace kernel(const Matrix& m);

Scalar determinant(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

/// Minimal polynomial of a square matrix, monic, low-degree-first coefficients.
Vec minimal_polynomial(const Matrix& m);

/// Subspace of k^n with a canonical RREF basis; equality is structural.
class Subspace {
 public:
  Subspace() = default;
  Subspace(long ambient_dim, const FieldDesc& f);  // zero subspace
  static Subspace span(long ambient_dim, const FieldDesc& f,
                       const std::vector<Vec>& vectors);
  static Subspace full(long ambient_dim, const FieldDesc& f);

  long ambient_dim() const { return ambient_; }
  long dim() const { return basis_.rows(); }
  const FieldDesc& field() const { return field_; }
  const Matrix& basis() const { return basis_; }
  Vec basis_vector(long i) const { return basis_.row(i); }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  bool operator==(const Subspace& o) const;

  /// Coordinates of v in the RREF basis, if v lies in the subspace.
  std::optional<Vec> coordinates(const Vec& v) const;

  /// Residue of v modulo the subspace: v minus its projection onto the
  /// pivot coordinates (canonical normal form for the quotient).
  Vec reduce(const Vec& v) const;

  /// Indices of the non-pivot coordinates (a complement basis for the quotient).
  std::vector<long> complement_indices() const;

 private:
  long ambient_ = 0;
  FieldDesc field_ = FieldDesc::rationals();
  Matrix basis_;  // rows in RREF, pivot columns strictly increasing
  std::vector<long> pivots_;
  void recompute_pivots();
  friend Subspace kernel(const Matrix& m);
};

/// Row-major flattening of i (x) j in dim1 (x) dim2: index i*dim2 + j.
inline long tensor_index(long i, long j, long dim2) { return i * dim2 + j; }

}  // namespace hopfkit
