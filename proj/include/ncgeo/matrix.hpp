#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "ncgeo/scalar.hpp"

namespace ncgeo {

using Vec = std::vector<Scalar>;

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& s, const Vec& v);
bool is_zero(const Vec& v);

/// Dense matrix over Q(i).  Values are immutable by convention once built:
/// all library operations return fresh matrices.
class Matrix {
public:
  Matrix() : m_rows(0), m_cols(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : m_rows(rows), m_cols(cols), m_data(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix from_rows(const std::vector<Vec>& rows);
  static Matrix from_cols(const std::vector<Vec>& cols);
  /// s times the n x n identity.
  static Matrix scalar(std::size_t n, const Scalar& s);

  std::size_t rows() const { return m_rows; }
  std::size_t cols() const { return m_cols; }

  Scalar& at(std::size_t i, std::size_t j) { return m_data[i * m_cols + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return m_data[i * m_cols + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;

  Matrix transpose() const;
  Matrix conj() const;
  Matrix conj_transpose() const;

  bool is_zero() const;
  bool is_square() const { return m_rows == m_cols; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator-() const;
  friend Matrix operator*(const Scalar& s, const Matrix& m);
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  /// Matrix-vector product.
  Vec apply(const Vec& v) const;

  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);

  Matrix submatrix(std::size_t row0, std::size_t col0, std::size_t nrows,
                   std::size_t ncols) const;

  std::string str() const;

private:
  std::size_t m_rows, m_cols;
  std::vector<Scalar> m_data;
};

/// Reduced row-echelon form: pivots 1, pivot columns otherwise zero, pivot
/// columns strictly increasing, zero rows trailing.  Row space is preserved.
/// Elimination is fraction-free (Bareiss) on a denominator-cleared copy,
/// with a rational normalization pass at the end.
Matrix rref(const Matrix& m);

/// rref with the pivot column list exposed.
Matrix rref(const Matrix& m, std::vector<std::size_t>& pivots);

std::size_t rank(const Matrix& m);

/// Any exact solution x of m x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// All solutions of m X = b columnwise; nullopt if any column inconsistent.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

/// Exact inverse of a square matrix; throws SingularError when singular.
Matrix inverse(const Matrix& m);

/// A linear subspace of K^n held by its canonical RREF basis.  Two Subspace
/// values are equal as sets iff their basis matrices are identical.
class Subspace {
public:
  /// Empty placeholder (the zero subspace of a zero-dimensional space).
  Subspace() : m_ambient(0), m_basis(0, 0) {}

  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  static Subspace span(std::size_t ambient_dim, const std::vector<Vec>& vectors);
  static Subspace row_space(const Matrix& m);

  std::size_t ambient_dim() const { return m_ambient; }
  std::size_t dim() const { return m_basis.rows(); }
  const Matrix& basis() const { return m_basis; }
  const std::vector<std::size_t>& pivots() const { return m_pivots; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the basis rows, or nullopt if v is not a member.
  std::optional<Vec> coordinates(const Vec& v) const;

  Subspace sum(const Subspace& other) const;

  bool operator==(const Subspace& o) const {
    return m_ambient == o.m_ambient && m_basis == o.m_basis;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
  Subspace(std::size_t ambient, Matrix basis, std::vector<std::size_t> pivots)
      : m_ambient(ambient), m_basis(std::move(basis)), m_pivots(std::move(pivots)) {}

  std::size_t m_ambient;
  Matrix m_basis;  // dim x ambient, canonical RREF, no zero rows
  std::vector<std::size_t> m_pivots;
};

/// Basis of the right null space of m; dim = cols - rank.
Subspace kernel(const Matrix& m);

/// Column space of m as a subspace of K^rows.
Subspace image(const Matrix& m);

/// Linear quotient K^n -> K^n / S with an explicit projection and section.
/// projection . section = identity on the quotient; projection annihilates
/// exactly the kernel subspace.
class QuotientMap {
public:
  QuotientMap() : m_ambient(0), m_kernel(Subspace::zero(0)) {}

  std::size_t ambient_dim() const { return m_ambient; }
  std::size_t dim() const { return m_projection.rows(); }
  const Subspace& kernel_space() const { return m_kernel; }
  const Matrix& projection() const { return m_projection; }
  const Matrix& section() const { return m_section; }

  Vec project(const Vec& v) const { return m_projection.apply(v); }
  Vec lift(const Vec& q) const { return m_section.apply(q); }

  friend QuotientMap quotient(std::size_t ambient_dim, const Subspace& s);

private:
  std::size_t m_ambient;
  Subspace m_kernel;
  Matrix m_projection;  // dim x ambient
  Matrix m_section;     // ambient x dim
};

QuotientMap quotient(std::size_t ambient_dim, const Subspace& s);

}  // namespace ncgeo
