#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncgeo/matrix.hpp"

namespace ncgeo {

class FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// Element of a finite-dimensional algebra, held as a coefficient column
/// over the algebra's distinguished basis.
class AlgebraElement {
public:
  AlgebraElement(AlgebraPtr algebra, Vec coeffs);

  const AlgebraPtr& algebra() const { return m_algebra; }
  const Vec& coeffs() const { return m_coeffs; }
  std::size_t dim() const { return m_coeffs.size(); }

  bool is_zero() const { return ncgeo::is_zero(m_coeffs); }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  friend AlgebraElement operator*(const Scalar& s, const AlgebraElement& a);
  bool operator==(const AlgebraElement& o) const;
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  /// a*; requires the algebra to carry an involution.
  AlgebraElement involution() const;

private:
  AlgebraPtr m_algebra;
  Vec m_coeffs;
};

/// An associative unital algebra over Q(i) presented by a structure tensor
/// e_i e_j = sum_k c^k_{ij} e_k.  Construction validates associativity and
/// the unit laws on all basis pairs/triples, and the involution axioms when
/// an involution is supplied.  Instances are immutable and shared by
/// pointer; elements compare algebras by pointer identity.
class FiniteAlgebra : public std::enable_shared_from_this<FiniteAlgebra> {
public:
  /// table[i][j] = coefficients of e_i e_j.  involution, when present, maps
  /// coefficient columns antilinearly: a* = M conj(a).
  static AlgebraPtr create(std::string label,
                           std::vector<std::vector<Vec>> table, Vec unit,
                           std::optional<Matrix> involution = std::nullopt);

  std::size_t dim() const { return m_dim; }
  const std::string& label() const { return m_label; }
  bool is_commutative() const { return m_commutative; }
  bool has_involution() const { return m_involution.has_value(); }
  const Matrix& involution_matrix() const;

  AlgebraElement unit() const;
  AlgebraElement zero() const;
  AlgebraElement element(Vec coeffs) const;
  AlgebraElement basis_element(std::size_t i) const;

  Vec product(const Vec& a, const Vec& b) const;
  /// Matrix of x -> a x  in basis coordinates.
  Matrix left_mult_matrix(const Vec& a) const;
  /// Matrix of x -> x a.
  Matrix right_mult_matrix(const Vec& a) const;
  Vec involution_coeffs(const Vec& a) const;

  const Vec& table(std::size_t i, std::size_t j) const { return m_table[i][j]; }

private:
  FiniteAlgebra() = default;
  void validate() const;

  std::string m_label;
  std::size_t m_dim = 0;
  std::vector<std::vector<Vec>> m_table;
  Vec m_unit;
  std::optional<Matrix> m_involution;
  bool m_commutative = false;
};

/// A derivation u of a finite algebra: a linear self-map satisfying the
/// Leibniz rule u(ab) = u(a)b + a u(b), validated on all basis pairs.
class Derivation {
public:
  Derivation(AlgebraPtr algebra, Matrix action, bool validate = true);

  const AlgebraPtr& algebra() const { return m_algebra; }
  const Matrix& action() const { return m_action; }
  AlgebraElement apply(const AlgebraElement& a) const;

  bool is_zero() const { return m_action.is_zero(); }
  Derivation operator+(const Derivation& o) const;
  Derivation operator-(const Derivation& o) const;
  friend Derivation operator*(const Scalar& s, const Derivation& u);
  /// Composition with left multiplication: (a u)(x) = a * u(x).
  friend Derivation operator*(const AlgebraElement& a, const Derivation& u);
  bool operator==(const Derivation& o) const;

private:
  AlgebraPtr m_algebra;
  Matrix m_action;
};

// --- shipped algebra constructors -----------------------------------------

/// Full matrix algebra M_n with the elementary-matrix basis E_{jk} (row
/// major) and conjugate-transpose involution.
AlgebraPtr matrix_algebra(std::size_t n);

/// Functions on an N-point set: e_i e_j = delta_{ij} e_i, unit (1,...,1),
/// involution = coefficientwise conjugation.
AlgebraPtr function_algebra(std::size_t N);

/// K[x]/(x^N) with basis 1, x, ..., x^{N-1}.
AlgebraPtr truncated_polynomial_algebra(std::size_t N);

/// Block direct sum A + B.
AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);

// --- structural computations ----------------------------------------------

/// Basis of { z : z e_i = e_i z for all i }, canonical echelon order.
std::vector<AlgebraElement> centre_basis(const AlgebraPtr& a);

/// Basis of the solution space of the Leibniz constraints; canonical order.
std::vector<Derivation> derivation_basis(const AlgebraPtr& a);

Derivation lie_bracket(const Derivation& u, const Derivation& v);

/// ad b : a -> b a - a b.
Derivation inner_derivation(const AlgebraElement& b);

/// u* with u*(a) = (u(a*))*.
Derivation derivation_involution(const Derivation& u);

/// Integer anti-Hermitian basis of su(n) inside M_n together with the exact
/// structure constants of the commutator: [eps_r, eps_q] = sum_s c(r,q,s) eps_s.
struct SuBasis {
  std::size_t n = 0;
  AlgebraPtr algebra;  // matrix_algebra(n)
  std::vector<AlgebraElement> epsilons;
  /// c[r][q] = coefficient column of [eps_r, eps_q] in the epsilon basis.
  std::vector<std::vector<Vec>> c;

  std::size_t rank() const { return epsilons.size(); }
  const Scalar& structure(std::size_t r, std::size_t q, std::size_t s) const {
    return c[r][q][s];
  }
};

SuBasis su_basis(std::size_t n);

}  // namespace ncgeo
