#pragma once

#include <vector>

#include "ncgeo/algebra.hpp"

namespace ncgeo {

/// A universal form of degree k over A, held by its coefficient vector in
/// the full tensor power A^{(x)(k+1)} (row-major multi-index).  Degree-0
/// forms are algebra elements; degree-k forms built by the library lie in
/// the span of monomials a0 da1 ... dak.
class UniversalForm {
public:
  UniversalForm(AlgebraPtr algebra, std::size_t degree, Vec coeffs);

  static UniversalForm zero(AlgebraPtr algebra, std::size_t degree);

  const AlgebraPtr& algebra() const { return m_algebra; }
  std::size_t degree() const { return m_degree; }
  const Vec& coeffs() const { return m_coeffs; }
  bool is_zero() const { return ncgeo::is_zero(m_coeffs); }

  UniversalForm operator+(const UniversalForm& o) const;
  UniversalForm operator-(const UniversalForm& o) const;
  friend UniversalForm operator*(const Scalar& s, const UniversalForm& w);
  bool operator==(const UniversalForm& o) const;
  bool operator!=(const UniversalForm& o) const { return !(*this == o); }

private:
  AlgebraPtr m_algebra;
  std::size_t m_degree;
  Vec m_coeffs;
};

/// Per-algebra context for the universal calculus: caches the span of
/// monomials per degree up to a construction-time bound (default 3).
/// Degree-k spans have dimension m(m-1)^k; the tensor power grows as
/// m^{k+1}, which is why the bound exists.
class UniversalCalculus {
public:
  explicit UniversalCalculus(AlgebraPtr algebra, std::size_t max_degree = 3);

  const AlgebraPtr& algebra() const { return m_algebra; }
  std::size_t max_degree() const { return m_max_degree; }

  /// Span of monomials of the given degree inside A^{(x)(k+1)}.
  const Subspace& span(std::size_t degree) const;
  /// Membership in the monomial span.
  bool in_span(const UniversalForm& w) const;
  /// Coordinates in the span basis (throws if outside).
  Vec span_coordinates(const UniversalForm& w) const;
  UniversalForm from_span_coordinates(std::size_t degree, const Vec& coords) const;

private:
  AlgebraPtr m_algebra;
  std::size_t m_max_degree;
  std::vector<Subspace> m_spans;
};

/// Kernel of the multiplication map mu^1 : A (x) A -> A; the degree-1 part
/// of the universal calculus.  Dimension m^2 - m.
Subspace universal_one_forms(const AlgebraPtr& a);

/// delta a = 1 (x) a - a (x) 1.
UniversalForm udelta(const AlgebraElement& a);

/// a0 . delta a1 ... delta ak realized in the tensor power.
UniversalForm umonomial(const AlgebraElement& a0,
                        const std::vector<AlgebraElement>& rest);

/// Product of universal forms: concatenation with multiplication of the
/// adjacent slots; degree adds.
UniversalForm uproduct(const UniversalForm& w, const UniversalForm& w2);

/// b . w . c.
UniversalForm ubimodule_action(const AlgebraElement& b, const UniversalForm& w,
                               const AlgebraElement& c);

/// The universal differential: inserts the unit into each slot with
/// alternating signs.  On the monomial span this implements
/// delta(a0 da1...dak) = da0 da1...dak; delta o delta = 0.
UniversalForm udifferential(const UniversalForm& w);

}  // namespace ncgeo
