#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "ncgeo/error.hpp"

namespace ncgeo {

using Rational = mpq_class;

/// Element of the field Q(i): re + im*i with arbitrary-precision rational
/// parts.  Denominators are kept positive and in lowest terms (GMP canonical
/// form).  All arithmetic is exact; there is no floating-point fallback.
class Scalar {
public:
  Scalar() : m_re(0), m_im(0) {}
  Scalar(int n) : m_re(n), m_im(0) {}
  Scalar(long n) : m_re(n), m_im(0) {}
  Scalar(Rational re) : m_re(std::move(re)) { canonical(m_re); }
  Scalar(Rational re, Rational im) : m_re(std::move(re)), m_im(std::move(im)) {
    canonical(m_re);
    canonical(m_im);
  }

  /// num/den constructor, canonicalized.
  static Scalar of(long num, long den);
  /// The imaginary unit.
  static Scalar i();

  const Rational& re() const { return m_re; }
  const Rational& im() const { return m_im; }

  bool is_zero() const { return m_re == 0 && m_im == 0; }
  bool is_real() const { return m_im == 0; }

  Scalar conj() const { return Scalar(m_re, -m_im); }

  /// Exact multiplicative inverse; throws SingularError on zero.
  Scalar inverse() const;

  Scalar operator-() const { return Scalar(-m_re, -m_im); }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.m_re == b.m_re && a.m_im == b.m_im;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "3/2", "-1+2i", "1/2-3/4i", "0".
  std::string str() const;

  /// Parses the str() grammar; throws Error on malformed input.
  static Scalar parse(const std::string& text);

private:
  static void canonical(Rational& q) { q.canonicalize(); }

  Rational m_re, m_im;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace ncgeo
