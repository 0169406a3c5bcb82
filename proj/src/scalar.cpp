#include "ncgeo/scalar.hpp"

#include <cctype>
#include <ostream>

namespace ncgeo {

Scalar Scalar::of(long num, long den) {
  if (den == 0) throw SingularError("Scalar::of: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::i() { return Scalar(Rational(0), Rational(1)); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw SingularError("Scalar::inverse: zero has no inverse");
  Rational n = m_re * m_re + m_im * m_im;
  return Scalar(m_re / n, -m_im / n);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  m_re += o.m_re;
  m_im += o.m_im;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  m_re -= o.m_re;
  m_im -= o.m_im;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational re = m_re * o.m_re - m_im * o.m_im;
  Rational im = m_re * o.m_im + m_im * o.m_re;
  m_re = std::move(re);
  m_im = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

namespace {

std::string rational_str(const Rational& q) {
  std::string s = q.get_num().get_str();
  if (q.get_den() != 1) s += "/" + q.get_den().get_str();
  return s;
}

// Parses "[+-]digits[/digits]" starting at pos; advances pos.
Rational parse_rational(const std::string& t, std::size_t& pos) {
  std::size_t start = pos;
  if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) ++pos;
  std::size_t digits = 0;
  while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
    ++pos;
    ++digits;
  }
  if (digits == 0 && pos < t.size() && t[pos] == 'i') {
    // bare "i" or "-i": coefficient 1
    std::string sign = (start < pos && t[start] == '-') ? "-1" : "1";
    return Rational(sign);
  }
  if (digits == 0) throw Error("Scalar::parse: expected digits in '" + t + "'");
  std::string num = t.substr(start, pos - start);
  if (!num.empty() && num.front() == '+') num.erase(num.begin());  // GMP rejects '+'
  if (pos < t.size() && t[pos] == '/') {
    ++pos;
    std::size_t dstart = pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos == dstart) throw Error("Scalar::parse: missing denominator in '" + t + "'");
    Rational q(num + "/" + t.substr(dstart, pos - dstart));
    q.canonicalize();
    return q;
  }
  return Rational(num);
}

}  // namespace

std::string Scalar::str() const {
  if (is_zero()) return "0";
  std::string out;
  if (m_re != 0) out = rational_str(m_re);
  if (m_im != 0) {
    if (!out.empty() && m_im > 0) out += "+";
    if (m_im == 1)
      out += "i";
    else if (m_im == -1)
      out += "-i";
    else
      out += rational_str(m_im) + "i";
  }
  return out;
}

Scalar Scalar::parse(const std::string& text) {
  if (text.empty()) throw Error("Scalar::parse: empty input");
  std::size_t pos = 0;
  Rational first = parse_rational(text, pos);
  if (pos == text.size()) return Scalar(first);
  if (text[pos] == 'i') {
    ++pos;
    if (pos != text.size()) throw Error("Scalar::parse: trailing input in '" + text + "'");
    return Scalar(Rational(0), first);
  }
  if (text[pos] != '+' && text[pos] != '-')
    throw Error("Scalar::parse: malformed scalar '" + text + "'");
  Rational second = parse_rational(text, pos);
  if (pos >= text.size() || text[pos] != 'i')
    throw Error("Scalar::parse: expected imaginary part in '" + text + "'");
  ++pos;
  if (pos != text.size()) throw Error("Scalar::parse: trailing input in '" + text + "'");
  return Scalar(first, second);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace ncgeo
