#include "ncgeo/universal.hpp"

#include <utility>

#include "ncgeo/error.hpp"

namespace ncgeo {

namespace {

std::size_t tensor_dim(std::size_t m, std::size_t degree) {
  std::size_t d = m;
  for (std::size_t k = 0; k < degree; ++k) d *= m;
  return d;
}

}  // namespace

UniversalForm::UniversalForm(AlgebraPtr algebra, std::size_t degree, Vec coeffs)
    : m_algebra(std::move(algebra)), m_degree(degree), m_coeffs(std::move(coeffs)) {
  if (m_coeffs.size() != tensor_dim(m_algebra->dim(), m_degree))
    throw DimensionError("UniversalForm: coefficient length != m^(k+1)");
}

UniversalForm UniversalForm::zero(AlgebraPtr algebra, std::size_t degree) {
  Vec c(tensor_dim(algebra->dim(), degree));
  return UniversalForm(std::move(algebra), degree, std::move(c));
}

UniversalForm UniversalForm::operator+(const UniversalForm& o) const {
  if (m_algebra != o.m_algebra || m_degree != o.m_degree)
    throw MismatchError("universal form add: degree or algebra mismatch");
  return UniversalForm(m_algebra, m_degree, m_coeffs + o.m_coeffs);
}

UniversalForm UniversalForm::operator-(const UniversalForm& o) const {
  if (m_algebra != o.m_algebra || m_degree != o.m_degree)
    throw MismatchError("universal form sub: degree or algebra mismatch");
  return UniversalForm(m_algebra, m_degree, m_coeffs - o.m_coeffs);
}

UniversalForm operator*(const Scalar& s, const UniversalForm& w) {
  return UniversalForm(w.m_algebra, w.m_degree, s * w.m_coeffs);
}

bool UniversalForm::operator==(const UniversalForm& o) const {
  return m_algebra == o.m_algebra && m_degree == o.m_degree && m_coeffs == o.m_coeffs;
}

UniversalCalculus::UniversalCalculus(AlgebraPtr algebra, std::size_t max_degree)
    : m_algebra(std::move(algebra)), m_max_degree(max_degree) {
  const std::size_t m = m_algebra->dim();
  m_spans.reserve(max_degree + 1);
  m_spans.push_back(Subspace::full(m));  // degree 0: the whole algebra
  // Degree k spans: monomials over basis tuples; multilinearity makes the
  // basis tuples sufficient.
  std::vector<AlgebraElement> basis;
  for (std::size_t i = 0; i < m; ++i) basis.push_back(m_algebra->basis_element(i));
  std::vector<UniversalForm> prev;
  for (std::size_t i = 0; i < m; ++i) prev.push_back(umonomial(basis[i], {}));
  for (std::size_t k = 1; k <= max_degree; ++k) {
    std::vector<UniversalForm> cur;
    cur.reserve(prev.size() * m);
    std::vector<Vec> vecs;
    for (const auto& w : prev)
      for (std::size_t i = 0; i < m; ++i) {
        UniversalForm ext = uproduct(w, udelta(basis[i]));
        vecs.push_back(ext.coeffs());
        cur.push_back(std::move(ext));
      }
    m_spans.push_back(Subspace::span(tensor_dim(m, k), vecs));
    prev = std::move(cur);
  }
}

const Subspace& UniversalCalculus::span(std::size_t degree) const {
  if (degree >= m_spans.size())
    throw Error("UniversalCalculus: degree exceeds configured bound");
  return m_spans[degree];
}

bool UniversalCalculus::in_span(const UniversalForm& w) const {
  return span(w.degree()).contains(w.coeffs());
}

Vec UniversalCalculus::span_coordinates(const UniversalForm& w) const {
  auto c = span(w.degree()).coordinates(w.coeffs());
  if (!c) throw InvariantError("UniversalCalculus: form outside monomial span");
  return *c;
}

UniversalForm UniversalCalculus::from_span_coordinates(std::size_t degree,
                                                       const Vec& coords) const {
  const Subspace& s = span(degree);
  if (coords.size() != s.dim()) throw DimensionError("from_span_coordinates: arity");
  Vec out(tensor_dim(m_algebra->dim(), degree));
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k].is_zero()) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += coords[k] * s.basis().at(k, j);
  }
  return UniversalForm(m_algebra, degree, std::move(out));
}

Subspace universal_one_forms(const AlgebraPtr& a) {
  const std::size_t m = a->dim();
  Matrix mu(m, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Vec& prod = a->table(i, j);
      for (std::size_t k = 0; k < m; ++k) mu.at(k, i * m + j) = prod[k];
    }
  return kernel(mu);
}

UniversalForm udelta(const AlgebraElement& a) {
  const auto& alg = a.algebra();
  const std::size_t m = alg->dim();
  Vec unit = alg->unit().coeffs();
  Vec c(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!unit[i].is_zero())
      for (std::size_t j = 0; j < m; ++j) c[i * m + j] += unit[i] * a.coeffs()[j];
    if (!a.coeffs()[i].is_zero())
      for (std::size_t j = 0; j < m; ++j) c[i * m + j] -= a.coeffs()[i] * unit[j];
  }
  return UniversalForm(alg, 1, std::move(c));
}

UniversalForm umonomial(const AlgebraElement& a0,
                        const std::vector<AlgebraElement>& rest) {
  UniversalForm w(a0.algebra(), 0, a0.coeffs());
  for (const auto& a : rest) w = uproduct(w, udelta(a));
  return w;
}

UniversalForm uproduct(const UniversalForm& w, const UniversalForm& w2) {
  if (w.algebra() != w2.algebra()) throw MismatchError("uproduct: algebra mismatch");
  const auto& alg = w.algebra();
  const std::size_t m = alg->dim();
  const std::size_t k = w.degree(), l = w2.degree();
  // contract the last slot of w with the first slot of w2
  const std::size_t lead = tensor_dim(m, k) / m;   // m^k leading block count
  const std::size_t tail = tensor_dim(m, l) / m;   // m^l trailing block size
  Vec out(lead * m * tail);
  for (std::size_t p = 0; p < lead; ++p)
    for (std::size_t i = 0; i < m; ++i) {
      const Scalar& x = w.coeffs()[p * m + i];
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const Vec& prod = alg->table(i, j);
        for (std::size_t q = 0; q < tail; ++q) {
          const Scalar& y = w2.coeffs()[j * tail + q];
          if (y.is_zero()) continue;
          const Scalar f = x * y;
          for (std::size_t s = 0; s < m; ++s)
            if (!prod[s].is_zero()) out[(p * m + s) * tail + q] += f * prod[s];
        }
      }
    }
  return UniversalForm(alg, k + l, std::move(out));
}

UniversalForm ubimodule_action(const AlgebraElement& b, const UniversalForm& w,
                               const AlgebraElement& c) {
  if (b.algebra() != w.algebra() || c.algebra() != w.algebra())
    throw MismatchError("ubimodule_action: algebra mismatch");
  UniversalForm left = uproduct(UniversalForm(b.algebra(), 0, b.coeffs()), w);
  return uproduct(left, UniversalForm(c.algebra(), 0, c.coeffs()));
}

UniversalForm udifferential(const UniversalForm& w) {
  const auto& alg = w.algebra();
  const std::size_t m = alg->dim();
  const std::size_t k = w.degree();
  const Vec unit = alg->unit().coeffs();
  Vec out(tensor_dim(m, k + 1));
  // insert the unit at slot pos with sign (-1)^pos
  const std::size_t in_dim = tensor_dim(m, k);
  for (std::size_t pos = 0; pos <= k + 1; ++pos) {
    const bool neg = (pos % 2) == 1;
    // block sizes: leading m^pos stays, unit slot, trailing m^{k+1-pos}
    std::size_t lead = 1;
    for (std::size_t t = 0; t < pos; ++t) lead *= m;
    const std::size_t tail = in_dim / lead;
    for (std::size_t p = 0; p < lead; ++p)
      for (std::size_t q = 0; q < tail; ++q) {
        const Scalar& x = w.coeffs()[p * tail + q];
        if (x.is_zero()) continue;
        for (std::size_t u = 0; u < m; ++u) {
          if (unit[u].is_zero()) continue;
          const std::size_t target = (p * m + u) * tail + q;
          if (neg)
            out[target] -= x * unit[u];
          else
            out[target] += x * unit[u];
        }
      }
  }
  return UniversalForm(alg, k + 1, std::move(out));
}

}  // namespace ncgeo
