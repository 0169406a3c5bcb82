#include "ncgeo/algebra.hpp"

#include <utility>

#include "ncgeo/error.hpp"

namespace ncgeo {

AlgebraElement::AlgebraElement(AlgebraPtr algebra, Vec coeffs)
    : m_algebra(std::move(algebra)), m_coeffs(std::move(coeffs)) {
  if (m_coeffs.size() != m_algebra->dim())
    throw DimensionError("AlgebraElement: coefficient length != algebra dim");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  if (m_algebra != o.m_algebra) throw MismatchError("element add: algebra mismatch");
  return AlgebraElement(m_algebra, m_coeffs + o.m_coeffs);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  if (m_algebra != o.m_algebra) throw MismatchError("element sub: algebra mismatch");
  return AlgebraElement(m_algebra, m_coeffs - o.m_coeffs);
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  if (m_algebra != o.m_algebra) throw MismatchError("element mul: algebra mismatch");
  return AlgebraElement(m_algebra, m_algebra->product(m_coeffs, o.m_coeffs));
}

AlgebraElement AlgebraElement::operator-() const {
  return AlgebraElement(m_algebra, Scalar(-1) * m_coeffs);
}

AlgebraElement operator*(const Scalar& s, const AlgebraElement& a) {
  return AlgebraElement(a.m_algebra, s * a.m_coeffs);
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  return m_algebra == o.m_algebra && m_coeffs == o.m_coeffs;
}

AlgebraElement AlgebraElement::involution() const {
  return AlgebraElement(m_algebra, m_algebra->involution_coeffs(m_coeffs));
}

AlgebraPtr FiniteAlgebra::create(std::string label,
                                 std::vector<std::vector<Vec>> table, Vec unit,
                                 std::optional<Matrix> involution) {
  auto a = std::shared_ptr<FiniteAlgebra>(new FiniteAlgebra());
  a->m_label = std::move(label);
  a->m_dim = table.size();
  a->m_table = std::move(table);
  a->m_unit = std::move(unit);
  a->m_involution = std::move(involution);
  a->validate();
  bool comm = true;
  for (std::size_t i = 0; i < a->m_dim && comm; ++i)
    for (std::size_t j = 0; j < i && comm; ++j)
      if (a->m_table[i][j] != a->m_table[j][i]) comm = false;
  a->m_commutative = comm;
  return a;
}

void FiniteAlgebra::validate() const {
  const std::size_t m = m_dim;
  if (m == 0) throw InvariantError(m_label + ": empty algebra");
  if (m_table.size() != m) throw DimensionError(m_label + ": bad table");
  for (const auto& row : m_table) {
    if (row.size() != m) throw DimensionError(m_label + ": bad table row");
    for (const auto& cell : row)
      if (cell.size() != m) throw DimensionError(m_label + ": bad table entry");
  }
  if (m_unit.size() != m) throw DimensionError(m_label + ": bad unit");
  // unit laws
  for (std::size_t i = 0; i < m; ++i) {
    Vec e(m);
    e[i] = Scalar(1);
    if (product(m_unit, e) != e || product(e, m_unit) != e)
      throw InvariantError(m_label + ": unit law fails on basis element");
  }
  // associativity on all basis triples
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        Vec ek(m);
        ek[k] = Scalar(1);
        Vec left = product(m_table[i][j], ek);
        Vec ei(m);
        ei[i] = Scalar(1);
        Vec right = product(ei, m_table[j][k]);
        if (left != right)
          throw InvariantError(m_label + ": associativity fails on basis triple");
      }
  if (m_involution) {
    const Matrix& s = *m_involution;
    if (s.rows() != m || s.cols() != m)
      throw DimensionError(m_label + ": involution shape");
    // 1* = 1, a** = a, (ab)* = b* a*
    if (involution_coeffs(m_unit) != m_unit)
      throw InvariantError(m_label + ": involution does not fix the unit");
    for (std::size_t i = 0; i < m; ++i) {
      Vec ei(m);
      ei[i] = Scalar(1);
      if (involution_coeffs(involution_coeffs(ei)) != ei)
        throw InvariantError(m_label + ": involution not involutive");
      for (std::size_t j = 0; j < m; ++j) {
        Vec ej(m);
        ej[j] = Scalar(1);
        Vec lhs = involution_coeffs(m_table[i][j]);
        Vec rhs = product(involution_coeffs(ej), involution_coeffs(ei));
        if (lhs != rhs)
          throw InvariantError(m_label + ": (ab)* != b* a*");
      }
    }
  }
}

const Matrix& FiniteAlgebra::involution_matrix() const {
  if (!m_involution) throw Error(m_label + ": no involution");
  return *m_involution;
}

AlgebraElement FiniteAlgebra::unit() const {
  return AlgebraElement(shared_from_this(), m_unit);
}

AlgebraElement FiniteAlgebra::zero() const {
  return AlgebraElement(shared_from_this(), Vec(m_dim));
}

AlgebraElement FiniteAlgebra::element(Vec coeffs) const {
  return AlgebraElement(shared_from_this(), std::move(coeffs));
}

AlgebraElement FiniteAlgebra::basis_element(std::size_t i) const {
  Vec c(m_dim);
  c[i] = Scalar(1);
  return AlgebraElement(shared_from_this(), std::move(c));
}

Vec FiniteAlgebra::product(const Vec& a, const Vec& b) const {
  if (a.size() != m_dim || b.size() != m_dim)
    throw DimensionError(m_label + ": product arity");
  Vec r(m_dim);
  for (std::size_t i = 0; i < m_dim; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < m_dim; ++j) {
      if (b[j].is_zero()) continue;
      const Scalar f = a[i] * b[j];
      const Vec& cell = m_table[i][j];
      for (std::size_t k = 0; k < m_dim; ++k)
        if (!cell[k].is_zero()) r[k] += f * cell[k];
    }
  }
  return r;
}

Matrix FiniteAlgebra::left_mult_matrix(const Vec& a) const {
  Matrix l(m_dim, m_dim);
  for (std::size_t j = 0; j < m_dim; ++j) {
    Vec ej(m_dim);
    ej[j] = Scalar(1);
    Vec col = product(a, ej);
    for (std::size_t k = 0; k < m_dim; ++k) l.at(k, j) = col[k];
  }
  return l;
}

Matrix FiniteAlgebra::right_mult_matrix(const Vec& a) const {
  Matrix r(m_dim, m_dim);
  for (std::size_t j = 0; j < m_dim; ++j) {
    Vec ej(m_dim);
    ej[j] = Scalar(1);
    Vec col = product(ej, a);
    for (std::size_t k = 0; k < m_dim; ++k) r.at(k, j) = col[k];
  }
  return r;
}

Vec FiniteAlgebra::involution_coeffs(const Vec& a) const {
  if (!m_involution) throw Error(m_label + ": no involution");
  Vec conj(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) conj[i] = a[i].conj();
  return m_involution->apply(conj);
}

Derivation::Derivation(AlgebraPtr algebra, Matrix action, bool validate)
    : m_algebra(std::move(algebra)), m_action(std::move(action)) {
  const std::size_t m = m_algebra->dim();
  if (m_action.rows() != m || m_action.cols() != m)
    throw DimensionError("Derivation: action shape");
  if (!validate) return;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Vec ei(m), ej(m);
      ei[i] = Scalar(1);
      ej[j] = Scalar(1);
      Vec lhs = m_action.apply(m_algebra->table(i, j));
      Vec rhs = m_algebra->product(m_action.apply(ei), ej) +
                m_algebra->product(ei, m_action.apply(ej));
      if (lhs != rhs) throw InvariantError("Derivation: Leibniz rule fails on basis pair");
    }
}

AlgebraElement Derivation::apply(const AlgebraElement& a) const {
  if (a.algebra() != m_algebra) throw MismatchError("derivation apply: algebra mismatch");
  return AlgebraElement(m_algebra, m_action.apply(a.coeffs()));
}

Derivation Derivation::operator+(const Derivation& o) const {
  if (m_algebra != o.m_algebra) throw MismatchError("derivation add: algebra mismatch");
  return Derivation(m_algebra, m_action + o.m_action, false);
}

Derivation Derivation::operator-(const Derivation& o) const {
  if (m_algebra != o.m_algebra) throw MismatchError("derivation sub: algebra mismatch");
  return Derivation(m_algebra, m_action - o.m_action, false);
}

Derivation operator*(const Scalar& s, const Derivation& u) {
  return Derivation(u.m_algebra, s * u.m_action, false);
}

Derivation operator*(const AlgebraElement& a, const Derivation& u) {
  if (a.algebra() != u.m_algebra) throw MismatchError("a*u: algebra mismatch");
  // a u is a derivation again only when a is central; caller checks usage.
  return Derivation(u.m_algebra, u.m_algebra->left_mult_matrix(a.coeffs()) * u.m_action,
                    false);
}

bool Derivation::operator==(const Derivation& o) const {
  return m_algebra == o.m_algebra && m_action == o.m_action;
}

AlgebraPtr matrix_algebra(std::size_t n) {
  if (n == 0) throw Error("matrix_algebra: n must be >= 1");
  const std::size_t m = n * n;
  auto idx = [n](std::size_t j, std::size_t k) { return j * n + k; };
  std::vector<std::vector<Vec>> table(m, std::vector<Vec>(m, Vec(m)));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t p = 0; p < n; ++p)
          if (k == l) table[idx(j, k)][idx(l, p)][idx(j, p)] = Scalar(1);
  Vec unit(m);
  for (std::size_t j = 0; j < n; ++j) unit[idx(j, j)] = Scalar(1);
  Matrix inv(m, m);  // E_{jk}* = E_{kj}
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) inv.at(idx(k, j), idx(j, k)) = Scalar(1);
  return FiniteAlgebra::create("M_" + std::to_string(n), std::move(table),
                               std::move(unit), std::move(inv));
}

AlgebraPtr function_algebra(std::size_t N) {
  if (N == 0) throw Error("function_algebra: N must be >= 1");
  std::vector<std::vector<Vec>> table(N, std::vector<Vec>(N, Vec(N)));
  for (std::size_t i = 0; i < N; ++i) table[i][i][i] = Scalar(1);
  Vec unit(N, Scalar(1));
  return FiniteAlgebra::create("C^" + std::to_string(N), std::move(table),
                               std::move(unit), Matrix::identity(N));
}

AlgebraPtr truncated_polynomial_algebra(std::size_t N) {
  if (N == 0) throw Error("truncated_polynomial_algebra: N must be >= 1");
  std::vector<std::vector<Vec>> table(N, std::vector<Vec>(N, Vec(N)));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i + j < N) table[i][j][i + j] = Scalar(1);
  Vec unit(N);
  unit[0] = Scalar(1);
  return FiniteAlgebra::create("K[x]/(x^" + std::to_string(N) + ")", std::move(table),
                               std::move(unit), Matrix::identity(N));
}

AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
  const std::size_t ma = a->dim(), mb = b->dim(), m = ma + mb;
  std::vector<std::vector<Vec>> table(m, std::vector<Vec>(m, Vec(m)));
  for (std::size_t i = 0; i < ma; ++i)
    for (std::size_t j = 0; j < ma; ++j)
      for (std::size_t k = 0; k < ma; ++k) table[i][j][k] = a->table(i, j)[k];
  for (std::size_t i = 0; i < mb; ++i)
    for (std::size_t j = 0; j < mb; ++j)
      for (std::size_t k = 0; k < mb; ++k)
        table[ma + i][ma + j][ma + k] = b->table(i, j)[k];
  Vec unit(m);
  for (std::size_t i = 0; i < ma; ++i) unit[i] = a->unit().coeffs()[i];
  for (std::size_t i = 0; i < mb; ++i) unit[ma + i] = b->unit().coeffs()[i];
  std::optional<Matrix> inv;
  if (a->has_involution() && b->has_involution()) {
    Matrix s(m, m);
    for (std::size_t i = 0; i < ma; ++i)
      for (std::size_t j = 0; j < ma; ++j) s.at(i, j) = a->involution_matrix().at(i, j);
    for (std::size_t i = 0; i < mb; ++i)
      for (std::size_t j = 0; j < mb; ++j)
        s.at(ma + i, ma + j) = b->involution_matrix().at(i, j);
    inv = std::move(s);
  }
  return FiniteAlgebra::create(a->label() + "+" + b->label(), std::move(table),
                               std::move(unit), std::move(inv));
}

std::vector<AlgebraElement> centre_basis(const AlgebraPtr& a) {
  const std::size_t m = a->dim();
  // rows: for each basis element e_i, the condition (L_i - R_i) z = 0.
  Matrix sys(m * m, m);
  for (std::size_t i = 0; i < m; ++i) {
    Vec ei(m);
    ei[i] = Scalar(1);
    Matrix d = a->left_mult_matrix(ei) - a->right_mult_matrix(ei);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) sys.at(i * m + r, c) = d.at(r, c);
  }
  Subspace k = kernel(sys);
  std::vector<AlgebraElement> out;
  out.reserve(k.dim());
  for (std::size_t r = 0; r < k.dim(); ++r) out.push_back(a->element(k.basis().row(r)));
  return out;
}

std::vector<Derivation> derivation_basis(const AlgebraPtr& a) {
  const std::size_t m = a->dim();
  // Unknown U (m x m), flattened row major.  Constraint per basis pair (i,j):
  //   U (e_i e_j) - R_{e_j} (U e_i) - L_{e_i} (U e_j) = 0.
  Matrix sys(m * m * m, m * m);
  for (std::size_t i = 0; i < m; ++i) {
    Vec ei(m);
    ei[i] = Scalar(1);
    Matrix li = a->left_mult_matrix(ei);
    for (std::size_t j = 0; j < m; ++j) {
      Vec ej(m);
      ej[j] = Scalar(1);
      Matrix rj = a->right_mult_matrix(ej);
      const Vec& prod = a->table(i, j);
      const std::size_t row0 = (i * m + j) * m;
      // component r of U(e_i e_j) is sum_c prod[c] U_{r,c}
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) sys.at(row0 + r, r * m + c) += prod[c];
      // component r of R_{e_j}(U e_i) is sum_t rj(r,t) U_{t,i}; likewise L_{e_i}(U e_j)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t t = 0; t < m; ++t) {
          sys.at(row0 + r, t * m + i) -= rj.at(r, t);
          sys.at(row0 + r, t * m + j) -= li.at(r, t);
        }
    }
  }
  Subspace k = kernel(sys);
  std::vector<Derivation> out;
  out.reserve(k.dim());
  for (std::size_t r = 0; r < k.dim(); ++r) {
    Matrix u(m, m);
    const Vec v = k.basis().row(r);
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = 0; q < m; ++q) u.at(p, q) = v[p * m + q];
    out.emplace_back(a, std::move(u));
  }
  return out;
}

Derivation lie_bracket(const Derivation& u, const Derivation& v) {
  if (u.algebra() != v.algebra()) throw MismatchError("lie_bracket: algebra mismatch");
  return Derivation(u.algebra(), u.action() * v.action() - v.action() * u.action());
}

Derivation inner_derivation(const AlgebraElement& b) {
  const auto& a = b.algebra();
  return Derivation(a, a->left_mult_matrix(b.coeffs()) - a->right_mult_matrix(b.coeffs()),
                    false);
}

Derivation derivation_involution(const Derivation& u) {
  const auto& a = u.algebra();
  if (!a->has_involution()) throw Error("derivation_involution: no involution on algebra");
  // u*(x) = (u(x*))*: antilinear conjugations sandwich the action matrix.
  const Matrix& s = a->involution_matrix();
  Matrix act = (s * (u.action() * s).conj());
  return Derivation(a, std::move(act));
}

SuBasis su_basis(std::size_t n) {
  if (n < 2) throw Error("su_basis: n must be >= 2");
  SuBasis out;
  out.n = n;
  out.algebra = matrix_algebra(n);
  const std::size_t m = n * n;
  auto idx = [n](std::size_t j, std::size_t k) { return j * n + k; };
  const Scalar I = Scalar::i();
  // F_{jk} = E_{jk} - E_{kj}, G_{jk} = i(E_{jk} + E_{kj})  (j < k),
  // H_l = i(E_{ll} - E_{l+1,l+1}).
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      Vec f(m);
      f[idx(j, k)] = Scalar(1);
      f[idx(k, j)] = Scalar(-1);
      out.epsilons.push_back(out.algebra->element(std::move(f)));
      Vec g(m);
      g[idx(j, k)] = I;
      g[idx(k, j)] = I;
      out.epsilons.push_back(out.algebra->element(std::move(g)));
    }
  for (std::size_t l = 0; l + 1 < n; ++l) {
    Vec h(m);
    h[idx(l, l)] = I;
    h[idx(l + 1, l + 1)] = -I;
    out.epsilons.push_back(out.algebra->element(std::move(h)));
  }
  const std::size_t d = out.epsilons.size();
  if (d != m - 1) throw InvariantError("su_basis: rank mismatch");
  // structure constants by exact linear solve in the epsilon basis
  std::vector<Vec> cols;
  cols.reserve(d);
  for (const auto& e : out.epsilons) cols.push_back(e.coeffs());
  Matrix basis_mat = Matrix::from_cols(cols);
  out.c.assign(d, std::vector<Vec>(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t q = 0; q < d; ++q) {
      AlgebraElement br = out.epsilons[r] * out.epsilons[q] -
                          out.epsilons[q] * out.epsilons[r];
      auto x = solve(basis_mat, br.coeffs());
      if (!x) throw InvariantError("su_basis: commutator not in span");
      out.c[r][q] = *x;
    }
  return out;
}

}  // namespace ncgeo
