#include "ncgeo/ce.hpp"

#include <algorithm>
#include <utility>

#include "ncgeo/error.hpp"

namespace ncgeo {

namespace {

Vec flatten_action(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

/// Sorts idx ascending; returns the permutation sign, or 0 on a repeat.
int sort_sign(std::vector<std::size_t>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

}  // namespace

std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t D, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  if (k > D) return out;
  std::vector<std::size_t> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  for (;;) {
    out.push_back(t);
    // next combination
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (t[i] != i + D - k) break;
      if (i == 0) return out;
    }
    ++t[i];
    for (std::size_t j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
  }
}

std::shared_ptr<const DerivationFrame> DerivationFrame::standard(const AlgebraPtr& a) {
  return from_basis(a, derivation_basis(a));
}

std::shared_ptr<const DerivationFrame> DerivationFrame::from_basis(
    const AlgebraPtr& a, std::vector<Derivation> basis) {
  auto f = std::shared_ptr<DerivationFrame>(new DerivationFrame());
  f->m_algebra = a;
  f->m_basis = std::move(basis);
  f->finish();
  return f;
}

void DerivationFrame::finish() {
  const std::size_t m = m_algebra->dim();
  m_centre = centre_basis(m_algebra);
  std::vector<Vec> flats;
  for (const auto& u : m_basis) flats.push_back(flatten_action(u.action()));
  m_basis_mat = Matrix::from_cols(flats);
  if (m_basis.empty()) m_basis_mat = Matrix(m * m, 0);
  Subspace span = Subspace::span(m * m, flats);
  if (span.dim() != m_basis.size())
    throw InvariantError("DerivationFrame: basis not linearly independent");
  // the frame must span the full derivation module
  std::vector<Vec> all;
  for (const auto& u : derivation_basis(m_algebra)) all.push_back(flatten_action(u.action()));
  if (span != Subspace::span(m * m, all))
    throw InvariantError("DerivationFrame: basis does not span the derivation module");
  const std::size_t D = m_basis.size();
  m_bracket.assign(D, std::vector<Vec>(D));
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t q = 0; q < D; ++q) {
      auto c = coordinates(lie_bracket(m_basis[r], m_basis[q]));
      if (!c) throw InvariantError("DerivationFrame: bracket escapes the span");
      m_bracket[r][q] = *c;
    }
  if (m_algebra->has_involution()) {
    m_star.reserve(D);
    for (std::size_t r = 0; r < D; ++r) {
      auto c = coordinates(derivation_involution(m_basis[r]));
      if (!c) throw InvariantError("DerivationFrame: starred basis escapes the span");
      m_star.push_back(*c);
    }
  }
}

std::optional<Vec> DerivationFrame::coordinates(const Derivation& u) const {
  if (m_basis.empty()) return u.action().is_zero() ? std::optional<Vec>(Vec{}) : std::nullopt;
  return solve(m_basis_mat, flatten_action(u.action()));
}

const Vec& DerivationFrame::star_coords(std::size_t r) const {
  if (m_star.empty()) throw Error("DerivationFrame: algebra has no involution");
  return m_star[r];
}

CEForm::CEForm(FramePtr frame, std::size_t degree, std::vector<Vec> components)
    : m_frame(std::move(frame)), m_degree(degree), m_comp(std::move(components)) {
  const std::size_t T = increasing_tuples(m_frame->size(), degree).size();
  if (m_comp.size() != T) throw DimensionError("CEForm: component count mismatch");
  const std::size_t m = m_frame->algebra()->dim();
  for (const auto& c : m_comp)
    if (c.size() != m) throw DimensionError("CEForm: component arity");
}

CEForm CEForm::zero(FramePtr frame, std::size_t degree) {
  const std::size_t T = increasing_tuples(frame->size(), degree).size();
  const std::size_t m = frame->algebra()->dim();
  return CEForm(std::move(frame), degree, std::vector<Vec>(T, Vec(m)));
}

CEForm CEForm::from_element(FramePtr frame, const AlgebraElement& a) {
  return CEForm(std::move(frame), 0, {a.coeffs()});
}

CEForm CEForm::from_flat(FramePtr frame, std::size_t degree, const Vec& flat) {
  const std::size_t T = increasing_tuples(frame->size(), degree).size();
  const std::size_t m = frame->algebra()->dim();
  if (flat.size() != T * m) throw DimensionError("CEForm::from_flat: arity");
  std::vector<Vec> comps(T, Vec(m));
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t j = 0; j < m; ++j) comps[t][j] = flat[t * m + j];
  return CEForm(std::move(frame), degree, std::move(comps));
}

AlgebraElement CEForm::component_element(std::size_t tuple_index) const {
  return m_frame->algebra()->element(m_comp[tuple_index]);
}

Vec CEForm::flat() const {
  const std::size_t m = m_frame->algebra()->dim();
  Vec out;
  out.reserve(m_comp.size() * m);
  for (const auto& c : m_comp) out.insert(out.end(), c.begin(), c.end());
  return out;
}

bool CEForm::is_zero() const {
  for (const auto& c : m_comp)
    if (!ncgeo::is_zero(c)) return false;
  return true;
}

namespace {

/// Index of a sorted tuple in the lexicographic listing.
std::size_t tuple_rank(const std::vector<std::vector<std::size_t>>& tuples,
                       const std::vector<std::size_t>& t) {
  auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
  return static_cast<std::size_t>(it - tuples.begin());
}

}  // namespace

Vec CEForm::evaluate_indices(const std::vector<std::size_t>& idx) const {
  const std::size_t m = m_frame->algebra()->dim();
  if (idx.size() != m_degree) throw DimensionError("CEForm: evaluation arity");
  std::vector<std::size_t> sorted = idx;
  int sign = sort_sign(sorted);
  if (sign == 0) return Vec(m);
  auto tuples = increasing_tuples(m_frame->size(), m_degree);
  const Vec& c = m_comp[tuple_rank(tuples, sorted)];
  return sign > 0 ? c : Scalar(-1) * c;
}

AlgebraElement CEForm::evaluate(const std::vector<Derivation>& args) const {
  const auto& alg = m_frame->algebra();
  if (args.size() != m_degree) throw DimensionError("CEForm: evaluation arity");
  std::vector<Vec> coords;
  for (const auto& u : args) {
    auto c = m_frame->coordinates(u);
    if (!c) throw MismatchError("CEForm: argument outside derivation span");
    coords.push_back(*c);
  }
  Vec acc(alg->dim());
  const std::size_t D = m_frame->size();
  std::vector<std::size_t> idx(m_degree, 0);
  // iterate D^k index assignments
  for (;;) {
    Scalar f(1);
    bool zero = false;
    for (std::size_t j = 0; j < m_degree; ++j) {
      if (coords[j][idx[j]].is_zero()) {
        zero = true;
        break;
      }
      f *= coords[j][idx[j]];
    }
    if (!zero) {
      Vec v = evaluate_indices(idx);
      for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += f * v[t];
    }
    std::size_t j = 0;
    for (; j < m_degree; ++j) {
      if (++idx[j] < D) break;
      idx[j] = 0;
    }
    if (j == m_degree) break;
  }
  return alg->element(acc);
}

CEForm CEForm::operator+(const CEForm& o) const {
  if (m_frame != o.m_frame || m_degree != o.m_degree)
    throw MismatchError("CEForm add: frame or degree mismatch");
  std::vector<Vec> c(m_comp.size());
  for (std::size_t t = 0; t < m_comp.size(); ++t) c[t] = m_comp[t] + o.m_comp[t];
  return CEForm(m_frame, m_degree, std::move(c));
}

CEForm CEForm::operator-(const CEForm& o) const {
  if (m_frame != o.m_frame || m_degree != o.m_degree)
    throw MismatchError("CEForm sub: frame or degree mismatch");
  std::vector<Vec> c(m_comp.size());
  for (std::size_t t = 0; t < m_comp.size(); ++t) c[t] = m_comp[t] - o.m_comp[t];
  return CEForm(m_frame, m_degree, std::move(c));
}

CEForm operator*(const Scalar& s, const CEForm& w) {
  std::vector<Vec> c(w.m_comp.size());
  for (std::size_t t = 0; t < w.m_comp.size(); ++t) c[t] = s * w.m_comp[t];
  return CEForm(w.m_frame, w.m_degree, std::move(c));
}

CEForm operator*(const AlgebraElement& a, const CEForm& w) {
  const auto& alg = w.m_frame->algebra();
  if (a.algebra() != alg) throw MismatchError("a*form: algebra mismatch");
  std::vector<Vec> c(w.m_comp.size());
  for (std::size_t t = 0; t < w.m_comp.size(); ++t)
    c[t] = alg->product(a.coeffs(), w.m_comp[t]);
  return CEForm(w.m_frame, w.m_degree, std::move(c));
}

CEForm operator*(const CEForm& w, const AlgebraElement& a) {
  const auto& alg = w.m_frame->algebra();
  if (a.algebra() != alg) throw MismatchError("form*a: algebra mismatch");
  std::vector<Vec> c(w.m_comp.size());
  for (std::size_t t = 0; t < w.m_comp.size(); ++t)
    c[t] = alg->product(w.m_comp[t], a.coeffs());
  return CEForm(w.m_frame, w.m_degree, std::move(c));
}

bool CEForm::operator==(const CEForm& o) const {
  return m_frame == o.m_frame && m_degree == o.m_degree && m_comp == o.m_comp;
}

CEForm ce_d(const CEForm& phi) {
  const auto& frame = phi.frame();
  const std::size_t D = frame->size(), k = phi.degree();
  const std::size_t m = frame->algebra()->dim();
  auto out_tuples = increasing_tuples(D, k + 1);
  std::vector<Vec> out(out_tuples.size(), Vec(m));
  for (std::size_t ti = 0; ti < out_tuples.size(); ++ti) {
    const auto& T = out_tuples[ti];
    Vec acc(m);
    // action terms: sum_j (-1)^j u_{T_j}(phi(T \ j))
    for (std::size_t j = 0; j <= k; ++j) {
      std::vector<std::size_t> rest;
      rest.reserve(k);
      for (std::size_t t = 0; t <= k; ++t)
        if (t != j) rest.push_back(T[t]);
      Vec val = (*frame)[T[j]].action().apply(phi.evaluate_indices(rest));
      if (j % 2)
        acc = acc - val;
      else
        acc = acc + val;
    }
    // bracket terms: sum_{r<s} (-1)^{r+s} phi([u_{T_r}, u_{T_s}], T \ {r,s})
    for (std::size_t r = 0; r + 1 <= k; ++r)
      for (std::size_t s = r + 1; s <= k; ++s) {
        std::vector<std::size_t> rest;
        rest.reserve(k - 1);
        for (std::size_t t = 0; t <= k; ++t)
          if (t != r && t != s) rest.push_back(T[t]);
        const Vec& br = frame->bracket(T[r], T[s]);
        Vec val(m);
        for (std::size_t b = 0; b < D; ++b) {
          if (br[b].is_zero()) continue;
          std::vector<std::size_t> idx;
          idx.reserve(k);
          idx.push_back(b);
          idx.insert(idx.end(), rest.begin(), rest.end());
          Vec v = phi.evaluate_indices(idx);
          for (std::size_t t = 0; t < m; ++t) val[t] += br[b] * v[t];
        }
        if ((r + s) % 2)
          acc = acc - val;
        else
          acc = acc + val;
      }
    out[ti] = std::move(acc);
  }
  return CEForm(frame, k + 1, std::move(out));
}

CEForm wedge(const CEForm& phi, const CEForm& psi) {
  if (phi.frame() != psi.frame()) throw MismatchError("wedge: frame mismatch");
  const auto& frame = phi.frame();
  const auto& alg = frame->algebra();
  const std::size_t D = frame->size();
  const std::size_t p = phi.degree(), q = psi.degree();
  auto out_tuples = increasing_tuples(D, p + q);
  std::vector<Vec> out(out_tuples.size(), Vec(alg->dim()));
  auto picks = increasing_tuples(p + q, p);  // positions handed to phi
  for (std::size_t ti = 0; ti < out_tuples.size(); ++ti) {
    const auto& T = out_tuples[ti];
    Vec acc(alg->dim());
    for (const auto& pick : picks) {
      std::vector<bool> used(p + q, false);
      std::vector<std::size_t> left, right;
      left.reserve(p);
      right.reserve(q);
      long inversions = 0;
      for (std::size_t t = 0; t < p; ++t) {
        left.push_back(T[pick[t]]);
        used[pick[t]] = true;
        inversions += static_cast<long>(pick[t]) - static_cast<long>(t);
      }
      for (std::size_t t = 0; t < p + q; ++t)
        if (!used[t]) right.push_back(T[t]);
      Vec prod = alg->product(phi.evaluate_indices(left), psi.evaluate_indices(right));
      if (inversions % 2)
        acc = acc - prod;
      else
        acc = acc + prod;
    }
    out[ti] = std::move(acc);
  }
  return CEForm(frame, p + q, std::move(out));
}

CEForm contract(const Derivation& u, const CEForm& phi) {
  const auto& frame = phi.frame();
  if (phi.degree() == 0) throw Error("contract: degree-0 form");
  auto cu = frame->coordinates(u);
  if (!cu) throw MismatchError("contract: derivation outside the frame span");
  const std::size_t D = frame->size(), k = phi.degree();
  const std::size_t m = frame->algebra()->dim();
  auto out_tuples = increasing_tuples(D, k - 1);
  std::vector<Vec> out(out_tuples.size(), Vec(m));
  for (std::size_t ti = 0; ti < out_tuples.size(); ++ti) {
    Vec acc(m);
    for (std::size_t r = 0; r < D; ++r) {
      if ((*cu)[r].is_zero()) continue;
      std::vector<std::size_t> idx;
      idx.reserve(k);
      idx.push_back(r);
      idx.insert(idx.end(), out_tuples[ti].begin(), out_tuples[ti].end());
      Vec v = phi.evaluate_indices(idx);
      for (std::size_t t = 0; t < m; ++t) acc[t] += (*cu)[r] * v[t];
    }
    out[ti] = std::move(acc);
  }
  return CEForm(frame, k - 1, std::move(out));
}

CEForm lie_derivative(const Derivation& u, const CEForm& phi) {
  if (phi.degree() == 0) {
    // Cartan formula degenerates to iota_u d phi on degree 0
    return contract(u, ce_d(phi));
  }
  return ce_d(contract(u, phi)) + contract(u, ce_d(phi));
}

CEForm form_involution(const CEForm& phi) {
  const auto& frame = phi.frame();
  const auto& alg = frame->algebra();
  if (!alg->has_involution()) throw Error("form_involution: no involution");
  const std::size_t D = frame->size(), k = phi.degree();
  auto tuples = increasing_tuples(D, k);
  std::vector<Vec> out(tuples.size(), Vec(alg->dim()));
  for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
    // inner = phi(u_{i1}*, ..., u_{ik}*) by multilinear expansion
    Vec inner(alg->dim());
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
      Scalar f(1);
      bool zero = false;
      for (std::size_t j = 0; j < k; ++j) {
        const Scalar& c = frame->star_coords(tuples[ti][j])[idx[j]];
        if (c.is_zero()) {
          zero = true;
          break;
        }
        f *= c;
      }
      if (!zero) {
        Vec v = phi.evaluate_indices(idx);
        for (std::size_t t = 0; t < inner.size(); ++t) inner[t] += f * v[t];
      }
      if (k == 0) break;
      std::size_t j = 0;
      for (; j < k; ++j) {
        if (++idx[j] < D) break;
        idx[j] = 0;
      }
      if (j == k) break;
    }
    out[ti] = alg->involution_coeffs(inner);
  }
  return CEForm(frame, k, std::move(out));
}

FiniteModule ce_forms_module(const FramePtr& frame, std::size_t degree) {
  const auto& alg = frame->algebra();
  const std::size_t m = alg->dim();
  const std::size_t T = increasing_tuples(frame->size(), degree).size();
  const std::size_t dim = T * m;
  std::vector<Matrix> left, right;
  for (std::size_t i = 0; i < m; ++i) {
    Vec ei(m);
    ei[i] = Scalar(1);
    Matrix l = alg->left_mult_matrix(ei), r = alg->right_mult_matrix(ei);
    Matrix bl(dim, dim), br(dim, dim);
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          bl.at(t * m + a, t * m + b) = l.at(a, b);
          br.at(t * m + a, t * m + b) = r.at(a, b);
        }
    left.push_back(std::move(bl));
    right.push_back(std::move(br));
  }
  std::optional<Matrix> inv;
  if (alg->has_involution() && dim > 0) {
    // antilinear involution via form_involution on basis forms
    Matrix mi(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
      Vec flat(dim);
      flat[c] = Scalar(1);
      CEForm w = CEForm::from_flat(frame, degree, flat);
      Vec img = form_involution(w).flat();
      for (std::size_t r2 = 0; r2 < dim; ++r2) mi.at(r2, c) = img[r2];
    }
    inv = std::move(mi);
  }
  return FiniteModule::from_actions(alg, ModuleKind::Central11, dim, std::move(left),
                                    std::move(right), std::nullopt, std::move(inv));
}

Subspace algebra_generated_one_forms(const FramePtr& frame) {
  const auto& alg = frame->algebra();
  const std::size_t m = alg->dim();
  const std::size_t dim = frame->size() * m;
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < m; ++j) {
    CEForm dj = ce_d(CEForm::from_element(frame, alg->basis_element(j)));
    for (std::size_t c = 0; c < m; ++c) gens.push_back((alg->basis_element(c) * dj).flat());
  }
  return Subspace::span(dim, gens);
}

DualityReport one_form_duality(const FramePtr& frame) {
  const auto& alg = frame->algebra();
  const std::size_t m = alg->dim(), D = frame->size();
  DualityReport rep;
  rep.derivation_dim = D;
  if (D == 0) {
    rep.dual_dim = 0;
    rep.injective = rep.bijective = true;
    return rep;
  }
  // Presentation of O1 = span{a d e_j} by the m generators d e_j over the
  // left action.  f is determined by f_j = f(d e_j) in A, constrained by
  // the generator relations and by right-linearity.
  const std::size_t dim = D * m;
  std::vector<CEForm> dgen;
  for (std::size_t j = 0; j < m; ++j)
    dgen.push_back(ce_d(CEForm::from_element(frame, alg->basis_element(j))));
  // generator map G : A^m -> O1 coords, (a_j) -> sum a_j d e_j
  Matrix G(dim, m * m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t b = 0; b < m; ++b) {
      Vec col = (alg->basis_element(b) * dgen[j]).flat();
      for (std::size_t r = 0; r < dim; ++r) G.at(r, j * m + b) = col[r];
    }
  Subspace rel = kernel(G);
  // unknowns f_j in A: m*m scalars (f_j = sum_b F[j][b] e_b)
  std::vector<Vec> sys_rows;
  // (1) relations: sum_j a_j f_j = 0 with a_j = sum_b rel[j*m+b] e_b
  for (std::size_t k = 0; k < rel.dim(); ++k) {
    Vec rv = rel.basis().row(k);
    // equation in A: for each output coordinate t, a row over unknowns F[j][b]
    for (std::size_t t = 0; t < m; ++t) {
      Vec row(m * m);
      for (std::size_t j = 0; j < m; ++j) {
        Vec aj(m);
        for (std::size_t b = 0; b < m; ++b) aj[b] = rv[j * m + b];
        Matrix la = alg->left_mult_matrix(aj);
        for (std::size_t b = 0; b < m; ++b) row[j * m + b] += la.at(t, b);
      }
      sys_rows.push_back(std::move(row));
    }
  }
  // (2) right-linearity: f((d e_j) a) = f_j a for algebra basis a.
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t a = 0; a < m; ++a) {
      CEForm rj = dgen[j] * alg->basis_element(a);
      auto coords = solve(G, rj.flat());
      if (!coords)
        throw InvariantError("one_form_duality: right action escapes the generator span");
      // sum_l b_l f_l - f_j e_a = 0, b_l from coords
      for (std::size_t t = 0; t < m; ++t) {
        Vec row(m * m);
        for (std::size_t l = 0; l < m; ++l) {
          Vec bl(m);
          for (std::size_t b = 0; b < m; ++b) bl[b] = (*coords)[l * m + b];
          Matrix lb = alg->left_mult_matrix(bl);
          for (std::size_t b = 0; b < m; ++b) row[l * m + b] += lb.at(t, b);
        }
        Vec ea(m);
        ea[a] = Scalar(1);
        Matrix ra = alg->right_mult_matrix(ea);
        for (std::size_t b = 0; b < m; ++b) row[j * m + b] -= ra.at(t, b);
        sys_rows.push_back(std::move(row));
      }
    }
  Matrix sys = Matrix::from_rows(sys_rows);
  Subspace hom = kernel(sys);
  rep.dual_dim = hom.dim();
  // the evaluation map u -> (f_j = u(e_j))
  std::vector<Vec> images;
  for (std::size_t r = 0; r < D; ++r) {
    Vec f(m * m);
    for (std::size_t j = 0; j < m; ++j) {
      Vec ej(m);
      ej[j] = Scalar(1);
      Vec uj = (*frame)[r].action().apply(ej);
      for (std::size_t b = 0; b < m; ++b) f[j * m + b] = uj[b];
    }
    if (!hom.contains(f))
      throw InvariantError("one_form_duality: evaluation functional not in Hom");
    images.push_back(std::move(f));
  }
  Subspace img = Subspace::span(m * m, images);
  rep.injective = (img.dim() == D);
  rep.bijective = rep.injective && (img.dim() == hom.dim());
  return rep;
}

CentralityReport differentials_central(const FramePtr& frame) {
  const auto& alg = frame->algebra();
  CentralityReport rep;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    CEForm di = ce_d(CEForm::from_element(frame, alg->basis_element(i)));
    for (std::size_t a = 0; a < alg->dim(); ++a) {
      if (alg->basis_element(a) * di != di * alg->basis_element(a)) {
        rep.central = false;
        rep.witness = std::make_pair(a, i);
        return rep;
      }
    }
  }
  return rep;
}

Subspace central_multilinear_subspace(const FramePtr& frame, std::size_t degree) {
  const auto& alg = frame->algebra();
  const std::size_t m = alg->dim(), D = frame->size();
  auto tuples = increasing_tuples(D, degree);
  const std::size_t dim = tuples.size() * m;
  if (degree == 0 || D == 0) return Subspace::full(dim);
  // constraints: for each stored tuple T, position j, central z:
  //   phi(..., z u_{T_j}, ...) = z phi(T)
  std::vector<Vec> rows;
  auto rank_of = [&](std::vector<std::size_t> idx, int& sign) {
    sign = sort_sign(idx);
    if (sign == 0) return std::size_t(0);
    return tuple_rank(tuples, idx);
  };
  for (const auto& z : frame->centre()) {
    // coordinates of z u_r in the frame for every r
    std::vector<Vec> zu(D);
    for (std::size_t r = 0; r < D; ++r) {
      auto c = frame->coordinates(z * (*frame)[r]);
      if (!c)
        throw InvariantError("central_multilinear_subspace: z u escapes the span");
      zu[r] = *c;
    }
    Matrix lz = alg->left_mult_matrix(z.coeffs());
    for (std::size_t ti = 0; ti < tuples.size(); ++ti)
      for (std::size_t pos = 0; pos < degree; ++pos) {
        // row block: sum_s zu[T_pos][s] phi(T with pos->s) - z phi(T) = 0
        for (std::size_t t = 0; t < m; ++t) {
          Vec row(dim);
          const auto& T = tuples[ti];
          for (std::size_t s = 0; s < D; ++s) {
            const Scalar& c = zu[T[pos]][s];
            if (c.is_zero()) continue;
            std::vector<std::size_t> idx = T;
            idx[pos] = s;
            int sign = 0;
            std::size_t rk = rank_of(idx, sign);
            if (sign == 0) continue;
            row[rk * m + t] += (sign > 0 ? c : -c);
          }
          for (std::size_t b = 0; b < m; ++b) row[ti * m + b] -= lz.at(t, b);
          rows.push_back(std::move(row));
        }
      }
  }
  if (rows.empty()) return Subspace::full(dim);
  return kernel(Matrix::from_rows(rows));
}

}  // namespace ncgeo
