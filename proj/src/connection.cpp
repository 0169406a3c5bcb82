#include "ncgeo/connection.hpp"

#include <utility>

#include "ncgeo/error.hpp"

namespace ncgeo {

namespace {

Vec flatten_matrix(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

}  // namespace

DVConnection::DVConnection(FramePtr frame, FiniteModule module,
                           std::vector<Matrix> endos)
    : m_frame(std::move(frame)), m_module(std::move(module)), m_endos(std::move(endos)) {
  if (m_endos.size() != m_frame->size())
    throw DimensionError("DVConnection: one endomorphism per frame derivation");
  for (const auto& e : m_endos)
    if (e.rows() != m_module.dim() || e.cols() != m_module.dim())
      throw DimensionError("DVConnection: endomorphism shape");
}

Matrix DVConnection::endo_for(const Derivation& u) const {
  auto coords = m_frame->coordinates(u);
  if (!coords) throw MismatchError("DVConnection: derivation outside the frame span");
  Matrix out(m_module.dim(), m_module.dim());
  for (std::size_t s = 0; s < m_endos.size(); ++s)
    if (!(*coords)[s].is_zero()) out = out + (*coords)[s] * m_endos[s];
  return out;
}

DVCheckResult dv_check(const DVConnection& conn) {
  const auto& frame = conn.frame();
  const auto& p = conn.module();
  const auto& a = frame->algebra();
  const std::size_t m = a->dim();
  DVCheckResult res;
  // centre-linearity: nabla_{z u_r} = z . nabla_{u_r}
  for (const auto& z : frame->centre())
    for (std::size_t r = 0; r < frame->size(); ++r) {
      auto lam = frame->coordinates(z * (*frame)[r]);
      if (!lam) {
        res.ok = false;
        res.diagnostic = "z u_r escapes the derivation span";
        return res;
      }
      Matrix lhs(p.dim(), p.dim());
      for (std::size_t s = 0; s < frame->size(); ++s)
        if (!(*lam)[s].is_zero()) lhs = lhs + (*lam)[s] * conn.endo(s);
      if (p.dim() > 0 && lhs != p.central_left_action(z) * conn.endo(r)) {
        res.ok = false;
        res.diagnostic = "centre-linearity fails at derivation " + std::to_string(r);
        return res;
      }
    }
  // Leibniz on the full-algebra sides
  for (std::size_t r = 0; r < frame->size(); ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      Vec ei(m);
      ei[i] = Scalar(1);
      Vec ui = (*frame)[r].action().apply(ei);
      if (p.left_side() == Side::Full) {
        Matrix la = p.left_action(ei);
        if (conn.endo(r) * la - la * conn.endo(r) != p.left_action(ui)) {
          res.ok = false;
          res.diagnostic = "left Leibniz fails at (derivation " + std::to_string(r) +
                           ", basis " + std::to_string(i) + ")";
          return res;
        }
      }
      if (p.right_side() == Side::Full) {
        Matrix ra = p.right_action(ei);
        if (conn.endo(r) * ra - ra * conn.endo(r) != p.right_action(ui)) {
          res.ok = false;
          res.diagnostic = "right Leibniz fails at (derivation " + std::to_string(r) +
                           ", basis " + std::to_string(i) + ")";
          return res;
        }
      }
    }
    if (p.kind() == ModuleKind::Centre00) {
      for (const auto& z : frame->centre()) {
        Matrix cz = p.central_left_action(z);
        AlgebraElement uz = (*frame)[r].apply(z);
        if (conn.endo(r) * cz - cz * conn.endo(r) != p.central_left_action(uz)) {
          res.ok = false;
          res.diagnostic = "centre Leibniz fails at derivation " + std::to_string(r);
          return res;
        }
      }
    }
  }
  return res;
}

DVConnection dv_canonical_connection(const FramePtr& frame) {
  FiniteModule p = FiniteModule::free_module(frame->algebra(), 1, ModuleKind::Central11);
  std::vector<Matrix> endos;
  for (std::size_t r = 0; r < frame->size(); ++r) endos.push_back((*frame)[r].action());
  return DVConnection(frame, std::move(p), std::move(endos));
}

DVConnection dv_inner_connection(const FramePtr& frame, FiniteModule module) {
  const auto& a = frame->algebra();
  const std::size_t m = a->dim();
  if (module.left_side() != Side::Full || module.right_side() != Side::Full)
    throw MismatchError("dv_inner_connection: module must be a bimodule");
  // solve ad(b_r) = u_r
  Matrix sys(m * m, m);
  for (std::size_t j = 0; j < m; ++j) {
    Vec ej(m);
    ej[j] = Scalar(1);
    Matrix ad = a->left_mult_matrix(ej) - a->right_mult_matrix(ej);
    Vec flat = flatten_matrix(ad);
    for (std::size_t r = 0; r < m * m; ++r) sys.at(r, j) = flat[r];
  }
  std::vector<Matrix> endos;
  for (std::size_t r = 0; r < frame->size(); ++r) {
    auto b = solve(sys, flatten_matrix((*frame)[r].action()));
    if (!b)
      throw Error("dv_inner_connection: frame derivation " + std::to_string(r) +
                  " is not inner");
    endos.push_back(module.left_action(*b) - module.right_action(*b));
  }
  return DVConnection(frame, std::move(module), std::move(endos));
}

Matrix dv_curvature(const DVConnection& conn, std::size_t r, std::size_t q) {
  const auto& frame = conn.frame();
  Matrix out = conn.endo(r) * conn.endo(q) - conn.endo(q) * conn.endo(r);
  const Vec& br = frame->bracket(r, q);
  for (std::size_t s = 0; s < frame->size(); ++s)
    if (!br[s].is_zero()) out = out - br[s] * conn.endo(s);
  return out;
}

Matrix dv_curvature(const DVConnection& conn, const Derivation& u, const Derivation& v) {
  Matrix eu = conn.endo_for(u), ev = conn.endo_for(v);
  return eu * ev - ev * eu - conn.endo_for(lie_bracket(u, v));
}

Matrix dv_torsion(const DVConnection& conn) {
  const auto& frame = conn.frame();
  const auto& a = frame->algebra();
  const std::size_t D = frame->size(), m = a->dim();
  if (conn.module().dim() != D * m)
    throw MismatchError(
        "dv_torsion: torsion is defined for linear connections on the CE "
        "1-forms module");
  auto pairs = increasing_tuples(D, 2);
  Matrix out(pairs.size() * m, D * m);
  for (std::size_t c = 0; c < D * m; ++c) {
    Vec flat(D * m);
    flat[c] = Scalar(1);
    CEForm phi = CEForm::from_flat(frame, 1, flat);
    CEForm dphi = ce_d(phi);
    std::vector<CEForm> napplied;
    napplied.reserve(D);
    for (std::size_t r = 0; r < D; ++r)
      napplied.push_back(CEForm::from_flat(frame, 1, conn.endo(r).apply(flat)));
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      const std::size_t u = pairs[t][0], v = pairs[t][1];
      Vec val = dphi.evaluate_indices({u, v}) - napplied[u].evaluate_indices({v}) +
                napplied[v].evaluate_indices({u});
      for (std::size_t b = 0; b < m; ++b) out.at(t * m + b, c) = val[b];
    }
  }
  return out;
}

bool is_module_endomorphism(const FiniteModule& p, const Matrix& op) {
  const std::size_t m = p.algebra()->dim();
  if (p.left_side() == Side::Full || p.right_side() == Side::Full) {
    for (std::size_t i = 0; i < m; ++i) {
      Vec ei(m);
      ei[i] = Scalar(1);
      if (p.left_side() == Side::Full && op * p.left_action(ei) != p.left_action(ei) * op)
        return false;
      if (p.right_side() == Side::Full && op * p.right_action(ei) != p.right_action(ei) * op)
        return false;
    }
    return true;
  }
  for (const auto& z : p.centre())
    if (op * p.central_left_action(z) != p.central_left_action(z) * op) return false;
  return true;
}

DVConnection dv_direct_sum(const DVConnection& a, const DVConnection& b) {
  if (a.frame() != b.frame()) throw MismatchError("dv_direct_sum: frame mismatch");
  FiniteModule sum = direct_sum(a.module(), b.module());
  std::vector<Matrix> endos;
  for (std::size_t r = 0; r < a.size(); ++r) {
    Matrix big(sum.dim(), sum.dim());
    for (std::size_t i = 0; i < a.module().dim(); ++i)
      for (std::size_t j = 0; j < a.module().dim(); ++j)
        big.at(i, j) = a.endo(r).at(i, j);
    for (std::size_t i = 0; i < b.module().dim(); ++i)
      for (std::size_t j = 0; j < b.module().dim(); ++j)
        big.at(a.module().dim() + i, a.module().dim() + j) = b.endo(r).at(i, j);
    endos.push_back(std::move(big));
  }
  return DVConnection(a.frame(), std::move(sum), std::move(endos));
}

DVConnection dv_dual(const DVConnection& conn, const DualModule& dual) {
  const auto& frame = conn.frame();
  const std::size_t dd = dual.module.dim();
  std::vector<Matrix> endos;
  for (std::size_t r = 0; r < frame->size(); ++r) {
    const Matrix& ur = (*frame)[r].action();
    Matrix er(dd, dd);
    for (std::size_t k = 0; k < dd; ++k) {
      Matrix candidate = ur * dual.maps[k] - dual.maps[k] * conn.endo(r);
      auto coords = dual.span.coordinates(flatten_matrix(candidate));
      if (!coords)
        throw SingularError(
            "dv_dual: pairing is degenerate; the dual connection candidate "
            "leaves the Hom span");
      for (std::size_t t = 0; t < dd; ++t) er.at(t, k) = (*coords)[t];
    }
    endos.push_back(std::move(er));
  }
  return DVConnection(frame, dual.module, std::move(endos));
}

DVConnection dv_tensor(const DVConnection& c1, const DVConnection& c2,
                       const TensorModule& t) {
  if (c1.frame() != c2.frame()) throw MismatchError("dv_tensor: frame mismatch");
  const std::size_t n1 = c1.module().dim(), n2 = c2.module().dim();
  std::vector<Matrix> endos;
  for (std::size_t r = 0; r < c1.size(); ++r) {
    Matrix plain(n1 * n2, n1 * n2);
    const Matrix& e1 = c1.endo(r);
    const Matrix& e2 = c2.endo(r);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t k = 0; k < n1; ++k)
        if (!e1.at(i, k).is_zero())
          for (std::size_t j = 0; j < n2; ++j)
            plain.at(i * n2 + j, k * n2 + j) += e1.at(i, k);
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t k = 0; k < n2; ++k)
        if (!e2.at(j, k).is_zero())
          for (std::size_t i = 0; i < n1; ++i)
            plain.at(i * n2 + j, i * n2 + k) += e2.at(j, k);
    const Subspace& bal = t.q.kernel_space();
    for (std::size_t b = 0; b < bal.dim(); ++b)
      if (!bal.contains(plain.apply(bal.basis().row(b))))
        throw InvariantError(
            "dv_tensor: endomorphism does not preserve the balancing subspace");
    endos.push_back(t.q.projection() * plain * t.q.section());
  }
  return DVConnection(c1.frame(), t.module, std::move(endos));
}

DVConnection dv_conjugate(const DVConnection& conn) {
  const auto& frame = conn.frame();
  const auto& p = conn.module();
  if (!p.has_involution())
    throw Error("dv_conjugate: module carries no involution");
  const Matrix& j = p.involution_matrix();
  std::vector<Matrix> endos;
  for (std::size_t r = 0; r < frame->size(); ++r) {
    const Vec& lam = frame->star_coords(r);
    Matrix estar(p.dim(), p.dim());
    for (std::size_t s = 0; s < frame->size(); ++s)
      if (!lam[s].is_zero()) estar = estar + lam[s] * conn.endo(s);
    endos.push_back(j * estar.conj() * j.conj());
  }
  return DVConnection(frame, p, std::move(endos));
}

bool dv_is_real(const DVConnection& conn) {
  DVConnection conj = dv_conjugate(conn);
  for (std::size_t r = 0; r < conn.size(); ++r)
    if (conj.endo(r) != conn.endo(r)) return false;
  return true;
}

std::vector<Matrix> dv_difference(const DVConnection& a, const DVConnection& b) {
  if (a.frame() != b.frame() || a.module().dim() != b.module().dim())
    throw MismatchError("dv_difference: incompatible connections");
  std::vector<Matrix> out;
  for (std::size_t r = 0; r < a.size(); ++r) out.push_back(a.endo(r) - b.endo(r));
  return out;
}

DVConnection dv_translate(const DVConnection& conn, const std::vector<Matrix>& sigma) {
  if (sigma.size() != conn.size()) throw DimensionError("dv_translate: family size");
  std::vector<Matrix> endos;
  for (std::size_t r = 0; r < conn.size(); ++r) endos.push_back(conn.endo(r) + sigma[r]);
  return DVConnection(conn.frame(), conn.module(), std::move(endos));
}

// --- universal connections --------------------------------------------------

namespace {

std::size_t tensor_pow(std::size_t m, std::size_t k) {
  std::size_t d = m;
  for (std::size_t i = 0; i < k; ++i) d *= m;
  return d;
}

// first-slot left multiplication by an algebra element on degree-k tensors
void add_first_slot_left(const AlgebraPtr& a, const Vec& b, const Vec& in, Vec& out,
                         std::size_t k) {
  const std::size_t m = a->dim();
  const std::size_t tail = tensor_pow(m, k) / m;
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t q = 0; q < tail; ++q) {
      const Scalar& x = in[f * tail + q];
      if (x.is_zero()) continue;
      for (std::size_t i = 0; i < m; ++i) {
        if (b[i].is_zero()) continue;
        const Vec& prod = a->table(i, f);
        for (std::size_t s = 0; s < m; ++s)
          if (!prod[s].is_zero()) out[s * tail + q] += b[i] * x * prod[s];
      }
    }
}

// last-slot right multiplication
void add_last_slot_right(const AlgebraPtr& a, const Vec& in, const Vec& b, Vec& out,
                         std::size_t k) {
  const std::size_t m = a->dim();
  const std::size_t lead = tensor_pow(m, k) / m;
  for (std::size_t p = 0; p < lead; ++p)
    for (std::size_t f = 0; f < m; ++f) {
      const Scalar& x = in[p * m + f];
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (b[j].is_zero()) continue;
        const Vec& prod = a->table(f, j);
        for (std::size_t s = 0; s < m; ++s)
          if (!prod[s].is_zero()) out[p * m + s] += x * b[j] * prod[s];
      }
    }
}

}  // namespace

UConnSpace::UConnSpace(AlgebraPtr algebra, AlgebraMatrix idem, bool left_module,
                       std::size_t max_degree)
    : m_algebra(std::move(algebra)),
      m_idem(std::move(idem)),
      m_left(left_module),
      m_n(m_idem.rows()),
      m_calc(m_algebra, max_degree) {
  if (m_idem.rows() != m_idem.cols())
    throw DimensionError("UConnSpace: idempotent must be square");
  if (!idempotent_check(m_idem)) throw InvariantError("UConnSpace: p^2 != p");
  if (m_left) {
    // left modules are supported in the free presentation only
    if (!(m_idem == AlgebraMatrix::identity(m_algebra, m_n)))
      throw Error("UConnSpace: left modules are supported as free modules only");
  }
  m_carrier = image(m_idem.left_operator());
  const std::size_t m = m_algebra->dim();
  for (std::size_t k = 1; k <= max_degree; ++k) {
    const std::size_t block = tensor_pow(m, k);
    const Subspace& span_k = m_calc.span(k);
    std::vector<Vec> gens;
    for (std::size_t entry = 0; entry < m_n; ++entry)
      for (std::size_t b = 0; b < span_k.dim(); ++b) {
        Vec w = span_k.basis().row(b);
        Vec amb(m_n * block);
        if (m_left) {
          for (std::size_t t = 0; t < block; ++t) amb[entry * block + t] = w[t];
        } else {
          amb = idem_column(entry, w, k);
        }
        gens.push_back(std::move(amb));
      }
    m_tensor.push_back(Subspace::span(m_n * block, gens));
  }
}

Vec UConnSpace::idem_column(std::size_t entry, const Vec& tensor_coords,
                            std::size_t k) const {
  // p applied to the column with `tensor_coords` in slot `entry`:
  // out_i = p_{i,entry} . w (first-slot left multiplication)
  const std::size_t m = m_algebra->dim();
  const std::size_t block = tensor_pow(m, k);
  Vec out(m_n * block);
  for (std::size_t i = 0; i < m_n; ++i) {
    Vec piece(block);
    add_first_slot_left(m_algebra, m_idem.at(i, entry).coeffs(), tensor_coords, piece, k);
    for (std::size_t t = 0; t < block; ++t) out[i * block + t] = piece[t];
  }
  return out;
}

std::shared_ptr<UConnSpace> UConnSpace::free_space(const AlgebraPtr& a, std::size_t n,
                                                   bool left_module) {
  return std::make_shared<UConnSpace>(a, AlgebraMatrix::identity(a, n), left_module);
}

std::shared_ptr<UConnSpace> UConnSpace::projective_space(const AlgebraPtr& a,
                                                         const AlgebraMatrix& idem) {
  return std::make_shared<UConnSpace>(a, idem, false);
}

const Subspace& UConnSpace::tensor_space(std::size_t k) const {
  if (k == 0 || k > m_tensor.size())
    throw Error("UConnSpace: tensor degree out of range");
  return m_tensor[k - 1];
}

Matrix UConnSpace::module_act(const AlgebraElement& a) const {
  const std::size_t m = m_algebra->dim();
  Matrix blockop = m_left ? m_algebra->left_mult_matrix(a.coeffs())
                          : m_algebra->right_mult_matrix(a.coeffs());
  Matrix big(m_n * m, m_n * m);
  for (std::size_t e = 0; e < m_n; ++e)
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) big.at(e * m + r, e * m + c) = blockop.at(r, c);
  Matrix out(m_carrier.dim(), m_carrier.dim());
  for (std::size_t k = 0; k < m_carrier.dim(); ++k) {
    auto coords = m_carrier.coordinates(big.apply(m_carrier.basis().row(k)));
    if (!coords) throw InvariantError("UConnSpace: carrier not stable under the action");
    for (std::size_t r = 0; r < m_carrier.dim(); ++r) out.at(r, k) = (*coords)[r];
  }
  return out;
}

Matrix UConnSpace::tensor_act(const AlgebraElement& a, std::size_t k) const {
  const Subspace& t = tensor_space(k);
  const std::size_t m = m_algebra->dim();
  const std::size_t block = tensor_pow(m, k);
  Matrix out(t.dim(), t.dim());
  for (std::size_t col = 0; col < t.dim(); ++col) {
    Vec in = t.basis().row(col);
    Vec img(m_n * block);
    for (std::size_t e = 0; e < m_n; ++e) {
      Vec piece(block), inpiece(block);
      for (std::size_t s = 0; s < block; ++s) inpiece[s] = in[e * block + s];
      if (m_left)
        add_first_slot_left(m_algebra, a.coeffs(), inpiece, piece, k);
      else
        add_last_slot_right(m_algebra, inpiece, a.coeffs(), piece, k);
      for (std::size_t s = 0; s < block; ++s) img[e * block + s] = piece[s];
    }
    auto coords = t.coordinates(img);
    if (!coords) throw InvariantError("UConnSpace: tensor space not stable under action");
    for (std::size_t r = 0; r < t.dim(); ++r) out.at(r, col) = (*coords)[r];
  }
  return out;
}

Vec UConnSpace::leibniz_term(const AlgebraElement& a, const Vec& carrier_coords) const {
  const std::size_t m = m_algebra->dim();
  Vec ambient(m_n * m);
  for (std::size_t k = 0; k < m_carrier.dim(); ++k) {
    if (carrier_coords[k].is_zero()) continue;
    Vec b = m_carrier.basis().row(k);
    for (std::size_t t = 0; t < ambient.size(); ++t) ambient[t] += carrier_coords[k] * b[t];
  }
  Vec da = udelta(a).coeffs();
  Vec out(m_n * m * m);
  for (std::size_t e = 0; e < m_n; ++e) {
    Vec entry(m);
    for (std::size_t s = 0; s < m; ++s) entry[s] = ambient[e * m + s];
    Vec piece(m * m);
    if (m_left)
      add_last_slot_right(m_algebra, da, entry, piece, 1);  // delta a . p_i
    else
      add_first_slot_left(m_algebra, entry, da, piece, 1);  // p_i . delta a
    for (std::size_t s = 0; s < m * m; ++s) out[e * m * m + s] = piece[s];
  }
  auto coords = tensor_space(1).coordinates(out);
  if (!coords) throw InvariantError("UConnSpace: Leibniz term escapes T_1");
  return *coords;
}

Matrix UConnSpace::grassmann_map() const {
  const std::size_t m = m_algebra->dim();
  Matrix out(tensor_space(1).dim(), m_carrier.dim());
  for (std::size_t k = 0; k < m_carrier.dim(); ++k) {
    Vec s = m_carrier.basis().row(k);
    // entrywise delta, then apply the idempotent
    Vec img(m_n * m * m);
    for (std::size_t e = 0; e < m_n; ++e) {
      Vec se(m);
      for (std::size_t t = 0; t < m; ++t) se[t] = s[e * m + t];
      Vec ds = udelta(m_algebra->element(se)).coeffs();
      if (m_left) {
        for (std::size_t t = 0; t < m * m; ++t) img[e * m * m + t] += ds[t];
      } else {
        Vec col = idem_column(e, ds, 1);
        img = img + col;
      }
    }
    auto coords = tensor_space(1).coordinates(img);
    if (!coords) throw InvariantError("UConnSpace: Grassmann image escapes T_1");
    for (std::size_t r = 0; r < out.rows(); ++r) out.at(r, k) = (*coords)[r];
  }
  return out;
}

Matrix UConnSpace::extend(const Matrix& nabla) const {
  const std::size_t m = m_algebra->dim();
  const Subspace& t1 = tensor_space(1);
  const Subspace& t2 = tensor_space(2);
  const Subspace& sp1 = m_calc.span(1);
  const std::size_t ngen = m_carrier.dim() * sp1.dim();
  // generators s (x) w of T_1 and their images under the graded Leibniz rule
  Matrix gen_coords(t1.dim(), ngen);
  Matrix val_coords(t2.dim(), ngen);
  std::size_t col = 0;
  for (std::size_t k = 0; k < m_carrier.dim(); ++k) {
    Vec s = m_carrier.basis().row(k);
    // lift nabla(s) to ambient entries
    Vec ns_coords = nabla.col(k);
    Vec ns(m_n * m * m);
    for (std::size_t b = 0; b < t1.dim(); ++b) {
      if (ns_coords[b].is_zero()) continue;
      Vec base = t1.basis().row(b);
      for (std::size_t t = 0; t < ns.size(); ++t) ns[t] += ns_coords[b] * base[t];
    }
    for (std::size_t l = 0; l < sp1.dim(); ++l) {
      Vec w = sp1.basis().row(l);
      UniversalForm wf(m_algebra, 1, w);
      Vec dw = udifferential(wf).coeffs();
      // generator
      Vec gen(m_n * m * m);
      Vec val(m_n * m * m * m);
      for (std::size_t e = 0; e < m_n; ++e) {
        Vec se(m);
        for (std::size_t t = 0; t < m; ++t) se[t] = s[e * m + t];
        Vec ge(m * m);
        Vec nse(m * m);
        for (std::size_t t = 0; t < m * m; ++t) nse[t] = ns[e * m * m + t];
        UniversalForm nsf(m_algebra, 1, nse);
        Vec ve(m * m * m);
        if (m_left) {
          // generator w (x) p: entries w . p_e; value: (delta w) p_e - w . nabla(p)_e
          add_last_slot_right(m_algebra, w, se, ge, 1);
          add_last_slot_right(m_algebra, dw, se, ve, 2);
          Vec corr = uproduct(wf, nsf).coeffs();
          for (std::size_t t = 0; t < ve.size(); ++t) ve[t] -= corr[t];
        } else {
          // generator p (x) w: entries p_e . w; value: nabla(p)_e . w + p_e (delta w)
          add_first_slot_left(m_algebra, se, w, ge, 1);
          Vec corr = uproduct(nsf, wf).coeffs();
          for (std::size_t t = 0; t < ve.size(); ++t) ve[t] += corr[t];
          add_first_slot_left(m_algebra, se, dw, ve, 2);
        }
        for (std::size_t t = 0; t < m * m; ++t) gen[e * m * m + t] = ge[t];
        for (std::size_t t = 0; t < m * m * m; ++t) val[e * m * m * m + t] += ve[t];
      }
      auto gc = t1.coordinates(gen);
      auto vc = t2.coordinates(val);
      if (!gc || !vc)
        throw InvariantError("UConnSpace::extend: generator image escapes T_k");
      for (std::size_t r = 0; r < t1.dim(); ++r) gen_coords.at(r, col) = (*gc)[r];
      for (std::size_t r = 0; r < t2.dim(); ++r) val_coords.at(r, col) = (*vc)[r];
      ++col;
    }
  }
  // well-definedness: relations among the generators map to zero
  Subspace rel = kernel(gen_coords);
  for (std::size_t r = 0; r < rel.dim(); ++r)
    if (!is_zero(val_coords.apply(rel.basis().row(r))))
      throw InvariantError("UConnSpace::extend: extension is not well-defined");
  auto x = solve(gen_coords, Matrix::identity(t1.dim()));
  if (!x) throw InvariantError("UConnSpace::extend: generators do not span T_1");
  return val_coords * *x;
}

Matrix UConnSpace::interior_pairing(const Derivation& u) const {
  const std::size_t m = m_algebra->dim();
  const Subspace& t1 = tensor_space(1);
  // pairing on one entry: sum x (x) y -> x u(y)
  Matrix pm(m, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Vec ej(m);
      ej[j] = Scalar(1);
      Vec uy = u.action().apply(ej);
      Vec ei(m);
      ei[i] = Scalar(1);
      Vec prod = m_algebra->product(ei, uy);
      for (std::size_t t = 0; t < m; ++t) pm.at(t, i * m + j) = prod[t];
    }
  Matrix out(m_carrier.dim(), t1.dim());
  for (std::size_t c = 0; c < t1.dim(); ++c) {
    Vec in = t1.basis().row(c);
    Vec img(m_n * m);
    for (std::size_t e = 0; e < m_n; ++e) {
      Vec entry(m * m);
      for (std::size_t t = 0; t < m * m; ++t) entry[t] = in[e * m * m + t];
      Vec val = pm.apply(entry);
      for (std::size_t t = 0; t < m; ++t) img[e * m + t] = val[t];
    }
    auto coords = m_carrier.coordinates(img);
    if (!coords)
      throw InvariantError("UConnSpace: interior pairing escapes the carrier");
    for (std::size_t r = 0; r < m_carrier.dim(); ++r) out.at(r, c) = (*coords)[r];
  }
  return out;
}

UniversalConnection grassmann_universal_connection(const USpacePtr& space) {
  return UniversalConnection{space, space->grassmann_map()};
}

UniversalCheckResult universal_check(const UniversalConnection& conn) {
  const auto& sp = *conn.space;
  const auto& a = sp.algebra();
  UniversalCheckResult res;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    AlgebraElement ei = a->basis_element(i);
    Matrix ma = sp.module_act(ei);
    Matrix ta = sp.tensor_act(ei, 1);
    for (std::size_t b = 0; b < sp.dim(); ++b) {
      Vec eb(sp.dim());
      eb[b] = Scalar(1);
      Vec lhs = conn.map.apply(ma.apply(eb));
      Vec rhs = ta.apply(conn.map.apply(eb)) + sp.leibniz_term(ei, eb);
      if (lhs != rhs) {
        res.ok = false;
        res.diagnostic = "Leibniz fails at (basis " + std::to_string(i) + ", carrier " +
                         std::to_string(b) + ")";
        return res;
      }
    }
  }
  return res;
}

Matrix universal_curvature(const UniversalConnection& conn) {
  return conn.space->extend(conn.map) * conn.map;
}

Matrix universal_interior_reduce(const UniversalConnection& conn, const Derivation& u) {
  return conn.space->interior_pairing(u) * conn.map;
}

BimodulePairReport bimodule_pair_check(const UniversalConnection& left,
                                       const UniversalConnection& right,
                                       const FramePtr& frame,
                                       const std::optional<Matrix>& rho) {
  BimodulePairReport rep;
  if (!left.space->left_module() || right.space->left_module())
    throw MismatchError("bimodule_pair_check: expected a (left, right) pair");
  if (rho) {
    rep.rho_supplied = true;
    rep.rho_compatible = (*rho * left.map == right.map);
  }
  const std::size_t pd = left.space->dim();
  for (std::size_t r = 0; r < frame->size(); ++r) {
    Matrix lred = universal_interior_reduce(left, (*frame)[r]);
    Matrix rred = universal_interior_reduce(right, (*frame)[r]);
    for (std::size_t b = 0; b < pd; ++b) {
      if (lred.col(b) != rred.col(b)) {
        rep.bimodule_condition = false;
        rep.witness = std::make_pair(r, b);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace ncgeo
