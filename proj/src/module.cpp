#include "ncgeo/module.hpp"

#include <utility>

#include "ncgeo/error.hpp"

namespace ncgeo {

Side left_level(ModuleKind k) {
  switch (k) {
    case ModuleKind::Right10: return Side::Centre;
    case ModuleKind::Left01: return Side::Full;
    case ModuleKind::Central11: return Side::Full;
    case ModuleKind::Centre00: return Side::Centre;
  }
  return Side::Centre;
}

Side right_level(ModuleKind k) {
  switch (k) {
    case ModuleKind::Right10: return Side::Full;
    case ModuleKind::Left01: return Side::Centre;
    case ModuleKind::Central11: return Side::Full;
    case ModuleKind::Centre00: return Side::Centre;
  }
  return Side::Centre;
}

const char* kind_name(ModuleKind k) {
  switch (k) {
    case ModuleKind::Right10: return "(1,0) right";
    case ModuleKind::Left01: return "(0,1) left";
    case ModuleKind::Central11: return "(1,1) central bimodule";
    case ModuleKind::Centre00: return "(0,0) centre-bimodule";
  }
  return "?";
}

namespace {

ModuleKind kind_from_levels(Side left, Side right) {
  if (left == Side::Full && right == Side::Full) return ModuleKind::Central11;
  if (left == Side::Full) return ModuleKind::Left01;
  if (right == Side::Full) return ModuleKind::Right10;
  return ModuleKind::Centre00;
}

}  // namespace

FiniteModule FiniteModule::from_actions(AlgebraPtr algebra, ModuleKind kind,
                                        std::size_t dim,
                                        std::optional<std::vector<Matrix>> left_full,
                                        std::optional<std::vector<Matrix>> right_full,
                                        std::optional<std::vector<Matrix>> centre_action,
                                        std::optional<Matrix> involution) {
  FiniteModule p;
  p.m_algebra = std::move(algebra);
  p.m_kind = kind;
  p.m_dim = dim;
  p.m_left = std::move(left_full);
  p.m_right = std::move(right_full);
  p.m_centre_act = std::move(centre_action);
  p.m_involution = std::move(involution);
  p.m_centre = centre_basis(p.m_algebra);
  p.validate();
  return p;
}

FiniteModule FiniteModule::free_module(AlgebraPtr algebra, std::size_t rank,
                                       ModuleKind kind) {
  const std::size_t m = algebra->dim();
  auto block = [&](const Matrix& b) {
    Matrix big(rank * m, rank * m);
    for (std::size_t r = 0; r < rank; ++r)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) big.at(r * m + i, r * m + j) = b.at(i, j);
    return big;
  };
  std::optional<std::vector<Matrix>> left, right;
  if (left_level(kind) == Side::Full) {
    std::vector<Matrix> ls;
    for (std::size_t i = 0; i < m; ++i) {
      Vec ei(m);
      ei[i] = Scalar(1);
      ls.push_back(block(algebra->left_mult_matrix(ei)));
    }
    left = std::move(ls);
  }
  if (right_level(kind) == Side::Full) {
    std::vector<Matrix> rs;
    for (std::size_t i = 0; i < m; ++i) {
      Vec ei(m);
      ei[i] = Scalar(1);
      rs.push_back(block(algebra->right_mult_matrix(ei)));
    }
    right = std::move(rs);
  }
  std::optional<std::vector<Matrix>> centre_act;
  if (left_level(kind) == Side::Centre && right_level(kind) == Side::Centre) {
    std::vector<Matrix> cs;
    for (const auto& z : centre_basis(algebra))
      cs.push_back(block(algebra->left_mult_matrix(z.coeffs())));
    centre_act = std::move(cs);
  }
  std::optional<Matrix> inv;
  if (algebra->has_involution()) inv = block(algebra->involution_matrix());
  return from_actions(std::move(algebra), kind, rank * m, std::move(left),
                      std::move(right), std::move(centre_act), std::move(inv));
}

FiniteModule FiniteModule::zero_module(AlgebraPtr algebra, ModuleKind kind) {
  const std::size_t m = algebra->dim();
  std::optional<std::vector<Matrix>> left, right, centre_act;
  if (left_level(kind) == Side::Full) left = std::vector<Matrix>(m, Matrix(0, 0));
  if (right_level(kind) == Side::Full) right = std::vector<Matrix>(m, Matrix(0, 0));
  if (left_level(kind) == Side::Centre && right_level(kind) == Side::Centre)
    centre_act = std::vector<Matrix>(centre_basis(algebra).size(), Matrix(0, 0));
  return from_actions(std::move(algebra), kind, 0, std::move(left), std::move(right),
                      std::move(centre_act), Matrix(0, 0));
}

void FiniteModule::validate() const {
  const std::size_t m = m_algebra->dim();
  auto unit = m_algebra->unit().coeffs();
  if (left_side() == Side::Full) {
    if (!m_left || m_left->size() != m)
      throw DimensionError("FiniteModule: missing/bad left action tensor");
    for (const auto& l : *m_left)
      if (l.rows() != m_dim || l.cols() != m_dim)
        throw DimensionError("FiniteModule: left action shape");
    if (left_action(unit) != Matrix::identity(m_dim))
      throw InvariantError("FiniteModule: 1 v != v (left)");
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (left_action(m_algebra->table(i, j)) !=
            left_matrix(i) * left_matrix(j))
          throw InvariantError("FiniteModule: (ab)v != a(bv)");
  }
  if (right_side() == Side::Full) {
    if (!m_right || m_right->size() != m)
      throw DimensionError("FiniteModule: missing/bad right action tensor");
    for (const auto& r : *m_right)
      if (r.rows() != m_dim || r.cols() != m_dim)
        throw DimensionError("FiniteModule: right action shape");
    if (right_action(unit) != Matrix::identity(m_dim))
      throw InvariantError("FiniteModule: v 1 != v (right)");
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (right_action(m_algebra->table(i, j)) !=
            right_matrix(j) * right_matrix(i))
          throw InvariantError("FiniteModule: v(ab) != (va)b");
  }
  if (left_side() == Side::Full && right_side() == Side::Full) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (left_matrix(i) * right_matrix(j) != right_matrix(j) * left_matrix(i))
          throw InvariantError("FiniteModule: left and right actions do not commute");
  }
  if (m_kind == ModuleKind::Central11) {
    for (const auto& z : m_centre)
      if (left_action(z.coeffs()) != right_action(z.coeffs()))
        throw InvariantError("FiniteModule: centrality p z != z p fails");
  }
  if (m_kind == ModuleKind::Centre00) {
    if (!m_centre_act || m_centre_act->size() != m_centre.size())
      throw DimensionError("FiniteModule: missing centre action");
    // the centre acts as a commutative unital algebra
    std::vector<Vec> zvecs;
    for (const auto& z : m_centre) zvecs.push_back(z.coeffs());
    Subspace zspan = Subspace::span(m, zvecs);
    auto zcoords = zspan.coordinates(unit);
    if (!zcoords) throw InvariantError("FiniteModule: unit not in centre span");
    Matrix u(m_dim, m_dim);
    for (std::size_t k = 0; k < m_centre.size(); ++k)
      u = u + (*zcoords)[k] * (*m_centre_act)[k];
    if (u != Matrix::identity(m_dim))
      throw InvariantError("FiniteModule: 1 v != v (centre action)");
    for (std::size_t i = 0; i < m_centre.size(); ++i)
      for (std::size_t j = 0; j < m_centre.size(); ++j) {
        Vec prod = m_algebra->product(m_centre[i].coeffs(), m_centre[j].coeffs());
        auto pc = zspan.coordinates(prod);
        if (!pc) throw InvariantError("FiniteModule: centre not closed");
        Matrix lhs(m_dim, m_dim);
        for (std::size_t k = 0; k < m_centre.size(); ++k)
          lhs = lhs + (*pc)[k] * (*m_centre_act)[k];
        if (lhs != (*m_centre_act)[i] * (*m_centre_act)[j])
          throw InvariantError("FiniteModule: centre action not multiplicative");
      }
  }
  if (m_involution && m_dim > 0) {
    if (m_involution->rows() != m_dim || m_involution->cols() != m_dim)
      throw DimensionError("FiniteModule: involution shape");
  }
}

const Matrix& FiniteModule::left_matrix(std::size_t i) const {
  if (!m_left) throw Error("FiniteModule: no full left action");
  return (*m_left)[i];
}

const Matrix& FiniteModule::right_matrix(std::size_t i) const {
  if (!m_right) throw Error("FiniteModule: no full right action");
  return (*m_right)[i];
}

Matrix FiniteModule::left_action(const Vec& a) const {
  Matrix r(m_dim, m_dim);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) r = r + a[i] * left_matrix(i);
  return r;
}

Matrix FiniteModule::right_action(const Vec& a) const {
  Matrix r(m_dim, m_dim);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) r = r + a[i] * right_matrix(i);
  return r;
}

Matrix FiniteModule::central_left_action(const AlgebraElement& z) const {
  if (left_side() == Side::Full) return left_action(z.coeffs());
  if (right_side() == Side::Full) return right_action(z.coeffs());
  // kind (0,0): expand z in the centre basis
  std::vector<Vec> zvecs;
  for (const auto& c : m_centre) zvecs.push_back(c.coeffs());
  Subspace zspan = Subspace::span(m_algebra->dim(), zvecs);
  auto coords = zspan.coordinates(z.coeffs());
  if (!coords) throw MismatchError("central action: element not central");
  Matrix r(m_dim, m_dim);
  for (std::size_t k = 0; k < m_centre.size(); ++k)
    r = r + (*coords)[k] * (*m_centre_act)[k];
  return r;
}

Matrix FiniteModule::central_right_action(const AlgebraElement& z) const {
  if (right_side() == Side::Full) return right_action(z.coeffs());
  if (left_side() == Side::Full) return left_action(z.coeffs());
  return central_left_action(z);
}

const Matrix& FiniteModule::involution_matrix() const {
  if (!m_involution) throw Error("FiniteModule: no involution");
  return *m_involution;
}

Vec FiniteModule::involution(const Vec& v) const {
  Vec c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i].conj();
  return involution_matrix().apply(c);
}

Matrix FiniteModule::middle_right_action(Side level, std::size_t idx) const {
  if (level == Side::Full) return right_matrix(idx);
  return central_right_action(m_centre[idx]);
}

Matrix FiniteModule::middle_left_action(Side level, std::size_t idx) const {
  if (level == Side::Full) return left_matrix(idx);
  return central_left_action(m_centre[idx]);
}

FiniteModule direct_sum(const FiniteModule& p, const FiniteModule& q) {
  if (p.algebra() != q.algebra() || p.kind() != q.kind())
    throw MismatchError("direct_sum: modules must share algebra and kind");
  const std::size_t m = p.algebra()->dim(), d = p.dim() + q.dim();
  auto block = [&](const Matrix& a, const Matrix& b) {
    Matrix big(d, d);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) big.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        big.at(p.dim() + i, p.dim() + j) = b.at(i, j);
    return big;
  };
  std::optional<std::vector<Matrix>> left, right, centre;
  if (p.left_side() == Side::Full) {
    std::vector<Matrix> ls;
    for (std::size_t i = 0; i < m; ++i) ls.push_back(block(p.left_matrix(i), q.left_matrix(i)));
    left = std::move(ls);
  }
  if (p.right_side() == Side::Full) {
    std::vector<Matrix> rs;
    for (std::size_t i = 0; i < m; ++i) rs.push_back(block(p.right_matrix(i), q.right_matrix(i)));
    right = std::move(rs);
  }
  if (p.kind() == ModuleKind::Centre00) {
    std::vector<Matrix> cs;
    for (std::size_t k = 0; k < p.centre().size(); ++k)
      cs.push_back(block(p.central_left_action(p.centre()[k]),
                         q.central_left_action(q.centre()[k])));
    centre = std::move(cs);
  }
  std::optional<Matrix> inv;
  if (p.has_involution() && q.has_involution())
    inv = block(p.involution_matrix(), q.involution_matrix());
  return FiniteModule::from_actions(p.algebra(), p.kind(), d, std::move(left),
                                    std::move(right), std::move(centre), std::move(inv));
}

namespace {

Vec flatten_matrix(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

Matrix unflatten(const Vec& v, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = v[i * cols + j];
  return m;
}

ModuleKind dual_kind(ModuleKind k) {
  switch (k) {
    case ModuleKind::Right10: return ModuleKind::Left01;
    case ModuleKind::Left01: return ModuleKind::Right10;
    case ModuleKind::Central11: return ModuleKind::Centre00;
    case ModuleKind::Centre00: return ModuleKind::Central11;
  }
  return ModuleKind::Left01;
}

}  // namespace

DualModule dual_module(const FiniteModule& p) {
  const auto& alg = p.algebra();
  const std::size_t m = alg->dim(), d = p.dim();
  // Unknown f: m x d, flattened row major.  Constraints: f(a v) = a f(v) over
  // the left-acting algebra of P, f(v a) = f(v) a over the right-acting one.
  std::vector<std::pair<Matrix, Matrix>> constraints;  // (module action M, algebra mult N): f M = N f
  if (p.left_side() == Side::Full) {
    for (std::size_t i = 0; i < m; ++i) {
      Vec ei(m);
      ei[i] = Scalar(1);
      constraints.emplace_back(p.left_matrix(i), alg->left_mult_matrix(ei));
    }
  } else {
    for (const auto& z : p.centre())
      constraints.emplace_back(p.central_left_action(z), alg->left_mult_matrix(z.coeffs()));
  }
  if (p.right_side() == Side::Full) {
    for (std::size_t i = 0; i < m; ++i) {
      Vec ei(m);
      ei[i] = Scalar(1);
      constraints.emplace_back(p.right_matrix(i), alg->right_mult_matrix(ei));
    }
  } else {
    for (const auto& z : p.centre())
      constraints.emplace_back(p.central_right_action(z), alg->right_mult_matrix(z.coeffs()));
  }
  Matrix sys(constraints.size() * m * d, m * d);
  std::size_t row0 = 0;
  for (const auto& [act, mult] : constraints) {
    // (f act - mult f)_{r,c} = sum_t f_{r,t} act_{t,c} - mult_{r,t} f_{t,c}
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t t = 0; t < d; ++t) sys.at(row0 + r * d + c, r * d + t) += act.at(t, c);
        for (std::size_t t = 0; t < m; ++t) sys.at(row0 + r * d + c, t * d + c) -= mult.at(r, t);
      }
    row0 += m * d;
  }
  Subspace hom = (d == 0) ? Subspace::zero(0) : kernel(sys);
  std::vector<Matrix> maps;
  std::vector<Vec> flat;
  for (std::size_t k = 0; k < hom.dim(); ++k) {
    Vec v = hom.basis().row(k);
    maps.push_back(unflatten(v, m, d));
    flat.push_back(v);
  }
  Subspace span = Subspace::span(m * d, flat);
  const std::size_t dd = maps.size();
  ModuleKind dk = dual_kind(p.kind());

  // Actions on Hom: (a f)(v) = a f(v), (f a)(v) = f(v) a, restricted to the
  // computed span (the span is closed; coordinates always exist).
  auto act_matrix = [&](bool from_left, const Vec& a) {
    Matrix big = from_left ? alg->left_mult_matrix(a) : alg->right_mult_matrix(a);
    Matrix out(dd, dd);
    for (std::size_t k = 0; k < dd; ++k) {
      Matrix image = big * maps[k];
      auto coords = span.coordinates(flatten_matrix(image));
      if (!coords) throw InvariantError("dual_module: Hom span not closed under action");
      for (std::size_t r = 0; r < dd; ++r) out.at(r, k) = (*coords)[r];
    }
    return out;
  };
  std::optional<std::vector<Matrix>> left, right, centre;
  if (left_level(dk) == Side::Full) {
    std::vector<Matrix> ls;
    for (std::size_t i = 0; i < m; ++i) {
      Vec ei(m);
      ei[i] = Scalar(1);
      ls.push_back(act_matrix(true, ei));
    }
    left = std::move(ls);
  }
  if (right_level(dk) == Side::Full) {
    std::vector<Matrix> rs;
    for (std::size_t i = 0; i < m; ++i) {
      Vec ei(m);
      ei[i] = Scalar(1);
      rs.push_back(act_matrix(false, ei));
    }
    right = std::move(rs);
  }
  if (left_level(dk) == Side::Centre && right_level(dk) == Side::Centre) {
    std::vector<Matrix> cs;
    for (const auto& z : p.centre()) cs.push_back(act_matrix(true, z.coeffs()));
    centre = std::move(cs);
  }
  DualModule out{FiniteModule::from_actions(alg, dk, dd, std::move(left),
                                            std::move(right), std::move(centre)),
                 std::move(maps), std::move(span)};
  return out;
}

Matrix double_dual_map(const FiniteModule& p, const DualModule& dual,
                       const DualModule& double_dual) {
  const std::size_t m = p.algebra()->dim();
  Matrix out(double_dual.module.dim(), p.dim());
  for (std::size_t b = 0; b < p.dim(); ++b) {
    Vec v(p.dim());
    v[b] = Scalar(1);
    // the functional f -> f(v) on P*, as an m x dim(P*) matrix
    Matrix func(m, dual.module.dim());
    for (std::size_t k = 0; k < dual.module.dim(); ++k) {
      Vec fv = dual.maps[k].apply(v);
      for (std::size_t r = 0; r < m; ++r) func.at(r, k) = fv[r];
    }
    auto coords = double_dual.span.coordinates(flatten_matrix(func));
    if (!coords)
      throw InvariantError("double_dual_map: evaluation functional not bilinear");
    for (std::size_t r = 0; r < double_dual.module.dim(); ++r) out.at(r, b) = (*coords)[r];
  }
  return out;
}

Vec pure_tensor(const Vec& v, const Vec& w) {
  Vec t(v.size() * w.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (!w[j].is_zero()) t[i * w.size() + j] = v[i] * w[j];
  }
  return t;
}

TensorModule tensor_modules(const FiniteModule& p, const FiniteModule& q) {
  if (p.algebra() != q.algebra()) throw MismatchError("tensor_modules: algebra mismatch");
  if (p.right_side() != q.left_side())
    throw MismatchError("tensor_modules: kinds do not compose over a middle algebra");
  const Side middle = p.right_side();
  const auto& alg = p.algebra();
  const std::size_t np = p.dim(), nq = q.dim(), plain = np * nq;
  const std::size_t nmid =
      middle == Side::Full ? alg->dim() : p.centre().size();

  std::vector<Vec> balance;
  for (std::size_t a = 0; a < nmid; ++a) {
    Matrix ra = p.middle_right_action(middle, a);
    Matrix la = q.middle_left_action(middle, a);
    for (std::size_t i = 0; i < np; ++i) {
      Vec vi(np);
      vi[i] = Scalar(1);
      Vec va = ra.apply(vi);
      for (std::size_t j = 0; j < nq; ++j) {
        Vec wj(nq);
        wj[j] = Scalar(1);
        Vec aw = la.apply(wj);
        balance.push_back(pure_tensor(va, wj) - pure_tensor(vi, aw));
      }
    }
  }
  QuotientMap qmap = quotient(plain, Subspace::span(plain, balance));
  const std::size_t d = qmap.dim();

  // Descend an operator T on the plain tensor space to the quotient.
  auto descend = [&](const Matrix& t) {
    return qmap.projection() * t * qmap.section();
  };
  auto on_left = [&](const Matrix& act) {  // act on P factor
    Matrix t(plain, plain);
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t k = 0; k < np; ++k) {
        if (act.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < nq; ++j) t.at(i * nq + j, k * nq + j) = act.at(i, k);
      }
    return t;
  };
  auto on_right = [&](const Matrix& act) {  // act on Q factor
    Matrix t(plain, plain);
    for (std::size_t j = 0; j < nq; ++j)
      for (std::size_t k = 0; k < nq; ++k) {
        if (act.at(j, k).is_zero()) continue;
        for (std::size_t i = 0; i < np; ++i) t.at(i * nq + j, i * nq + k) = act.at(j, k);
      }
    return t;
  };
  // well-definedness: plain operators must preserve the balancing subspace
  auto check_preserves = [&](const Matrix& t) {
    const Subspace& ker = qmap.kernel_space();
    for (std::size_t r = 0; r < ker.dim(); ++r)
      if (!ker.contains(t.apply(ker.basis().row(r))))
        throw InvariantError("tensor_modules: action does not preserve balancing subspace");
  };

  ModuleKind rk = kind_from_levels(p.left_side(), q.right_side());
  std::optional<std::vector<Matrix>> left, right, centre;
  if (left_level(rk) == Side::Full) {
    std::vector<Matrix> ls;
    for (std::size_t i = 0; i < alg->dim(); ++i) {
      Matrix t = on_left(p.left_matrix(i));
      check_preserves(t);
      ls.push_back(descend(t));
    }
    left = std::move(ls);
  }
  if (right_level(rk) == Side::Full) {
    std::vector<Matrix> rs;
    for (std::size_t i = 0; i < alg->dim(); ++i) {
      Matrix t = on_right(q.right_matrix(i));
      check_preserves(t);
      rs.push_back(descend(t));
    }
    right = std::move(rs);
  }
  if (left_level(rk) == Side::Centre && right_level(rk) == Side::Centre) {
    std::vector<Matrix> cs;
    for (const auto& z : p.centre()) {
      Matrix t = on_left(p.central_left_action(z));
      check_preserves(t);
      cs.push_back(descend(t));
    }
    centre = std::move(cs);
  }
  (void)d;
  TensorModule out{FiniteModule::from_actions(alg, rk, qmap.dim(), std::move(left),
                                              std::move(right), std::move(centre)),
                   std::move(qmap)};
  return out;
}

AlgebraMatrix::AlgebraMatrix(AlgebraPtr algebra, std::size_t rows, std::size_t cols)
    : m_algebra(std::move(algebra)),
      m_rows(rows),
      m_cols(cols),
      m_entries(rows * cols, m_algebra->zero()) {}

AlgebraMatrix AlgebraMatrix::identity(AlgebraPtr algebra, std::size_t n) {
  AlgebraMatrix p(algebra, n, n);
  for (std::size_t i = 0; i < n; ++i) p.at(i, i) = algebra->unit();
  return p;
}

AlgebraElement& AlgebraMatrix::at(std::size_t i, std::size_t j) {
  return m_entries[i * m_cols + j];
}

const AlgebraElement& AlgebraMatrix::at(std::size_t i, std::size_t j) const {
  return m_entries[i * m_cols + j];
}

AlgebraMatrix AlgebraMatrix::operator*(const AlgebraMatrix& o) const {
  if (m_cols != o.m_rows || m_algebra != o.m_algebra)
    throw MismatchError("AlgebraMatrix: bad product");
  AlgebraMatrix r(m_algebra, m_rows, o.m_cols);
  for (std::size_t i = 0; i < m_rows; ++i)
    for (std::size_t j = 0; j < o.m_cols; ++j) {
      AlgebraElement acc = m_algebra->zero();
      for (std::size_t k = 0; k < m_cols; ++k) acc = acc + at(i, k) * o.at(k, j);
      r.at(i, j) = acc;
    }
  return r;
}

bool AlgebraMatrix::operator==(const AlgebraMatrix& o) const {
  return m_rows == o.m_rows && m_cols == o.m_cols && m_entries == o.m_entries;
}

Matrix AlgebraMatrix::left_operator() const {
  const std::size_t m = m_algebra->dim();
  Matrix op(m_rows * m, m_cols * m);
  for (std::size_t i = 0; i < m_rows; ++i)
    for (std::size_t j = 0; j < m_cols; ++j) {
      Matrix l = m_algebra->left_mult_matrix(at(i, j).coeffs());
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) op.at(i * m + r, j * m + c) = l.at(r, c);
    }
  return op;
}

AlgebraMatrix AlgebraMatrix::conj_transpose() const {
  AlgebraMatrix r(m_algebra, m_cols, m_rows);
  for (std::size_t i = 0; i < m_rows; ++i)
    for (std::size_t j = 0; j < m_cols; ++j) r.at(j, i) = at(i, j).involution();
  return r;
}

bool idempotent_check(const AlgebraMatrix& p) {
  if (p.rows() != p.cols()) throw DimensionError("idempotent_check: non-square matrix");
  return p * p == p;
}

ProjectiveModule projective_from_idempotent(const AlgebraPtr& a,
                                            const AlgebraMatrix& p) {
  if (!idempotent_check(p)) throw InvariantError("projective_from_idempotent: p^2 != p");
  const std::size_t n = p.rows(), m = a->dim(), amb = n * m;
  Matrix op = p.left_operator();
  Subspace img = image(op);
  const std::size_t d = img.dim();
  Matrix embed(amb, d);
  for (std::size_t k = 0; k < d; ++k) {
    Vec b = img.basis().row(k);
    for (std::size_t r = 0; r < amb; ++r) embed.at(r, k) = b[r];
  }
  // right action: componentwise multiplication, restricted to the image
  std::vector<Matrix> right;
  for (std::size_t i = 0; i < m; ++i) {
    Vec ei(m);
    ei[i] = Scalar(1);
    Matrix ra = a->right_mult_matrix(ei);
    Matrix big(amb, amb);
    for (std::size_t blk = 0; blk < n; ++blk)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) big.at(blk * m + r, blk * m + c) = ra.at(r, c);
    Matrix restricted(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      auto coords = img.coordinates(big.apply(img.basis().row(k)));
      if (!coords)
        throw InvariantError("projective_from_idempotent: image not right-stable");
      for (std::size_t r = 0; r < d; ++r) restricted.at(r, k) = (*coords)[r];
    }
    right.push_back(std::move(restricted));
  }
  FiniteModule mod = FiniteModule::from_actions(a, ModuleKind::Right10, d, std::nullopt,
                                                std::move(right));
  return ProjectiveModule{std::move(mod), std::move(embed), std::move(img), p};
}

}  // namespace ncgeo
