#include "ncgeo/matrix_geometry.hpp"

#include <utility>

#include "ncgeo/error.hpp"

namespace ncgeo {

ThetaFrame theta_frame(std::size_t n) {
  if (n < 2) throw Error("theta_frame: n must be >= 2");
  SuBasis su = su_basis(n);
  std::vector<Derivation> ad;
  for (const auto& e : su.epsilons) ad.push_back(inner_derivation(e));
  FramePtr frame = DerivationFrame::from_basis(su.algebra, std::move(ad));
  const std::size_t D = su.rank(), m = su.algebra->dim();
  const Vec unit = su.algebra->unit().coeffs();
  std::vector<CEForm> thetas;
  for (std::size_t r = 0; r < D; ++r) {
    Vec flat(D * m);
    for (std::size_t b = 0; b < m; ++b) flat[r * m + b] = unit[b];
    thetas.push_back(CEForm::from_flat(frame, 1, flat));
  }
  Vec theta_flat(D * m);
  for (std::size_t q = 0; q < D; ++q) {
    const Vec& eps = su.epsilons[q].coeffs();
    for (std::size_t b = 0; b < m; ++b) theta_flat[q * m + b] = eps[b];
  }
  ThetaFrame tf{n,
                std::move(su),
                frame,
                std::move(thetas),
                CEForm::from_flat(frame, 1, theta_flat),
                ce_forms_module(frame, 1)};
  // frame invariants: defining relation, centrality, antisymmetry of wedges
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t q = 0; q < D; ++q) {
      Vec expect = (r == q) ? unit : Vec(m);
      if (tf.thetas[r].evaluate_indices({q}) != expect)
        throw InvariantError("theta_frame: defining relation fails");
    }
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t i = 0; i < m; ++i) {
      AlgebraElement a = tf.su.algebra->basis_element(i);
      if (a * tf.thetas[r] != tf.thetas[r] * a)
        throw InvariantError("theta_frame: theta^r is not central");
    }
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t q = 0; q < D; ++q)
      if (wedge(tf.thetas[r], tf.thetas[q]) !=
          Scalar(-1) * wedge(tf.thetas[q], tf.thetas[r]))
        throw InvariantError("theta_frame: theta wedge antisymmetry fails");
  return tf;
}

CheckReport depsilon_check(const ThetaFrame& tf) {
  CheckReport rep;
  const std::size_t D = tf.rank();
  for (std::size_t r = 0; r < D; ++r) {
    CEForm lhs = ce_d(CEForm::from_element(tf.frame, tf.su.epsilons[r]));
    CEForm rhs = CEForm::zero(tf.frame, 1);
    for (std::size_t q = 0; q < D; ++q)
      for (std::size_t s = 0; s < D; ++s) {
        const Scalar& c = tf.c(q, r, s);
        if (c.is_zero()) continue;
        rhs = rhs + (c * tf.su.epsilons[s]) * tf.thetas[q];
      }
    if (lhs != rhs) {
      rep.ok = false;
      rep.detail = "d eps_" + std::to_string(r) + " mismatch";
      return rep;
    }
  }
  rep.detail = "d eps_r = c^s_{qr} eps_s theta^q for all r";
  return rep;
}

CheckReport maurer_cartan_check(const ThetaFrame& tf) {
  CheckReport rep;
  const std::size_t D = tf.rank();
  const Scalar half = Scalar::of(1, 2);
  for (std::size_t r = 0; r < D; ++r) {
    CEForm lhs = ce_d(tf.thetas[r]);
    CEForm rhs = CEForm::zero(tf.frame, 2);
    for (std::size_t q = 0; q < D; ++q)
      for (std::size_t s = 0; s < D; ++s) {
        const Scalar& c = tf.c(q, s, r);
        if (c.is_zero()) continue;
        rhs = rhs - (half * c) * wedge(tf.thetas[q], tf.thetas[s]);
      }
    if (lhs != rhs) {
      rep.ok = false;
      rep.detail = "d theta^" + std::to_string(r) + " mismatch";
      return rep;
    }
  }
  rep.detail = "d theta^r = -1/2 c^r_{qs} theta^q ^ theta^s for all r";
  return rep;
}

ThetaElementReport theta_element_check(const ThetaFrame& tf) {
  ThetaElementReport rep;
  const std::size_t m = tf.su.algebra->dim();
  for (int sign : {+1, -1}) {
    bool all = true;
    for (std::size_t i = 0; i < m && all; ++i) {
      AlgebraElement a = tf.su.algebra->basis_element(i);
      CEForm da = ce_d(CEForm::from_element(tf.frame, a));
      CEForm comm = a * tf.theta - tf.theta * a;
      CEForm rhs = (sign > 0) ? comm : (Scalar(-1) * comm);
      if (da != rhs) all = false;
    }
    if (all) {
      rep.consistent = true;
      rep.sign = sign;
      return rep;
    }
  }
  return rep;
}

std::size_t omega_index(std::size_t D, std::size_t p, std::size_t r, std::size_t q) {
  return (p * D + r) * D + q;
}

ScalarOmega zero_omega(const ThetaFrame& tf) {
  const std::size_t D = tf.rank();
  return ScalarOmega(D * D * D);
}

ScalarOmega ad_proportional_omega(const ThetaFrame& tf, const Scalar& lambda) {
  const std::size_t D = tf.rank();
  ScalarOmega w(D * D * D);
  for (std::size_t p = 0; p < D; ++p)
    for (std::size_t r = 0; r < D; ++r)
      for (std::size_t q = 0; q < D; ++q) w[omega_index(D, p, r, q)] = lambda * tf.c(r, q, p);
  return w;
}

DVConnection scalar_omega_connection(const ThetaFrame& tf, const ScalarOmega& w) {
  const std::size_t D = tf.rank(), m = tf.su.algebra->dim();
  if (w.size() != D * D * D) throw DimensionError("scalar_omega_connection: arity");
  std::vector<Matrix> endos;
  for (std::size_t r = 0; r < D; ++r) {
    Matrix e(D * m, D * m);
    const Matrix& ur = (*tf.frame)[r].action();
    for (std::size_t p = 0; p < D; ++p) {
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) e.at(p * m + a, p * m + b) += ur.at(a, b);
      for (std::size_t q = 0; q < D; ++q) {
        const Scalar& c = w[omega_index(D, p, r, q)];
        if (c.is_zero()) continue;
        for (std::size_t a = 0; a < m; ++a) e.at(q * m + a, p * m + a) += c;
      }
    }
    endos.push_back(std::move(e));
  }
  return DVConnection(tf.frame, tf.omega1, std::move(endos));
}

DVConnection matrix_omega_connection(const ThetaFrame& tf,
                                     const std::vector<AlgebraElement>& w) {
  const std::size_t D = tf.rank(), m = tf.su.algebra->dim();
  if (w.size() != D * D * D) throw DimensionError("matrix_omega_connection: arity");
  std::vector<Matrix> endos;
  for (std::size_t r = 0; r < D; ++r) {
    Matrix e(D * m, D * m);
    const Matrix& ur = (*tf.frame)[r].action();
    for (std::size_t p = 0; p < D; ++p) {
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) e.at(p * m + a, p * m + b) += ur.at(a, b);
      for (std::size_t q = 0; q < D; ++q) {
        // b theta^p -> (b . omega^p_{rq}) theta^q
        Matrix rmul =
            tf.su.algebra->right_mult_matrix(w[omega_index(D, p, r, q)].coeffs());
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b) e.at(q * m + a, p * m + b) += rmul.at(a, b);
      }
    }
    endos.push_back(std::move(e));
  }
  return DVConnection(tf.frame, tf.omega1, std::move(endos));
}

LinearConnectionSpaceReport linear_connection_space(const ThetaFrame& tf,
                                                    bool run_full_system) {
  LinearConnectionSpaceReport rep;
  const auto& alg = tf.su.algebra;
  const std::size_t D = tf.rank(), m = alg->dim();
  // per-component constraint: a w = w a for every basis a
  Matrix comm(m * m, m);
  for (std::size_t i = 0; i < m; ++i) {
    Vec ei(m);
    ei[i] = Scalar(1);
    Matrix d = alg->left_mult_matrix(ei) - alg->right_mult_matrix(ei);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) comm.at(i * m + r, c) = d.at(r, c);
  }
  rep.commutant_dim = kernel(comm).dim();
  rep.model_dim = D * D * D * rep.commutant_dim;
  if (run_full_system) {
    rep.full_system_checked = true;
    // unknowns: omega^p_{rq} in M_n, flat index (omega_index, algebra coeff).
    // Right Leibniz of the left-Leibniz-extended connection:
    //   nabla_r((b theta^p) a) - nabla_r(b theta^p) a - b theta^p u_r(a) = 0
    // which reduces to the commutator constraint rows assembled here from
    // the action tensors, not from the closed-form argument.
    const std::size_t unknowns = D * D * D * m;
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < D; ++r)
      for (std::size_t p = 0; p < D; ++p)
        for (std::size_t i = 0; i < m; ++i)    // right multiplier a = e_i
          for (std::size_t b = 0; b < m; ++b)  // module coefficient e_b
            for (std::size_t q = 0; q < D; ++q) {
              // theta^q coefficient of the violation: (e_b e_i) w^p_{rq}
              // - (e_b w^p_{rq}) e_i ; the u_r terms cancel identically.
              Vec ei(m), eb(m);
              ei[i] = Scalar(1);
              eb[b] = Scalar(1);
              Vec ba = alg->product(eb, ei);
              for (std::size_t t = 0; t < m; ++t) {
                Vec row(unknowns);
                // (ba) w: coefficient of w_j in component t
                Matrix lba = alg->left_mult_matrix(ba);
                for (std::size_t j = 0; j < m; ++j)
                  row[omega_index(D, p, r, q) * m + j] += lba.at(t, j);
                // (b w) a: component t of (e_b w) e_i
                Matrix lb = alg->left_mult_matrix(eb);
                Matrix ra = alg->right_mult_matrix(ei);
                Matrix both = ra * lb;
                for (std::size_t j = 0; j < m; ++j)
                  row[omega_index(D, p, r, q) * m + j] -= both.at(t, j);
                rows.push_back(std::move(row));
              }
            }
    rep.full_system_dim = kernel(Matrix::from_rows(rows)).dim();
    rep.consistent = (rep.full_system_dim == rep.model_dim);
  }
  return rep;
}

TorsionFreeReport torsion_free_solver(const ThetaFrame& tf) {
  TorsionFreeReport rep;
  const std::size_t D = tf.rank();
  // antisymmetrization constraint: w^p_{rq} - w^p_{qr} = -c^p_{rq}
  rep.particular = ad_proportional_omega(tf, Scalar::of(-1, 2));
  for (std::size_t p = 0; p < D; ++p)
    for (std::size_t r = 0; r < D; ++r)
      for (std::size_t q = 0; q < D; ++q) {
        Scalar lhs = rep.particular[omega_index(D, p, r, q)] -
                     rep.particular[omega_index(D, p, q, r)];
        if (lhs != -tf.c(r, q, p))
          throw InvariantError("torsion_free_solver: particular solution mismatch");
      }
  rep.expected_dim = D * (D * (D + 1) / 2);
  // kernel of the antisymmetrization map on scalar coefficients
  {
    std::vector<Vec> rows;
    for (std::size_t p = 0; p < D; ++p)
      for (std::size_t r = 0; r < D; ++r)
        for (std::size_t q = r + 1; q < D; ++q) {
          Vec row(D * D * D);
          row[omega_index(D, p, r, q)] += Scalar(1);
          row[omega_index(D, p, q, r)] -= Scalar(1);
          rows.push_back(std::move(row));
        }
    rep.solution_space_dim = kernel(Matrix::from_rows(rows)).dim();
  }
  // the ad-proportional representative: solve T(lambda c) = 0 for lambda
  {
    Matrix t0 = dv_torsion(scalar_omega_connection(tf, zero_omega(tf)));
    Matrix t1 = dv_torsion(scalar_omega_connection(tf, ad_proportional_omega(tf, Scalar(1))));
    Matrix dir = t1 - t0;  // torsion is affine in omega
    bool found = false;
    Scalar lambda;
    for (std::size_t i = 0; i < dir.rows() && !found; ++i)
      for (std::size_t j = 0; j < dir.cols() && !found; ++j)
        if (!dir.at(i, j).is_zero()) {
          lambda = (Scalar(0) - t0.at(i, j)) / dir.at(i, j);
          found = true;
        }
    if (found) {
      Matrix check = dv_torsion(scalar_omega_connection(tf, ad_proportional_omega(tf, lambda)));
      rep.lambda = lambda;
      rep.lambda_unique = check.is_zero();
    }
  }
  rep.particular_torsion_free =
      dv_torsion(scalar_omega_connection(tf, rep.particular)).is_zero();
  rep.paper_constant_convention_dependent = (rep.lambda != Scalar(-1));
  return rep;
}

}  // namespace ncgeo
