#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncgeo/algebra.hpp"
#include "ncgeo/rng.hpp"

using namespace ncgeo;

namespace {

// Oracle helpers: 2x2 complex matrices represented directly as Matrix, so
// commutator identities can be cross-checked against the structure-tensor
// arithmetic of matrix_algebra(2).
Matrix as_2x2(const AlgebraElement& a) {
  Matrix m(2, 2);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k) m.at(j, k) = a.coeffs()[j * 2 + k];
  return m;
}

AlgebraElement from_2x2(const AlgebraPtr& alg, const Matrix& m) {
  Vec c(4);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k) c[j * 2 + k] = m.at(j, k);
  return alg->element(c);
}

Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

}  // namespace

TEST_CASE("matrix algebra construction") {
  CHECK(matrix_algebra(1)->dim() == 1);
  auto m2 = matrix_algebra(2);
  CHECK(m2->dim() == 4);
  // E12 E21 = E11, E21 E12 = E22
  auto e12 = m2->basis_element(1), e21 = m2->basis_element(2);
  CHECK(e12 * e21 == m2->basis_element(0));
  CHECK(e21 * e12 == m2->basis_element(3));
  CHECK_THROWS_AS(matrix_algebra(0), Error);
}

TEST_CASE("function algebra") {
  CHECK(function_algebra(1)->dim() == 1);
  auto f2 = function_algebra(2);
  CHECK((f2->basis_element(0) * f2->basis_element(1)).is_zero());
  CHECK(f2->basis_element(0) * f2->basis_element(0) == f2->basis_element(0));
  CHECK(derivation_basis(function_algebra(3)).empty());
  CHECK_THROWS_AS(function_algebra(0), Error);
}

TEST_CASE("truncated polynomial algebra") {
  CHECK(truncated_polynomial_algebra(1)->dim() == 1);
  auto t3 = truncated_polynomial_algebra(3);
  auto x = t3->basis_element(1), x2 = t3->basis_element(2);
  CHECK((x * x2).is_zero());
  CHECK(x * x == x2);
  auto ders = derivation_basis(t3);
  CHECK(ders.size() == 2);
  // every solution satisfies u(1) = 0 and u(x^2) = 2x u(x)
  for (const auto& u : ders) {
    CHECK(u.apply(t3->unit()).is_zero());
    CHECK(u.apply(x2) == Scalar(2) * (x * u.apply(x)));
  }
}

TEST_CASE("centre computations") {
  auto f3 = function_algebra(3);
  CHECK(centre_basis(f3).size() == 3);
  auto m2 = matrix_algebra(2);
  auto z = centre_basis(m2);
  REQUIRE(z.size() == 1);
  // spans the unit
  CHECK(!(z[0] * m2->basis_element(1) - m2->basis_element(1) * z[0]).is_zero() == false);
  auto sum = direct_sum(matrix_algebra(2), matrix_algebra(2));
  CHECK(centre_basis(sum).size() == 2);
}

TEST_CASE("derivation basis dimensions") {
  CHECK(derivation_basis(matrix_algebra(2)).size() == 3);
  CHECK(derivation_basis(matrix_algebra(3)).size() == 8);
  CHECK(derivation_basis(function_algebra(3)).empty());
  CHECK(derivation_basis(truncated_polynomial_algebra(3)).size() == 2);
}

TEST_CASE("derivations satisfy Leibniz and close under bracket") {
  for (auto alg : {matrix_algebra(2), truncated_polynomial_algebra(3)}) {
    auto ders = derivation_basis(alg);
    // span closure under lie_bracket, checked by membership
    std::vector<Vec> flat;
    for (const auto& u : ders) flat.push_back(flatten(u.action()));
    Subspace span = Subspace::span(alg->dim() * alg->dim(), flat);
    for (const auto& u : ders)
      for (const auto& v : ders)
        CHECK(span.contains(flatten(lie_bracket(u, v).action())));
  }
}

TEST_CASE("lie bracket identities") {
  auto su = su_basis(2);
  auto m2 = su.algebra;
  Derivation adF = inner_derivation(su.epsilons[0]);
  Derivation adG = inner_derivation(su.epsilons[1]);
  Derivation adH = inner_derivation(su.epsilons[2]);
  CHECK(lie_bracket(adF, adF).is_zero());
  // oracle: [F,G] = 2H by direct 2x2 matrix commutator
  Matrix F = as_2x2(su.epsilons[0]), G = as_2x2(su.epsilons[1]);
  Matrix comm = F * G - G * F;
  CHECK(comm == Scalar(2) * as_2x2(su.epsilons[2]));
  CHECK(lie_bracket(adF, adG) == Scalar(2) * adH);
  // Jacobi on derivation triples
  auto ders = derivation_basis(m2);
  for (const auto& u : ders)
    for (const auto& v : ders)
      for (const auto& w : ders) {
        Derivation j = lie_bracket(lie_bracket(u, v), w) +
                       lie_bracket(lie_bracket(v, w), u) +
                       lie_bracket(lie_bracket(w, u), v);
        CHECK(j.is_zero());
      }
}

TEST_CASE("inner derivations") {
  auto m2 = matrix_algebra(2);
  CHECK(inner_derivation(m2->unit()).is_zero());
  auto e11 = m2->basis_element(0), e12 = m2->basis_element(1);
  // oracle: E11 E12 - E12 E11 = E12
  Matrix lhs = as_2x2(e11) * as_2x2(e12) - as_2x2(e12) * as_2x2(e11);
  CHECK(from_2x2(m2, lhs) == e12);
  CHECK(inner_derivation(e11).apply(e12) == e12);
  for (const auto& z : centre_basis(m2)) CHECK(inner_derivation(z).is_zero());
}

TEST_CASE("derivation involution") {
  auto su = su_basis(2);
  for (const auto& eps : su.epsilons) {
    Derivation u = inner_derivation(eps);
    CHECK(derivation_involution(u) == u);  // ad of anti-Hermitian is self-adjoint
  }
  auto m2 = su.algebra;
  Derivation zero(m2, Matrix::zero(4, 4), false);
  CHECK(derivation_involution(zero).is_zero());
  for (const auto& u : derivation_basis(m2))
    CHECK(derivation_involution(derivation_involution(u)) == u);
  // [u,v]* = [u*, v*]
  auto ders = derivation_basis(m2);
  for (const auto& u : ders)
    for (const auto& v : ders)
      CHECK(derivation_involution(lie_bracket(u, v)) ==
            lie_bracket(derivation_involution(u), derivation_involution(v)));
}

TEST_CASE("su basis structure") {
  auto su2 = su_basis(2);
  REQUIRE(su2.rank() == 3);
  // [F,G] = 2H
  CHECK(su2.c[0][1] == Vec{Scalar(0), Scalar(0), Scalar(2)});
  // entries lie in Z[i]
  for (const auto& e : su2.epsilons)
    for (const auto& s : e.coeffs()) {
      CHECK(s.re().get_den() == 1);
      CHECK(s.im().get_den() == 1);
    }
  // antisymmetry for all indices, n = 2 and 3
  for (std::size_t n : {std::size_t(2), std::size_t(3)}) {
    auto su = su_basis(n);
    const std::size_t d = su.rank();
    REQUIRE(d == n * n - 1);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t q = 0; q < d; ++q)
        for (std::size_t s = 0; s < d; ++s)
          CHECK(su.structure(r, q, s) == -su.structure(q, r, s));
    // Jacobi identity on structure constants
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t q = 0; q < d; ++q)
        for (std::size_t s = 0; s < d; ++s)
          for (std::size_t t = 0; t < d; ++t) {
            Scalar acc;
            for (std::size_t mm = 0; mm < d; ++mm) {
              acc += su.structure(r, q, mm) * su.structure(mm, s, t);
              acc += su.structure(q, s, mm) * su.structure(mm, r, t);
              acc += su.structure(s, r, mm) * su.structure(mm, q, t);
            }
            CHECK(acc.is_zero());
          }
  }
  CHECK_THROWS_AS(su_basis(1), Error);
}

TEST_CASE("ad eps span equals derivation module of M_n") {
  for (std::size_t n : {std::size_t(2), std::size_t(3)}) {
    auto su = su_basis(n);
    std::vector<Vec> ad_flat, der_flat;
    for (const auto& e : su.epsilons) ad_flat.push_back(flatten(inner_derivation(e).action()));
    for (const auto& u : derivation_basis(su.algebra)) der_flat.push_back(flatten(u.action()));
    const std::size_t amb = su.algebra->dim() * su.algebra->dim();
    CHECK(Subspace::span(amb, ad_flat) == Subspace::span(amb, der_flat));
  }
}

TEST_CASE("centre is stable under derivations") {
  for (auto alg : {matrix_algebra(2), truncated_polynomial_algebra(3),
                   direct_sum(function_algebra(2), matrix_algebra(2))}) {
    auto zs = centre_basis(alg);
    std::vector<Vec> zvecs;
    for (const auto& z : zs) zvecs.push_back(z.coeffs());
    Subspace zspan = Subspace::span(alg->dim(), zvecs);
    for (const auto& u : derivation_basis(alg))
      for (const auto& z : zs) CHECK(zspan.contains(u.apply(z).coeffs()));
  }
}

TEST_CASE("bracket is centre-linear: [u, z v] = u(z) v + z [u, v]") {
  for (auto alg : {matrix_algebra(2), truncated_polynomial_algebra(3)}) {
    auto ders = derivation_basis(alg);
    for (const auto& z : centre_basis(alg))
      for (const auto& u : ders)
        for (const auto& v : ders) {
          Derivation lhs = lie_bracket(u, z * v);
          Derivation rhs = u.apply(z) * v + z * lie_bracket(u, v);
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("algebra validation rejects broken structures") {
  // non-associative table: e1 e1 = e2, e2 anything = 0, but unit present
  std::vector<std::vector<Vec>> table(2, std::vector<Vec>(2, Vec(2)));
  // no unit at all -> unit law must fail
  CHECK_THROWS_AS(FiniteAlgebra::create("bad", table, Vec{Scalar(1), Scalar(0)}),
                  InvariantError);
}

TEST_CASE("involution axioms hold for shipped algebras") {
  for (auto alg : {matrix_algebra(2), function_algebra(3), truncated_polynomial_algebra(3)}) {
    REQUIRE(alg->has_involution());
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
      Vec a(alg->dim()), b(alg->dim());
      for (auto& x : a) x = rng.small_scalar();
      for (auto& x : b) x = rng.small_scalar();
      auto ea = alg->element(a), eb = alg->element(b);
      CHECK((ea * eb).involution() == eb.involution() * ea.involution());
      CHECK(ea.involution().involution() == ea);
    }
  }
}
