#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncgeo/matrix.hpp"
#include "ncgeo/rng.hpp"

using namespace ncgeo;

namespace {

Scalar I() { return Scalar::i(); }

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.small_scalar();
  return m;
}

}  // namespace

TEST_CASE("scalar field arithmetic") {
  Scalar a = Scalar::of(1, 3) + I() * Scalar::of(1, 2);
  Scalar b = a.inverse();
  CHECK(a * b == Scalar(1));
  CHECK((a - a).is_zero());
  CHECK(Scalar::of(2, 6) == Scalar::of(1, 3));
  CHECK((I() * I()) == Scalar(-1));
  CHECK(a.conj().conj() == a);
  CHECK_THROWS_AS(Scalar(0).inverse(), SingularError);
}

TEST_CASE("scalar parse round trip") {
  for (const char* t : {"0", "1", "-3/2", "i", "-i", "2i", "1/2-3/4i", "-1+i", "5/7+2/3i"}) {
    Scalar s = Scalar::parse(t);
    CHECK(Scalar::parse(s.str()) == s);
  }
  CHECK(Scalar::parse("1+1i") == Scalar(1) + I());
  CHECK_THROWS_AS(Scalar::parse("x"), Error);
  CHECK_THROWS_AS(Scalar::parse("1+"), Error);
}

TEST_CASE("rref: scaling to identity") {
  Matrix m{{Scalar(2), Scalar(0)}, {Scalar(0), Scalar(2)}};
  CHECK(rref(m) == Matrix::identity(2));
}

TEST_CASE("rref: rank-1 dependency") {
  Matrix m{{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}};
  Matrix expected{{Scalar(1), Scalar(2)}, {Scalar(0), Scalar(0)}};
  CHECK(rref(m) == expected);
}

TEST_CASE("rref: row swap and scale by -i") {
  Matrix m{{Scalar(0), I()}, {Scalar(1), Scalar(0)}};
  CHECK(rref(m) == Matrix::identity(2));
}

TEST_CASE("rref preserves row space (mutual membership)") {
  Rng rng(7);
  for (int iter = 0; iter < 25; ++iter) {
    std::size_t rows = 1 + rng.below(5), cols = 1 + rng.below(5);
    Matrix m = random_matrix(rng, rows, cols);
    Matrix r = rref(m);
    Subspace s1 = Subspace::row_space(m);
    Subspace s2 = Subspace::row_space(r);
    CHECK(s1.contains(s2));
    CHECK(s2.contains(s1));
  }
}

TEST_CASE("kernel examples") {
  CHECK(kernel(Matrix::identity(3)).dim() == 0);
  CHECK(kernel(Matrix::zero(2, 2)) == Subspace::full(2));
  Matrix row{{Scalar(1), Scalar(1)}};
  Subspace k = kernel(row);
  CHECK(k.dim() == 1);
  CHECK(k.contains(Vec{Scalar(1), Scalar(-1)}));
}

TEST_CASE("rank-nullity holds exactly") {
  Rng rng(11);
  for (int iter = 0; iter < 25; ++iter) {
    std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(6);
    Matrix m = random_matrix(rng, rows, cols);
    CHECK(rank(m) + kernel(m).dim() == cols);
    // kernel vectors are annihilated
    Subspace k = kernel(m);
    for (std::size_t i = 0; i < k.dim(); ++i) CHECK(is_zero(m.apply(k.basis().row(i))));
  }
}

TEST_CASE("quotient examples") {
  SUBCASE("kill first coordinate of K^2") {
    Subspace s = Subspace::span(2, {{Scalar(1), Scalar(0)}});
    QuotientMap q = quotient(2, s);
    CHECK(q.dim() == 1);
    CHECK(q.project(Vec{Scalar(5), Scalar(7)}) == Vec{Scalar(7)});
    CHECK(is_zero(q.project(Vec{Scalar(3), Scalar(0)})));
  }
  SUBCASE("identity quotient") {
    QuotientMap q = quotient(4, Subspace::zero(4));
    CHECK(q.dim() == 4);
    Vec v{Scalar(1), Scalar(2), Scalar(3), Scalar(4)};
    CHECK(q.project(v) == v);
  }
  SUBCASE("span{(1,1,0)} in K^3") {
    Subspace s = Subspace::span(3, {{Scalar(1), Scalar(1), Scalar(0)}});
    QuotientMap q = quotient(3, s);
    CHECK(q.dim() == 2);
    CHECK(is_zero(q.project(Vec{Scalar(1), Scalar(1), Scalar(0)})));
  }
  SUBCASE("dimension mismatch rejected") {
    CHECK_THROWS_AS(quotient(3, Subspace::zero(2)), DimensionError);
  }
}

TEST_CASE("quotient round trip and section identities") {
  Rng rng(13);
  for (int iter = 0; iter < 20; ++iter) {
    std::size_t ambient = 2 + rng.below(5);
    std::vector<Vec> gens;
    std::size_t g = rng.below(ambient);
    for (std::size_t k = 0; k < g; ++k) {
      Vec v(ambient);
      for (auto& x : v) x = rng.small_scalar();
      gens.push_back(v);
    }
    Subspace s = Subspace::span(ambient, gens);
    QuotientMap q = quotient(ambient, s);
    CHECK(q.dim() == ambient - s.dim());
    CHECK(q.projection() * q.section() == Matrix::identity(q.dim()));
    // projection annihilates exactly the kernel
    for (std::size_t k = 0; k < s.dim(); ++k)
      CHECK(is_zero(q.project(s.basis().row(k))));
    for (int t = 0; t < 5; ++t) {
      Vec v(ambient);
      for (auto& x : v) x = rng.small_scalar();
      Vec residue = v - q.lift(q.project(v));
      CHECK(s.contains(residue));
      CHECK(is_zero(q.project(residue)));
    }
  }
}

TEST_CASE("solve examples") {
  CHECK(*solve(Matrix::identity(2), Vec{Scalar(3), Scalar(4)}) == Vec{Scalar(3), Scalar(4)});

  Matrix wide{{Scalar(1), Scalar(1)}};
  auto x = solve(wide, Vec{Scalar(2)});
  REQUIRE(x.has_value());
  CHECK(wide.apply(*x) == Vec{Scalar(2)});

  Matrix tall{{Scalar(1)}, {Scalar(1)}};
  CHECK(!solve(tall, Vec{Scalar(0), Scalar(1)}).has_value());

  CHECK_THROWS_AS(solve(tall, Vec{Scalar(1)}), DimensionError);
}

TEST_CASE("solve on random consistent systems") {
  Rng rng(17);
  for (int iter = 0; iter < 25; ++iter) {
    std::size_t rows = 1 + rng.below(5), cols = 1 + rng.below(5);
    Matrix m = random_matrix(rng, rows, cols);
    Vec x0(cols);
    for (auto& x : x0) x = rng.small_scalar();
    Vec b = m.apply(x0);
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
  }
}

TEST_CASE("inverse") {
  Rng rng(23);
  for (int iter = 0; iter < 10; ++iter) {
    Matrix m = random_matrix(rng, 3, 3);
    if (rank(m) < 3) continue;
    CHECK(m * inverse(m) == Matrix::identity(3));
    CHECK(inverse(m) * m == Matrix::identity(3));
  }
  Matrix sing{{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}};
  CHECK_THROWS_AS(inverse(sing), SingularError);
}

TEST_CASE("subspace canonical form equality") {
  // Same space, different spanning sets: identical basis matrices.
  Subspace a = Subspace::span(3, {{Scalar(1), Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(1)}});
  Subspace b = Subspace::span(3, {{Scalar(1), Scalar(2), Scalar(1)}, {Scalar(2), Scalar(3), Scalar(1)}});
  CHECK(a == b);
  CHECK(a.basis() == b.basis());
}
