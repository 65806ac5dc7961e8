#include <gtest/gtest.h>

#include <random>

#include "mgk/error.hpp"
#include "mgk/groebner.hpp"
#include "mgk/matrix.hpp"
#include "mgk/polynomial.hpp"
#include "mgk/rational.hpp"
#include "support.hpp"

using namespace mgk;
using mgk::testing::q;

TEST(rational, parse_and_print) {
  EXPECT_EQ(q("6/4").str(), "3/2");
  EXPECT_EQ(q(" -2/4 ").str(), "-1/2");
  EXPECT_EQ(q("7").str(), "7");
  EXPECT_EQ(q("4/2").str(), "2");
  EXPECT_THROW(q("1/0"), InputError);
  EXPECT_THROW(q("abc"), InputError);
  EXPECT_THROW(q(""), InputError);
  EXPECT_THROW(q("1/2/3"), InputError);
  EXPECT_THROW(q("0.5"), InputError);
}

TEST(rational, floor_and_division) {
  EXPECT_EQ(q("5/3").floor(), 1);
  EXPECT_EQ(q("-1/2").floor(), -1);
  EXPECT_EQ(q("2").floor(), 2);
  EXPECT_THROW(q("1") / q("0"), PreconditionError);
  EXPECT_THROW(q("0").inverse(), PreconditionError);
}

TEST(rational, field_axioms) {
  auto& g = mgk::testing::rng();
  for (int i = 0; i < 500; ++i) {
    Rational a = mgk::testing::random_rational(g), b = mgk::testing::random_rational(g),
             c = mgk::testing::random_rational(g);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + Rational(0), a);
    EXPECT_EQ(a * Rational(1), a);
    EXPECT_TRUE((a - a).is_zero());
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Rational(1));
    EXPECT_TRUE(Rational(a.floor()) <= a && a < Rational(a.floor()) + Rational(1));
  }
}

TEST(matrix, kernel_rank_solve) {
  Matrix m{{1, 2}, {2, 4}};
  auto k = kernel(m);
  ASSERT_EQ(k.size(), 1u);
  // span{(-2, 1)}
  EXPECT_EQ(k[0][0] * Rational(1), k[0][1] * Rational(-2));
  EXPECT_EQ(rank(Matrix::identity(3)), 3u);
  auto x = solve(Matrix{{2}}, Vector{Rational(1)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], q("1/2"));
  EXPECT_FALSE(solve(Matrix{{0}}, Vector{Rational(1)}));
}

TEST(matrix, rank_matches_oracle) {
  auto& g = mgk::testing::rng();
  std::uniform_int_distribution<int> dim(1, 6), coin(0, 3);
  for (int t = 0; t < 60; ++t) {
    const std::size_t r = dim(g), c = dim(g);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = coin(g) == 0 ? Rational(0) : mgk::testing::random_rational(g, 3);
    if (r > 1 && coin(g) == 0)
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * q("-3/2");
    const std::size_t expected = mgk::testing::oracle_rank(mgk::testing::rows_of(m));
    EXPECT_EQ(rank(m), expected);
    EXPECT_EQ(kernel(m).size(), c - expected);
    std::vector<SparseRow> sparse;
    for (std::size_t i = 0; i < r; ++i) {
      SparseRow row;
      for (std::size_t j = 0; j < c; ++j)
        if (!m(i, j).is_zero()) row.emplace_back(j, m(i, j));
      sparse.push_back(row);
    }
    EXPECT_EQ(sparse_rank(sparse), expected);
    if (r == c) {
      EXPECT_EQ(determinant(m).is_zero(), expected < r);
      if (auto inv = inverse(m)) EXPECT_TRUE((m * *inv).is_identity());
    }
  }
}

TEST(matrix, nilpotent_and_commute) {
  EXPECT_TRUE(is_nilpotent(Matrix{{0, 0}, {1, 0}}));
  EXPECT_FALSE(is_nilpotent(Matrix{{0, 1}, {1, 0}}));
  EXPECT_TRUE(commute(Matrix{{1, 2}, {0, 1}}, Matrix{{3, 5}, {0, 3}}));
  EXPECT_FALSE(commute(Matrix{{0, 1}, {0, 0}}, Matrix{{0, 0}, {1, 0}}));
  Matrix a{{1, 2}, {3, 4}};
  EXPECT_EQ(kron(Matrix::identity(1), a), a);
  EXPECT_EQ(kron(a, Matrix::identity(2)).rows(), 4u);
}

namespace {

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

}  // namespace

TEST(groebner, reduced_examples) {
  const auto v1 = var(2, 0), v2 = var(2, 1);
  auto gb = buchberger({v1 * v1, v1 * v2});
  ASSERT_EQ(gb.gens.size(), 2u);
  EXPECT_TRUE(in_ideal(v1 * v1, gb));
  EXPECT_TRUE(in_ideal(v1 * v2, gb));
  EXPECT_FALSE(in_ideal(v2 * v2, gb));

  auto gb2 = buchberger({v1 + v2, v1 * v1});
  ASSERT_EQ(gb2.gens.size(), 2u);
  EXPECT_EQ(gb2.gens[0], v1 + v2);
  EXPECT_EQ(gb2.gens[1], v2 * v2);
  EXPECT_TRUE(normal_form(v1 * v1, gb2).is_zero());
  EXPECT_EQ(normal_form(v2, gb2), v2);
  auto sm = standard_monomials(gb2);
  ASSERT_TRUE(sm);
  EXPECT_EQ(*sm, (std::vector<Monomial>{{0, 0}, {0, 1}}));

  auto unit = buchberger({Polynomial::constant(2, Rational(1))});
  EXPECT_TRUE(unit.is_unit_ideal());
  EXPECT_TRUE(normal_form(v1 * v2 + v1, unit).is_zero());

  EXPECT_FALSE(standard_monomials(buchberger({v1 * v1})));
  auto sm3 = standard_monomials(buchberger({v1, v2}));
  ASSERT_TRUE(sm3);
  EXPECT_EQ(sm3->size(), 1u);
}

TEST(groebner, budget_is_enforced) {
  const auto x = var(3, 0), y = var(3, 1), z = var(3, 2);
  EXPECT_THROW(buchberger({x * x * y - z * z, y * y * z - x * x, z * z * x - y * y}, 5), ComputationError);
}

namespace {

Polynomial random_homogeneous(std::mt19937& g, std::size_t n, int d) {
  Polynomial p(n);
  std::uniform_int_distribution<int> coin(0, 2);
  for (const auto& m : monomials_of_degree(n, d))
    if (coin(g) == 0) p.add_term(m, mgk::testing::random_rational(g, 4));
  if (p.is_zero()) p.add_term(monomials_of_degree(n, d).back(), Rational(1));
  return p;
}

// Membership in the degree-d part of a homogeneous ideal by spanning
// monomial multiples of the generators.
bool oracle_member(const std::vector<Polynomial>& gens, const Polynomial& p, std::size_t n, int d) {
  const auto basis = monomials_of_degree(n, d);
  std::vector<std::vector<Rational>> rows;
  for (const auto& f : gens) {
    if (f.degree() > d) continue;
    for (const auto& m : monomials_of_degree(n, d - f.degree())) {
      Polynomial h = f.times_monomial(m, Rational(1));
      std::vector<Rational> row;
      for (const auto& b : basis) row.push_back(h.coeff(b));
      rows.push_back(row);
    }
  }
  const std::size_t r = mgk::testing::oracle_rank(rows);
  std::vector<Rational> prow;
  for (const auto& b : basis) prow.push_back(p.coeff(b));
  rows.push_back(prow);
  return mgk::testing::oracle_rank(rows) == r;
}

}  // namespace

TEST(groebner, membership_agrees_with_linear_algebra) {
  std::mt19937 g(4242);
  std::uniform_int_distribution<int> nv(1, 3), ng(1, 3), dg(1, 3);
  int members = 0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = nv(g);
    std::vector<Polynomial> gens;
    for (int i = ng(g); i > 0; --i) gens.push_back(random_homogeneous(g, n, dg(g)));
    GroebnerBasis gb = buchberger(gens);
    for (int d = 1; d <= 6; ++d) {
      // A random element of the ideal and a random polynomial of degree d.
      Polynomial inside(n);
      for (const auto& f : gens)
        if (f.degree() <= d) inside += f * random_homogeneous(g, n, d - f.degree());
      for (const Polynomial& p : {inside, random_homogeneous(g, n, d)}) {
        bool expected = oracle_member(gens, p, n, d);
        members += expected;
        EXPECT_EQ(in_ideal(p, gb), expected) << "degree " << d << " in " << n << " variables";
      }
    }
  }
  EXPECT_GT(members, 40);
}

TEST(groebner, division_invariant) {
  std::mt19937 g(777);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 2;
    std::vector<Polynomial> gens{random_homogeneous(g, n, 2), random_homogeneous(g, n, 2)};
    gens.push_back(random_homogeneous(g, n, 1) + Polynomial::constant(n, Rational(t % 3)));
    GroebnerBasis gb = buchberger(gens);
    Polynomial p = random_homogeneous(g, n, 3) + random_homogeneous(g, n, 1);
    Polynomial f = random_homogeneous(g, n, 2);
    EXPECT_EQ(normal_form(p * f, gb), normal_form(normal_form(p, gb) * f, gb));
    EXPECT_EQ(normal_form(normal_form(p, gb), gb), normal_form(p, gb));
  }
}

TEST(polynomial, substitute_and_order) {
  const auto v1 = var(2, 0), v2 = var(2, 1);
  Matrix swap{{0, 1}, {1, 0}};
  EXPECT_EQ((v1 * v1 + v2).substitute(swap), v2 * v2 + v1);
  EXPECT_TRUE(grevlex_less({0, 1}, {1, 0}));
  EXPECT_TRUE(grevlex_less({2, 0}, {1, 2}));
  EXPECT_EQ(monomials_of_degree(3, 2).size(), 6u);
  EXPECT_EQ(monomial_string({2, 1}), "v1^2*v2");
  EXPECT_EQ((v1 + v2).pow(2), v1 * v1 + v1 * v2 * Rational(2) + v2 * v2);
}
