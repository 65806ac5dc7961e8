#include <gtest/gtest.h>

#include <algorithm>

#include "mgk/error.hpp"
#include "mgk/gamma.hpp"
#include "support.hpp"

using namespace mgk;
using mgk::testing::q;
using mgk::testing::qv;

namespace {

MatrixGroup group(const std::string& preset, int rank) {
  return weyl_group(build_root_datum({preset, rank, {}, {}}));
}

GammaData gl(int n, const Rational& c, std::vector<IntVector> lambdas = {}) {
  if (lambdas.empty())
    for (int i = 0; i < n; ++i) {
      IntVector e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(i)] = 1;
      lambdas.push_back(e);
    }
  return make_gamma_data(group("GL", n), lambdas, c, IntVector(static_cast<std::size_t>(n), 1));
}

bool flags_equal(const KeyPropReport& a, const KeyPropReport& b) {
  return a.passed == b.passed && a.convolution.iso_ok == b.convolution.iso_ok &&
         a.convolution.equivariance_ok == b.convolution.equivariance_ok &&
         a.convolution.eta_independent == b.convolution.eta_independent;
}

}  // namespace

TEST(gamma, exponent_decomposition) {
  auto d = decompose_exponent({1}, qv({"5/3"}));
  EXPECT_EQ(d.a, q("2/3"));
  EXPECT_EQ(d.n, 1);
  d = decompose_exponent({1}, qv({"-1/2"}));
  EXPECT_EQ(d.a, q("1/2"));
  EXPECT_EQ(d.n, -1);
  d = decompose_exponent({1, 1}, qv({"1", "1"}));
  EXPECT_EQ(d.a, q("0"));
  EXPECT_EQ(d.n, 2);
}

TEST(gamma, data_validation) {
  auto w = group("GL", 2);
  EXPECT_THROW(make_gamma_data(w, {{1, 0}, {0, 1}}, Rational(0), {1, 1}), InputError);
  EXPECT_THROW(make_gamma_data(w, {{1, 0}}, Rational(1), {1, 1}), InputError);
  EXPECT_THROW(make_gamma_data(w, {{1, 0}, {0, 1}}, Rational(1), {1, -1}), InputError);
  EXPECT_NO_THROW(make_gamma_data(w, {{1, 0}, {0, 1}}, Rational(1), {1, 1}));
}

TEST(gamma, single_reduction_tables) {
  auto k = kummer_module(TorusPoint{qv({"0"})});
  auto r = gamma_reduce_single({1}, Rational(1), k);
  EXPECT_EQ(r.exponent.n, 0);
  EXPECT_TRUE(r.spectral_ok);
  // x e (x) 1 = e (x) (N - 0) 1 = 0
  EXPECT_TRUE(r.table.at(1).is_zero());
  // x^{-1} e (x) 1 = e (x) c (N + 1)^{-1} 1
  EXPECT_EQ(r.table.at(-1), (Matrix{{1}}));

  auto u = unipotent_module(TorusPoint{qv({"0"})}, 2).module;
  auto ru = gamma_reduce_single({1}, Rational(1), u);
  EXPECT_EQ(ru.table.at(1), u.nu[0]);
  EXPECT_EQ(ru.table.at(0), Matrix::identity(2));
  EXPECT_EQ(ru.table.at(-1), *inverse(u.nu[0].shifted(Rational(1))));

  EXPECT_THROW(gamma_reduce_single({1}, Rational(0), k), PreconditionError);
}

TEST(gamma, exponent_shift_relation) {
  // x^{k+1} e (x) w = c^{-1} x^k e (x) (a - k) w, replayed on random data
  auto& g = mgk::testing::rng();
  for (int t = 0; t < 20; ++t) {
    Rational c = mgk::testing::random_rational(g, 5);
    if (c.is_zero()) c = Rational(2);
    Matrix a{{q("1/3"), Rational(t % 3)}, {Rational(0), q("1/3")}};
    for (long k = -3; k <= 3; ++k) {
      EXPECT_EQ(exponent_shift(a, c, k + 1, k), a.shifted(Rational(-k)) * c.inverse());
      EXPECT_TRUE((exponent_shift(a, c, k, k + 1) * exponent_shift(a, c, k + 1, k)).is_identity());
      EXPECT_EQ(exponent_shift(a, c, k + 2, k), exponent_shift(a, c, k + 1, k) * exponent_shift(a, c, k + 2, k + 1));
    }
  }
  EXPECT_THROW(exponent_shift(Matrix{{0}}, Rational(1), 0, 1), ComputationError);
}

TEST(gamma, key_prop_gl2) {
  auto rep = check_key_prop(gl(2, Rational(1)), TorusPoint{qv({"0", "0"})});
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.stabilizer_order, 2u);
  EXPECT_EQ(rep.fiber_dim, 2u);
  EXPECT_EQ(rep.convolution.lifts_checked, 2u);
  // transported swap equals the original swap on the coinvariant fiber
  auto e = e_xi_module(group("GL", 2), TorusPoint{qv({"0", "0"})});
  for (std::size_t a = 0; a < e.structure.group.order(); ++a)
    EXPECT_EQ(rep.convolution.transported_u[a][0].block, e.structure.u[a]);

  auto free = check_key_prop(gl(2, Rational(1)), TorusPoint{qv({"1/3", "2/3"})});
  EXPECT_TRUE(free.passed);
  EXPECT_EQ(free.stabilizer_order, 1u);
}

TEST(gamma, repeated_family_has_four_lifts_per_element) {
  auto g = gl(2, Rational(1), {{1, 0}, {1, 0}, {0, 1}, {0, 1}});
  auto rep = check_key_prop(g, TorusPoint{qv({"0", "0"})});
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.convolution.lifts_checked, 8u);
  EXPECT_TRUE(rep.convolution.eta_independent);
}

TEST(gamma, signed_convention_is_reported) {
  GammaOptions opts;
  opts.convention = Convention::kSigned;
  auto g = gl(2, Rational(1), {{1, 0}, {1, 0}, {0, 1}, {0, 1}});
  auto rep = check_key_prop(g, TorusPoint{qv({"0", "0"})}, opts);
  EXPECT_FALSE(rep.convolution.eta_independent);
  EXPECT_FALSE(rep.convolution.diagnostics.empty());
  EXPECT_TRUE(rep.convolution.iso_ok);
  EXPECT_EQ(to_string(Convention::kSigned), "signed");
}

TEST(gamma, order_independence) {
  const std::vector<IntVector> base{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto e = e_xi_module(group("GL", 3), TorusPoint{qv({"0", "0", "1/2"})});
  std::vector<IntVector> perm = base;
  auto ref = gamma_convolve(gl(3, Rational(1), base), e.module, e.structure);
  while (std::next_permutation(perm.begin(), perm.end())) {
    auto r = gamma_convolve(gl(3, Rational(1), perm), e.module, e.structure);
    EXPECT_EQ(r.kappa_reference, ref.kappa_reference);
    ASSERT_EQ(r.transported_u.size(), ref.transported_u.size());
    for (std::size_t a = 0; a < r.transported_u.size(); ++a)
      EXPECT_EQ(r.transported_u[a][0].block, ref.transported_u[a][0].block);
    EXPECT_EQ(r.passed(), ref.passed());
  }
}

TEST(gamma, stability_in_c) {
  for (const auto& xi : {qv({"0", "0"}), qv({"1/2", "1/2"}), qv({"1/3", "2/3"})}) {
    auto ref = check_key_prop(gl(2, Rational(1)), TorusPoint{xi});
    for (const char* c : {"2", "-1", "1/3"}) EXPECT_TRUE(flags_equal(ref, check_key_prop(gl(2, q(c)), TorusPoint{xi})));
  }
}

TEST(gamma, reductions_only_invert_nonsingular_operators) {
  auto w = group("GL", 3);
  for (const auto& xi : {qv({"0", "0", "0"}), qv({"0", "0", "1/2"}), qv({"1/3", "1/3", "1/3"}), qv({"-5/2", "7/3", "1"})}) {
    auto e = e_xi_module(w, TorusPoint{xi});
    for (const IntVector& l : std::vector<IntVector>{{1, 0, 0}, {0, 1, 0}, {1, 1, 1}, {2, 0, 1}}) {
      auto red = gamma_reduce_single(l, Rational(1), e.module, 4);
      EXPECT_TRUE(red.spectral_ok);
      const Matrix a = e.module.nu_of(l);
      for (long k = red.exponent.n - 4; k < red.exponent.n; ++k)
        EXPECT_FALSE(determinant(a.shifted(Rational(-k))).is_zero());
    }
  }
}

TEST(gamma, structure_must_fix_the_coset) {
  auto w = group("GL", 2);
  auto k = kummer_module(TorusPoint{qv({"1/3", "2/3"})});
  EquivariantStructure s{w, {Matrix::identity(1), Matrix::identity(1)}};
  EXPECT_THROW(gamma_convolve(gl(2, Rational(1)), k, s), PreconditionError);
}

TEST(gamma, unipotent_tower_and_e_theta) {
  auto tower = check_unipotent_tower(gl(2, Rational(1)), TorusPoint{qv({"1/2", "1/2"})}, 4);
  EXPECT_TRUE(tower.passed);
  ASSERT_EQ(tower.levels.size(), 4u);
  EXPECT_EQ(tower.levels[3].dim, 10u);
  EXPECT_THROW(check_unipotent_tower(gl(2, Rational(1)), TorusPoint{qv({"0", "0"})}, 0), PreconditionError);

  auto et = check_e_theta(gl(3, Rational(1)), TorusPoint{qv({"0", "0", "1/2"})});
  EXPECT_TRUE(et.passed);
  EXPECT_EQ(et.components, 3u);
  EXPECT_EQ(et.total_dim, 6u);
}
