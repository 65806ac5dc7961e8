#include <gtest/gtest.h>

#include <random>

#include "mgk/error.hpp"
#include "mgk/mellin.hpp"
#include "support.hpp"

using namespace mgk;
using mgk::testing::q;
using mgk::testing::qv;

namespace {

MatrixGroup group(const std::string& preset, int rank) {
  return weyl_group(build_root_datum({preset, rank, {}, {}}));
}

TorusPoint pt(std::initializer_list<const char*> xs) { return TorusPoint{qv(xs)}; }

using mgk::testing::all_zero;
using mgk::testing::random_module;

}  // namespace

TEST(mellin, kummer_modules) {
  auto k = kummer_module(pt({"1/3", "2/3"}));
  EXPECT_EQ(k.dim(), 1u);
  EXPECT_EQ(k.nu[0], (Matrix{{q("1/3")}}));
  EXPECT_EQ(k.nu[1], (Matrix{{q("2/3")}}));
  EXPECT_EQ(kummer_module(pt({"0"})).nu[0], (Matrix{{0}}));
  EXPECT_TRUE(module_violations(k).empty());
}

TEST(mellin, unipotent_modules) {
  auto u = unipotent_module(pt({"0"}), 2);
  EXPECT_EQ(u.module.nu[0], (Matrix{{0, 0}, {1, 0}}));
  auto one = unipotent_module(pt({"1/2"}), 1);
  EXPECT_EQ(one.module.nu[0], (Matrix{{q("1/2")}}));
  auto two = unipotent_module(pt({"0", "0"}), 2);
  EXPECT_EQ(two.module.dim(), 3u);
  EXPECT_TRUE((two.module.nu[0] * two.module.nu[1]).is_zero());
  EXPECT_TRUE((two.module.nu[1] * two.module.nu[0]).is_zero());
  EXPECT_THROW(unipotent_module(pt({"0"}), 0), PreconditionError);
}

TEST(mellin, e_xi_modules) {
  auto w = group("GL", 2);
  auto e = e_xi_module(w, pt({"0", "0"}));
  EXPECT_EQ(e.module.dim(), 2u);
  EXPECT_EQ(e.structure.group.order(), 2u);
  // basis {1, v1}; swap sends v1 to v2 = -v1 in the quotient
  const std::size_t swap = 1 - e.structure.group.identity_index();
  EXPECT_EQ(e.structure.u[swap], (Matrix{{1, 0}, {0, -1}}));
  EXPECT_TRUE(check_structure(e.module, e.structure).ok);

  auto half = e_xi_module(w, pt({"1/2", "1/2"}));
  EXPECT_EQ(half.module.dim(), 2u);
  EXPECT_TRUE(check_structure(half.module, half.structure).ok);

  auto free = e_xi_module(w, pt({"1/3", "2/3"}));
  EXPECT_EQ(free.module.dim(), 1u);
  EXPECT_EQ(free.module.nu, kummer_module(pt({"1/3", "2/3"})).nu);
}

TEST(mellin, contract_detects_a_wrong_structure) {
  auto w = group("GL", 2);
  auto e = e_xi_module(w, pt({"0", "0"}));
  EquivariantStructure bad = e.structure;
  const std::size_t swap = 1 - bad.group.identity_index();
  bad.u[swap] = Matrix::identity(2);
  auto rep = check_structure(e.module, bad);
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.failures.empty());
}

TEST(mellin, e_theta_modules) {
  auto w2 = group("GL", 2);
  auto zero = e_theta_module(w2, pt({"0", "0"}));
  EXPECT_EQ(zero.module.components.size(), 1u);
  EXPECT_EQ(zero.module.total_dim(), 2u);

  auto free = e_theta_module(w2, pt({"1/3", "2/3"}));
  ASSERT_EQ(free.module.components.size(), 2u);
  EXPECT_EQ(free.module.components[1].coset_rep, qv({"2/3", "1/3"}));
  const std::size_t swap = w2.identity_index() == 0 ? 1 : 0;
  EXPECT_EQ(free.module.u[swap][0].target, 1u);
  EXPECT_EQ(free.module.u[swap][1].target, 0u);

  auto w3 = group("GL", 3);
  auto t = e_theta_module(w3, pt({"0", "0", "1/2"}));
  EXPECT_EQ(t.module.components.size(), 3u);
  EXPECT_EQ(t.fiber_dim, 2u);
  EXPECT_EQ(t.module.total_dim(), 6u);
  EXPECT_TRUE(check_structure(t.module).ok);
  for (const auto& c : t.module.components) EXPECT_TRUE(module_violations(c).empty());
}

TEST(mellin, tensor_examples) {
  auto k = kummer_module(pt({"1/2"}));
  auto kk = tensor(k, k);
  EXPECT_EQ(kk.dim(), 1u);
  EXPECT_EQ(kk.nu[0], k.nu[0]);
  EXPECT_EQ(tensor(kummer_module(pt({"0"})), kummer_module(pt({"1/2"}))).dim(), 0u);
  auto u = unipotent_module(pt({"0"}), 2).module;
  EXPECT_EQ(tensor(u, kummer_module(pt({"0"}))).dim(), 1u);
}

TEST(mellin, tor_examples) {
  EXPECT_EQ(tor(kummer_module(pt({"0"})), kummer_module(pt({"0"}))), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(tor(kummer_module(pt({"0", "0"})), kummer_module(pt({"0", "0"}))),
            (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(tor(kummer_module(pt({"0", "0", "0"})), kummer_module(pt({"0", "0", "0"}))),
            (std::vector<std::size_t>{1, 3, 3, 1}));
  EXPECT_TRUE(all_zero(tor(kummer_module(pt({"0", "0"})), kummer_module(pt({"1/2", "0"})))));
  // Jordan block of size 2 against the trivial module: one class in each degree
  auto u = unipotent_module(pt({"0"}), 2).module;
  EXPECT_EQ(tor(u, kummer_module(pt({"0"}))), (std::vector<std::size_t>{1, 1}));
}

TEST(mellin, morphisms) {
  auto k = kummer_module(pt({"1/3"}));
  EXPECT_TRUE(verify_morphism(Matrix::identity(1), k, k).passed);
  auto w = group("GL", 2);
  auto e = e_xi_module(w, pt({"0", "0"}));
  for (const auto& u : e.structure.u)
    EXPECT_TRUE(verify_morphism(u * u, e.module, e.module, &e.structure, &e.structure).passed);
  auto t = unipotent_module(pt({"0", "0"}), 2).module;
  auto bad = verify_morphism(Matrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}, t, t);
  EXPECT_FALSE(bad.passed);
  ASSERT_FALSE(bad.failures.empty());
  EXPECT_NE(bad.failures[0].find("N_M(v_1)"), std::string::npos);
}

TEST(mellin, iso_search_examples) {
  auto u = unipotent_module(pt({"0"}), 2).module;
  auto found = iso_search(u, u);
  EXPECT_EQ(found.status, IsoStatus::kFound);
  ASSERT_TRUE(found.iso);
  EXPECT_TRUE(verify_morphism(*found.iso, u, u).passed);

  auto none = iso_search(kummer_module(pt({"0"})), kummer_module(pt({"1/2"})));
  EXPECT_EQ(none.status, IsoStatus::kNoneCertified);

  auto ss = direct_sum(kummer_module(pt({"0"})), kummer_module(pt({"0"})));
  auto jordan = iso_search(u, ss);
  EXPECT_EQ(jordan.status, IsoStatus::kNoCertificate);
  EXPECT_TRUE(jordan.singular_proven);
  EXPECT_EQ(jordan.intertwiner_dim, 2u);
  EXPECT_EQ(to_string(jordan.status), "no certificate");
}

TEST(mellin, descent_under_coset_shifts) {
  std::mt19937 g(1234);
  std::uniform_int_distribution<long> shift(-3, 3);
  std::uniform_int_distribution<int> dim(1, 3);
  const QVector cosets[] = {qv({"0", "0"}), qv({"1/2", "0"}), qv({"1/3", "2/3"})};
  for (int t = 0; t < 30; ++t) {
    const QVector& mu = cosets[t % 3];
    auto m = random_module(g, mu, dim(g));
    auto n = random_module(g, cosets[(t / 3) % 3], dim(g));
    QVector moved = mu;
    for (auto& x : moved) x = x + Rational(shift(g));
    auto m2 = m.renormalized(moved);
    EXPECT_EQ(tor(m, n), tor(m2, n));
    EXPECT_EQ(tensor(m, n).dim(), tensor(m2, n).dim());
    EXPECT_EQ(tor(m, n)[0], tensor(m, n).dim());
    EXPECT_TRUE(module_violations(m2).empty());
  }
}

TEST(mellin, vanishing_for_unipotent_extensions) {
  std::mt19937 g(2718);
  std::uniform_int_distribution<int> dim(1, 4), level(1, 3), pick(0, 2);
  int premise = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t rank = 1 + t % 2;
    const QVector xi = rank == 1 ? qv({"1/2"}) : qv({"1/2", "0"});
    const QVector other = rank == 1 ? qv({"1/3"}) : qv({"1/2", "1/3"});
    const QVector& mu = pick(g) == 0 ? other : xi;
    auto f = random_module(g, mu, dim(g));
    auto l = unipotent_module(TorusPoint{xi}, level(g)).module;
    if (all_zero(tor(l, f))) {
      ++premise;
      EXPECT_TRUE(all_zero(tor(kummer_module(TorusPoint{xi}), f)));
    }
  }
  EXPECT_GT(premise, 0);
}

TEST(mellin, constructors_produce_commuting_operators) {
  auto w = group("GL", 3);
  for (const auto& xi : {qv({"0", "0", "0"}), qv({"0", "0", "1/2"}), qv({"1/3", "1/3", "1/3"})}) {
    EXPECT_TRUE(module_violations(e_xi_module(w, TorusPoint{xi}).module).empty());
    for (int n = 1; n <= 3; ++n) EXPECT_TRUE(module_violations(unipotent_module(TorusPoint{xi}, n).module).empty());
  }
}
