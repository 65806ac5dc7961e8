#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "mgk/error.hpp"
#include "mgk/rootdata.hpp"
#include "support.hpp"

using namespace mgk;
using mgk::testing::q;
using mgk::testing::qv;

namespace {

MatrixGroup group(const std::string& preset, int rank) {
  return weyl_group(build_root_datum({preset, rank, {}, {}}));
}

std::size_t oracle_order(const std::string& preset, int rank) {
  RootDatum rd = build_root_datum({preset, rank, {}, {}});
  std::vector<mgk::testing::Mat> gens;
  for (const auto& g : rd.weyl_generators) gens.push_back(mgk::testing::to_mat(g));
  return mgk::testing::oracle_group_order(gens);
}

}  // namespace

TEST(rootdata, gl2_has_one_swap) {
  RootDatum rd = build_root_datum({"GL", 2, {}, {}});
  EXPECT_EQ(rd.rank, 2u);
  ASSERT_EQ(rd.weyl_generators.size(), 1u);
  EXPECT_EQ(rd.weyl_generators[0], (IntMatrix{{0, 1}, {1, 0}}));
}

TEST(rootdata, weyl_orders) {
  EXPECT_EQ(group("GL", 2).order(), 2u);
  EXPECT_EQ(group("GL", 3).order(), 6u);
  EXPECT_EQ(group("A", 2).order(), 6u);
  EXPECT_EQ(group("SL", 3).order(), 6u);
  EXPECT_EQ(group("B", 2).order(), 8u);
  EXPECT_EQ(group("C", 3).order(), 48u);
  EXPECT_EQ(group("G2", 2).order(), 12u);
  EXPECT_EQ(group("D", 4).order(), 192u);
  for (auto [p, r] : std::vector<std::pair<std::string, int>>{
           {"GL", 4}, {"A", 3}, {"B", 2}, {"B", 3}, {"C", 2}, {"D", 4}, {"G2", 2}})
    EXPECT_EQ(group(p, r).order(), oracle_order(p, r)) << p << r;
}

TEST(rootdata, product_and_explicit) {
  RootDatumSpec prod{"product", 0, {}, {{"GL", 2, {}, {}}, {"A", 1, {}, {}}}};
  EXPECT_EQ(weyl_group(build_root_datum(prod)).order(), 4u);
  RootDatumSpec ex{"explicit", 0, {IntMatrix{{0, 1}, {1, 0}}}, {}};
  EXPECT_EQ(weyl_group(build_root_datum(ex)).order(), 2u);
  RootDatumSpec minus{"explicit", 0, {IntMatrix{{-1, 0}, {0, -1}}}, {}};
  EXPECT_EQ(weyl_group(build_root_datum(minus)).order(), 2u);
}

TEST(rootdata, invalid_inputs) {
  EXPECT_THROW(build_root_datum({"E", 6, {}, {}}), InputError);
  EXPECT_THROW(build_root_datum({"explicit", 0, {IntMatrix{{2, 0}, {0, 1}}}, {}}), InputError);
  EXPECT_THROW(build_root_datum({"explicit", 0, {IntMatrix{{0, 1}, {-1, 0}}}, {}}), InputError);
  EXPECT_THROW(weyl_group(build_root_datum({"GL", 5, {}, {}}), 50), InputError);
  EXPECT_THROW(build_root_datum({"GL", 6, {}, {}}, 100), InputError);
}

TEST(rootdata, stabilizers) {
  auto w2 = group("GL", 2);
  EXPECT_EQ(stabilizer(w2, TorusPoint{qv({"0", "0"})}).order(), 2u);
  EXPECT_EQ(stabilizer(w2, TorusPoint{qv({"1/2", "1/2"})}).order(), 2u);
  EXPECT_EQ(stabilizer(w2, TorusPoint{qv({"1/3", "2/3"})}).order(), 1u);
  auto w3 = group("GL", 3);
  auto s = stabilizer(w3, TorusPoint{qv({"0", "0", "1/2"})});
  ASSERT_EQ(s.order(), 2u);
  for (const auto& e : s.elements()) EXPECT_EQ(e.matrix(2, 2), 1);
}

TEST(rootdata, stabilizer_shift_invariance) {
  auto& g = mgk::testing::rng();
  std::uniform_int_distribution<long> shift(-4, 4);
  std::uniform_int_distribution<int> den(1, 4);
  for (const auto& [p, r] : std::vector<std::pair<std::string, int>>{{"GL", 3}, {"B", 2}, {"G2", 2}}) {
    auto w = group(p, r);
    for (int t = 0; t < 20; ++t) {
      QVector xi, moved;
      for (std::size_t i = 0; i < w.rank(); ++i) {
        xi.push_back(Rational(shift(g), den(g)));
        moved.push_back(xi.back() + Rational(shift(g)));
      }
      auto a = stabilizer(w, TorusPoint{xi}), b = stabilizer(w, TorusPoint{moved});
      ASSERT_EQ(a.order(), b.order());
      for (const auto& e : a.elements()) EXPECT_TRUE(b.contains(e.matrix));
      for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j) EXPECT_TRUE(a.contains((a[i].matrix * a[j].matrix)));
    }
  }
}

TEST(rootdata, det_is_a_character) {
  for (const auto& [p, r] : std::vector<std::pair<std::string, int>>{{"GL", 3}, {"B", 2}, {"G2", 2}, {"C", 3}}) {
    auto w = group(p, r);
    for (std::size_t i = 0; i < w.order(); ++i)
      for (std::size_t j = 0; j < w.order(); ++j)
        EXPECT_EQ(w[w.product(i, j)].sign(), w[i].sign() * w[j].sign());
    for (std::size_t i = 0; i < w.order(); ++i) EXPECT_EQ(w.product(i, w.inverse(i)), w.identity_index());
  }
}

TEST(rootdata, dual_action_preserves_pairing) {
  auto w = group("B", 2);
  QVector mu = qv({"1/3", "-2/5"});
  IntVector h{2, -1};
  for (const auto& e : w.elements()) EXPECT_EQ(pair(e.act(h), e.act_dual(mu)), pair(h, mu));
}

TEST(rootdata, sigma_positivity) {
  EXPECT_TRUE(sigma_positive({1, 1}, {1, 0}));
  EXPECT_FALSE(sigma_positive({1, 1}, {1, -1}));
  EXPECT_FALSE(sigma_positive({1, 1}, {-1, 0}));
}

TEST(rootdata, lambda_families) {
  auto w = group("GL", 2);
  auto basis = check_lambda_family(w, {{1, 0}, {0, 1}}, {1, 1});
  EXPECT_TRUE(basis.w_stable);
  EXPECT_TRUE(basis.all_sigma_positive);
  EXPECT_TRUE(basis.pr_onto);
  EXPECT_FALSE(check_lambda_family(w, {{1, 0}}, {1, 1}).w_stable);
  auto diag = check_lambda_family(w, {{1, 1}, {1, 1}}, {1, 1});
  EXPECT_TRUE(diag.w_stable);
  EXPECT_FALSE(diag.pr_onto);
  EXPECT_EQ(diag.span_rank, 1u);
  auto index2 = check_lambda_family(w, {{1, 1}, {1, -1}, {-1, 1}}, {1, 0});
  EXPECT_FALSE(index2.pr_onto);
  EXPECT_EQ(index2.span_rank, 2u);
}

TEST(rootdata, smith_form) {
  auto d = elementary_divisors({{2, 4}, {6, 8}});
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0], 2);
  EXPECT_EQ(d[1], 4);
  EXPECT_EQ(elementary_divisors({{1, 1}, {1, -1}})[1], 2);
}

TEST(rootdata, wprime_examples) {
  auto w2 = group("GL", 2);
  auto a = wprime(w2, {{1, 0}, {0, 1}});
  EXPECT_EQ(a.distinct.size(), 2u);
  EXPECT_EQ(a.multiplicities, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(a.s_lambda_order, 1);
  EXPECT_EQ(a.order, 2);
  auto b = wprime(w2, {{1, 0}, {1, 0}, {0, 1}, {0, 1}});
  EXPECT_EQ(b.multiplicities, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(b.s_lambda_order, 4);
  EXPECT_EQ(b.order, 8);
  EXPECT_TRUE(b.image_check);
  EXPECT_EQ(wprime(group("GL", 3), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).order, 6);
  EXPECT_THROW(wprime(w2, {{1, 0}}), InputError);
}

TEST(rootdata, lifts_differ_by_block_permutations) {
  auto w = group("GL", 3);
  std::vector<IntVector> ls{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
  auto wp = wprime(w, ls);
  for (const auto& e : w.elements()) {
    auto lifts = wp.lifts(e, ls);
    ASSERT_EQ(lifts.size(), 8u);
    for (const auto& eta : lifts)
      for (std::size_t i = 0; i < ls.size(); ++i) EXPECT_EQ(ls[static_cast<std::size_t>(eta[i])], e.act(ls[i]));
    for (const auto& x : lifts)
      for (const auto& y : lifts) {
        // y x^{-1} maps each block to itself
        Permutation xinv(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) xinv[static_cast<std::size_t>(x[i])] = static_cast<int>(i);
        for (std::size_t i = 0; i < x.size(); ++i) {
          std::size_t img = static_cast<std::size_t>(y[static_cast<std::size_t>(xinv[i])]);
          EXPECT_EQ(wp.block_of[img], wp.block_of[i]);
        }
      }
  }
  EXPECT_EQ(permutation_sign({1, 0, 2}), -1);
  EXPECT_EQ(permutation_sign({1, 2, 0}), 1);
}
