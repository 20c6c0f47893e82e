#include <gtest/gtest.h>

#include "collapse/morphisms.hpp"

using namespace collapse;

namespace {

Elem n(std::int64_t k) { return Elem::nat(k); }
Elem word(std::vector<Elem> es) { return Elem::node(Tag::Word, std::move(es)); }
Elem a1(Elem y, Elem x) { return Elem::node(Tag::AffineOne, {std::move(y), std::move(x)}); }
Elem a0() { return Elem::node(Tag::AffineZero, {}); }

const LevelMap id = [](const Elem& a) { return a; };

}  // namespace

TEST(OmegaOneCollapse, CollapseValues) {
  auto w = omega_one_collapse(finite_order(3));
  auto [alpha, tau] = w->pi(word({}));
  EXPECT_EQ(alpha, n(0));
  EXPECT_EQ(tau, (DilElem{{0, a0()}, {}}));
  auto [beta, rho] = w->pi(word({n(2), n(1)}));
  EXPECT_EQ(beta, n(0));
  EXPECT_EQ(rho, (DilElem{{1, a1(n(2), n(0))}, {word({n(1)})}}));
  EXPECT_EQ(w->psi_inv(n(0), rho), word({n(2), n(1)}));
  EXPECT_EQ(w->psi_inv(n(0), DilElem{{1, a1(n(0), n(0))}, {word({n(1)})}}), std::nullopt);
  EXPECT_EQ(w->subterm_children(word({n(1)})), std::vector<Elem>{word({})});
}

TEST(InitialEmbedding, IdentityOnItself) {
  auto p = make_psi_system(finite_order(2), omega_dilator());
  InitialEmbedding f(id, p, p);
  for (const auto& t : p->enumerate_members(30)) {
    EXPECT_EQ(f(t), t);
    EXPECT_TRUE(f.square_commutes(t));
  }
}

TEST(InitialEmbedding, AffineIntoWords) {
  auto y = finite_order(2);
  auto p = make_psi_system(finite_order(1), affine_dilator(y));
  auto w = omega_one_collapse(y);
  InitialEmbedding f(id, p, w);
  auto least = p->make_term(n(0), {}, {0, a0()});
  EXPECT_EQ(f(least), word({}));
  auto next = p->make_term(n(0), {least}, {1, a1(n(1), n(0))});
  EXPECT_EQ(f(next), word({n(1)}));
  EXPECT_EQ(initial_embedding(id, p, w, {least, next}), (std::vector<Elem>{word({}), word({n(1)})}));
}

TEST(InitialEmbedding, IncreasingLevelsBaseCase) {
  auto src = make_psi_system(finite_order(2), omega_dilator());
  auto dst = make_psi_system(ordinal_order(1, 0), omega_dilator());
  InitialEmbedding f(id, src, dst);
  auto t = src->make_term(n(1), {}, {0, word({})});
  EXPECT_EQ(f(t), dst->make_term(n(1), {}, {0, word({})}));
  auto ms = src->sorted_members(40);
  for (std::size_t i = 1; i < ms.size(); ++i) EXPECT_TRUE(dst->less(f(ms[i - 1]), f(ms[i])));
  EXPECT_GT(f.computed(), 0u);
}

TEST(InitialEmbedding, MissingPreimageThrows) {
  // into a system with one level there is no image of level 1
  auto src = make_psi_system(finite_order(2), omega_dilator());
  auto dst = make_psi_system(finite_order(1), omega_dilator());
  InitialEmbedding f(id, src, dst);
  EXPECT_THROW(f(src->make_term(n(1), {}, {0, word({})})), std::exception);
}

namespace {

struct BHTest : ::testing::Test {
  DilatorPtr d = affine_dilator(finite_order(1));
  PsiPtr h = make_psi_system(finite_order(1), compose(omega_dilator(), d));
  BHPtr bh = bh_theta(h, d);
  std::vector<DilElem> sample() const {
    std::vector<DilElem> out;
    auto pts = h->enumerate_members(20);
    for (const auto& raw : d->enumerate(h->order(), pts, 3))
      out.push_back(normal_form(*d, h->order(), raw));
    return out;
  }
};

}  // namespace

TEST_F(BHTest, SigmaPlusOfEmptySupport) {
  DilElem zero{{0, a0()}, {}};
  auto plus = sigma_plus(*h, *d, zero);
  EXPECT_EQ(plus.trace.payload, word({a0()}));
  EXPECT_TRUE(plus.support.empty());
}

TEST_F(BHTest, ThetaIsACollapse) {
  auto s = sample();
  ASSERT_GT(s.size(), 5u);
  EXPECT_TRUE(check_bh_collapse(*bh, s).ok());
  for (const auto& x : s) EXPECT_EQ(bh->theta_inverse(bh->theta(x)), x);
  EXPECT_TRUE(check_bh_collapse(*bh, {}).ok());
}

TEST_F(BHTest, ConstantThetaFails) {
  auto bad = constant_theta(bh, h->sorted_members(1).front());
  EXPECT_FALSE(check_bh_collapse(*bad, sample()).ok());
}

TEST_F(BHTest, CarvedCollapseMatchesWords) {
  auto oc = bh_to_one_collapse(bh, 3, 30);
  EXPECT_FALSE(oc->defect());
  auto pts = oc->points();
  ASSERT_GT(pts.size(), 3u);
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_TRUE(oc->order().less(pts[i - 1], pts[i]));
  // with a one-point Y the words are the naturals, so the carved order is a chain
  auto w = omega_one_collapse(finite_order(1));
  InitialEmbedding f(id, oc, w);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(f(pts[i]).arity(), i);
  EXPECT_TRUE(check_range_condition(*oc, range_grid(*oc, pts, {n(0)}, pts.size(), 3, 200)).ok());
}
