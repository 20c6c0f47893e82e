#include <gtest/gtest.h>

#include "collapse/psi.hpp"

using namespace collapse;

namespace {

Elem n(std::int64_t k) { return Elem::nat(k); }
Elem word(std::vector<Elem> es) { return Elem::node(Tag::Word, std::move(es)); }

struct PsiTest : ::testing::Test {
  PsiPtr p = make_psi_system(finite_order(2), omega_dilator());
  TraceElem empty{0, word({})};
  TraceElem one{1, word({n(0)})};
  TraceElem two{1, word({n(0), n(0)})};
  Elem a0 = p->make_term(n(0), {}, empty);
  Elem a1 = p->make_term(n(1), {}, empty);
  Elem b = p->make_term(n(0), {a1}, one);       // psi_0({psi_1()}; <0>)
  Elem bad = p->make_term(n(0), {b}, one);      // psi_0({b}; <0>)
  Elem c = p->make_term(n(0), {a0}, one);
};

}  // namespace

TEST_F(PsiTest, LMeasure) {
  EXPECT_EQ(PsiSystem::l_measure(a0), 1u);
  EXPECT_EQ(PsiSystem::l_measure(b), 3u);
  EXPECT_EQ(PsiSystem::l_measure(p->make_term(n(1), {bad}, one)), 15u);
  Elem pair = p->make_term(n(0), {a0, a1}, {2, word({n(1), n(0)})});
  EXPECT_EQ(PsiSystem::l_measure(pair), 5u);
  EXPECT_EQ(PsiSystem::l_measure(p->make_term(n(0), {pair}, one)), 11u);
}

TEST_F(PsiTest, MakeTermValidation) {
  EXPECT_THROW(p->make_term(n(2), {}, empty), ValidationError);
  EXPECT_THROW(p->make_term(n(0), {a0}, empty), ValidationError);
  EXPECT_THROW(p->make_term(n(0), {a0, a0}, {2, word({n(1), n(0)})}), ValidationError);
  EXPECT_THROW(p->make_term(n(0), {a0, a1}, {2, word({n(1), n(1)})}), ValidationError);
  EXPECT_TRUE(p->well_formed(b));
  EXPECT_EQ(PsiSystem::children(b), std::vector<Elem>{a1});
  EXPECT_EQ(PsiSystem::sigma(b), one);
}

TEST_F(PsiTest, Comparison) {
  EXPECT_TRUE(p->less(a0, c));
  EXPECT_TRUE(p->less(c, b));
  EXPECT_TRUE(p->less(b, a1));
  EXPECT_TRUE(p->less(c, p->make_term(n(0), {a0}, two)));
  EXPECT_EQ(p->compare(b, b), std::strong_ordering::equal);
  EXPECT_EQ(p->compare(a1, a0), std::strong_ordering::greater);
}

TEST_F(PsiTest, GPlus) {
  EXPECT_TRUE(p->g_plus(n(1), a0).empty());
  EXPECT_EQ(p->g_plus(n(0), a0), std::vector<DilElem>{PsiSystem::component(a0)});
  auto g = p->g_plus(n(0), b);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], PsiSystem::component(b));
  EXPECT_EQ(g[1], PsiSystem::component(a1));
  EXPECT_TRUE(p->g_plus(n(1), b).empty());
  auto dropped = make_psi_system(finite_order(2), omega_dilator(), {}, true);
  EXPECT_EQ(dropped->g_plus(n(0), b).size(), 1u);
}

TEST_F(PsiTest, Membership) {
  EXPECT_TRUE(p->member(a0));
  EXPECT_TRUE(p->member(b));
  EXPECT_TRUE(p->member(p->make_term(n(1), {b}, one)));
  EXPECT_FALSE(p->member(bad));
  EXPECT_FALSE(p->member(p->make_term(n(1), {bad}, one)));
}

TEST_F(PsiTest, CollapseAndInverse) {
  auto [alpha, tau] = p->pi(b);
  EXPECT_EQ(alpha, n(0));
  EXPECT_EQ(tau, (DilElem{one, {a1}}));
  EXPECT_EQ(p->psi_inv(n(0), tau), b);
  EXPECT_EQ(p->psi_inv(n(0), DilElem{one, {b}}), std::nullopt);
  EXPECT_EQ(p->psi_inv(n(1), DilElem{one, {b}}), p->make_term(n(1), {b}, one));
  EXPECT_EQ(p->subterm_children(c), std::vector<Elem>{a0});
}

TEST_F(PsiTest, GAndEFunctions) {
  auto g = g_of_point(*p, n(0), b);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[1], PsiSystem::component(a1));
  EXPECT_TRUE(g_of_point(*p, n(1), b).empty());
  EXPECT_EQ(e_of_point(*p, n(0), b), std::vector<Elem>{b});
  EXPECT_EQ(e_of_point(*p, n(1), b), std::vector<Elem>{b});
  Elem top = p->make_term(n(1), {b}, one);
  EXPECT_EQ(e_of_point(*p, n(0), top), std::vector<Elem>{b});
  EXPECT_TRUE(range_condition(*p, n(0), DilElem{one, {a1}}));
  EXPECT_FALSE(range_condition(*p, n(0), DilElem{one, {b}}));
}

TEST_F(PsiTest, EnumerationPrefixStable) {
  auto small = p->enumerate_members(8);
  auto large = p->enumerate_members(40);
  ASSERT_EQ(small.size(), 8u);
  EXPECT_TRUE(std::equal(small.begin(), small.end(), large.begin()));
  EXPECT_EQ(small[0], a0);
  EXPECT_EQ(small[1], a1);
  for (const auto& t : large) EXPECT_TRUE(p->member(t));
  auto sorted = p->sorted_members(40);
  for (std::size_t i = 1; i < sorted.size(); ++i) EXPECT_TRUE(p->less(sorted[i - 1], sorted[i]));
  EXPECT_TRUE(check_pi_embedding(*p, large).ok());
}

TEST_F(PsiTest, TextRoundtrip) {
  EXPECT_EQ(p->to_string(b), "p[0]({p[1]({};w[])};w[0])");
  EXPECT_EQ(p->parse(" p[0]( { p[1]({}; w[]) } ; w[0] ) "), b);
  EXPECT_THROW(p->parse("p[0]({};w[0])"), ValidationError);
  EXPECT_THROW(p->parse("p[0]({}"), ParseError);
}

TEST(PsiAffine, LeastMemberOverOneLevel) {
  auto p = make_psi_system(finite_order(1), affine_dilator(finite_order(2)));
  auto ms = p->sorted_members(5);
  ASSERT_FALSE(ms.empty());
  EXPECT_EQ(PsiSystem::children(ms[0]).size(), 0u);
  EXPECT_EQ(PsiSystem::sigma(ms[0]).payload, Elem::node(Tag::AffineZero, {}));
}
