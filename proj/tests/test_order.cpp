#include <gtest/gtest.h>

#include "collapse/cursor.hpp"
#include "collapse/order.hpp"

using namespace collapse;

namespace {

Elem n(std::int64_t k) { return Elem::nat(k); }
Elem word(std::vector<Elem> es) { return Elem::node(Tag::Word, std::move(es)); }

}  // namespace

TEST(Order, FiniteComparison) {
  auto three = finite_order(3);
  EXPECT_EQ(compare_elements(*three, n(1), n(2)), std::strong_ordering::less);
  EXPECT_EQ(compare_elements(*three, n(2), n(2)), std::strong_ordering::equal);
  EXPECT_FALSE(three->contains(n(3)));
  EXPECT_THROW(compare_elements(*three, n(1), n(5)), DecodeError);
}

TEST(Order, OmegaPlusOneTop) {
  auto w1 = ordinal_order(1, 1);
  EXPECT_EQ(compare_elements(*w1, Elem::ordinal(1, 0), n(5)), std::strong_ordering::greater);
  EXPECT_TRUE(w1->contains(Elem::ordinal(1, 0)));
  EXPECT_FALSE(w1->contains(Elem::ordinal(1, 1)));
}

TEST(Order, ProductIsLexicographic) {
  auto p = product_order(finite_order(2), finite_order(3));
  auto pair = [](int a, int b) { return Elem::node(Tag::Pair, {n(a), n(b)}); };
  for (int y = 0; y < 3; ++y)
    for (int y2 = 0; y2 < 3; ++y2) EXPECT_TRUE(p->less(pair(0, y), pair(1, y2)));
  EXPECT_TRUE(p->less(pair(1, 0), pair(1, 2)));
}

TEST(Order, SumPutsLeftFirst) {
  auto s = sum_order(finite_order(5), finite_order(1));
  EXPECT_TRUE(s->less(Elem::node(Tag::Left, {n(4)}), Elem::node(Tag::Right, {n(0)})));
  EXPECT_TRUE(s->less(Elem::node(Tag::Left, {n(0)}), Elem::node(Tag::Left, {n(4)})));
}

TEST(Order, WordOrder) {
  auto w = word_order(finite_order(3));
  EXPECT_TRUE(w->less(word({n(1), n(1), n(1)}), word({n(2)})));
  EXPECT_TRUE(w->less(word({n(1)}), word({n(1), n(0)})));
  EXPECT_TRUE(w->less(word({}), word({n(0)})));
  EXPECT_FALSE(w->contains(word({n(0), n(1)})));  // increasing
}

TEST(Order, KleeneBrouwer) {
  auto x = finite_order(2);
  auto kb = [&](std::vector<Elem> s, std::vector<Elem> t) { return kb_compare(*x, s, t); };
  EXPECT_EQ(kb({n(0)}, {}), std::strong_ordering::less);
  EXPECT_EQ(kb({n(0)}, {n(1)}), std::strong_ordering::less);
  EXPECT_EQ(kb({n(1), n(0)}, {n(1)}), std::strong_ordering::less);
  EXPECT_EQ(kb({n(1), n(0)}, {n(1), n(0)}), std::strong_ordering::equal);
}

TEST(Order, KleeneBrouwerIsLinearOnShortSequences) {
  auto k = kb_order(finite_order(3), 3);
  auto all = k->enumerate(12);
  auto audit = audit_linear_order(all, [&](const Elem& a, const Elem& b) { return k->compare(a, b); });
  EXPECT_TRUE(audit.ok()) << audit.counterexample.value_or("");
  EXPECT_GT(all.size(), 30u);
}

TEST(Order, IncreasingEnumeration) {
  auto three = finite_order(3);
  EXPECT_EQ(increasing_enumeration(*three, {}).domain_size(), 0u);
  auto e = increasing_enumeration(*three, {n(2), n(0)});
  ASSERT_EQ(e.images.size(), 2u);
  EXPECT_EQ(e.images[0], n(0));
  EXPECT_EQ(e.images[1], n(2));
  EXPECT_EQ(e(n(1)), n(2));
  auto w = word_order(finite_order(3));
  auto ew = increasing_enumeration(*w, {word({n(1)}), word({})});
  EXPECT_EQ(ew.images[0], word({}));
  EXPECT_EQ(ew.images[1], word({n(1)}));
}

TEST(Order, AuditDetectsACycle) {
  std::vector<Elem> es{n(0), n(1), n(2)};
  // rock-paper-scissors
  auto cmp = [](const Elem& a, const Elem& b) {
    if (a == b) return std::strong_ordering::equal;
    return (a.lo() + 1) % 3 == b.lo() ? std::strong_ordering::less : std::strong_ordering::greater;
  };
  EXPECT_FALSE(audit_linear_order(es, cmp).ok());
}

TEST(Order, OrdinalLiterals) {
  for (std::string s : {"0", "7", "w", "w+3", "w2", "w5+1"}) {
    Cursor in(s);
    Elem e = read_ordinal(in);
    std::string out;
    write_ordinal(out, e);
    EXPECT_EQ(out, s);
  }
  Cursor bad("w0");
  EXPECT_THROW(read_ordinal(bad), ParseError);
}

TEST(Order, ParseErrorsCarryPosition) {
  Cursor in("  x");
  try {
    read_ordinal(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(Elem, SharedSmallNaturals) {
  EXPECT_EQ(Elem::nat(3).identity(), Elem::nat(3).identity());
  EXPECT_EQ(Elem::nat(300), Elem::nat(300));
  EXPECT_NE(Elem::nat(3), Elem::ordinal(1, 3));
  EXPECT_EQ(word({n(1), n(0)}).hash(), word({n(1), n(0)}).hash());
}
