#include "collapse/order.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace collapse {

std::strong_ordering compare_elements(const CodedOrder& order, const Elem& a, const Elem& b) {
  if (!order.contains(a)) throw DecodeError("not an element of " + order.label() + ": " + debug_string(a));
  if (!order.contains(b)) throw DecodeError("not an element of " + order.label() + ": " + debug_string(b));
  return order.compare(a, b);
}

namespace {

void sort_by_size_then_order(const CodedOrder& order, std::vector<Elem>& v) {
  std::sort(v.begin(), v.end(), [&](const Elem& a, const Elem& b) {
    if (a.code_size() != b.code_size()) return a.code_size() < b.code_size();
    return order.less(a, b);
  });
}

class OrdinalOrder final : public CodedOrder {
 public:
  OrdinalOrder(std::int64_t hi, std::int64_t lo) : hi_(hi), lo_(lo) {}

  std::strong_ordering compare(const Elem& a, const Elem& b) const override {
    if (auto c = a.hi() <=> b.hi(); c != 0) return c;
    return a.lo() <=> b.lo();
  }

  bool contains(const Elem& a) const override {
    if (a.is_null() || a.tag() != Tag::Ordinal) return false;
    return a.hi() < hi_ || (a.hi() == hi_ && a.lo() < lo_);
  }

  std::vector<Elem> enumerate(std::size_t budget) const override {
    std::vector<Elem> out;
    auto b = static_cast<std::int64_t>(budget);
    for (std::int64_t h = 0; h <= std::min(hi_, b); ++h) {
      std::int64_t top = h < hi_ ? b - h : std::min(b - h, lo_ - 1);
      for (std::int64_t l = 0; l <= top; ++l) out.push_back(Elem::ordinal(h, l));
    }
    sort_by_size_then_order(*this, out);
    return out;
  }

  std::string label() const override { return debug_string(Elem::ordinal(hi_, lo_)); }

 private:
  std::int64_t hi_, lo_;
};

class SumOrder final : public CodedOrder {
 public:
  SumOrder(OrderPtr l, OrderPtr r) : l_(std::move(l)), r_(std::move(r)) {}

  std::strong_ordering compare(const Elem& a, const Elem& b) const override {
    if (a.tag() != b.tag()) return a.tag() == Tag::Left ? std::strong_ordering::less
                                                         : std::strong_ordering::greater;
    return (a.tag() == Tag::Left ? *l_ : *r_).compare(a.kid(0), b.kid(0));
  }
  bool contains(const Elem& a) const override {
    if (a.is_null() || a.arity() != 1) return false;
    if (a.tag() == Tag::Left) return l_->contains(a.kid(0));
    if (a.tag() == Tag::Right) return r_->contains(a.kid(0));
    return false;
  }
  std::vector<Elem> enumerate(std::size_t budget) const override {
    std::vector<Elem> out;
    if (budget == 0) return out;
    for (auto& x : l_->enumerate(budget - 1)) out.push_back(Elem::node(Tag::Left, {x}));
    for (auto& y : r_->enumerate(budget - 1)) out.push_back(Elem::node(Tag::Right, {y}));
    sort_by_size_then_order(*this, out);
    return out;
  }
  std::string label() const override { return "(" + l_->label() + "+" + r_->label() + ")"; }

 private:
  OrderPtr l_, r_;
};

class ProductOrder final : public CodedOrder {
 public:
  ProductOrder(OrderPtr a, OrderPtr b) : a_(std::move(a)), b_(std::move(b)) {}

  std::strong_ordering compare(const Elem& p, const Elem& q) const override {
    if (auto c = a_->compare(p.kid(0), q.kid(0)); c != 0) return c;
    return b_->compare(p.kid(1), q.kid(1));
  }
  bool contains(const Elem& p) const override {
    return !p.is_null() && p.tag() == Tag::Pair && p.arity() == 2 && a_->contains(p.kid(0)) &&
           b_->contains(p.kid(1));
  }
  std::vector<Elem> enumerate(std::size_t budget) const override {
    std::vector<Elem> out;
    if (budget == 0) return out;
    for (auto& x : a_->enumerate(budget - 1)) {
      if (x.code_size() > budget - 1) continue;
      for (auto& y : b_->enumerate(budget - 1 - x.code_size()))
        out.push_back(Elem::node(Tag::Pair, {x, y}));
    }
    sort_by_size_then_order(*this, out);
    return out;
  }
  std::string label() const override { return "(" + a_->label() + "x" + b_->label() + ")"; }

 private:
  OrderPtr a_, b_;
};

class WordOrder final : public CodedOrder {
 public:
  explicit WordOrder(OrderPtr base) : base_(std::move(base)) {}

  std::strong_ordering compare(const Elem& a, const Elem& b) const override {
    return lex_compare(a.kids(), b.kids(), *base_);
  }
  bool contains(const Elem& a) const override {
    if (a.is_null() || a.tag() != Tag::Word) return false;
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (!base_->contains(a.kid(i))) return false;
      if (i > 0 && base_->less(a.kid(i - 1), a.kid(i))) return false;
    }
    return true;
  }
  std::vector<Elem> enumerate(std::size_t budget) const override {
    std::vector<Elem> out;
    if (budget == 0) return out;
    auto pts = base_->enumerate(budget - 1);
    std::sort(pts.begin(), pts.end(), [&](const Elem& x, const Elem& y) { return base_->less(y, x); });
    std::vector<Elem> cur;
    // entries chosen in non-increasing order from `pts` (sorted descending)
    auto rec = [&](auto&& self, std::size_t from, std::size_t used) -> void {
      out.push_back(Elem::node(Tag::Word, cur));
      for (std::size_t i = from; i < pts.size(); ++i) {
        if (used + 1 + pts[i].code_size() > budget - 1) continue;
        cur.push_back(pts[i]);
        self(self, i, used + 1 + pts[i].code_size());
        cur.pop_back();
      }
    };
    rec(rec, 0, 0);
    sort_by_size_then_order(*this, out);
    return out;
  }
  std::string label() const override { return "w(" + base_->label() + ")"; }

 private:
  OrderPtr base_;
};

class KBOrder final : public CodedOrder {
 public:
  KBOrder(OrderPtr base, std::size_t max_len) : base_(std::move(base)), max_len_(max_len) {}

  std::strong_ordering compare(const Elem& a, const Elem& b) const override {
    return kb_compare(*base_, a.kids(), b.kids());
  }
  bool contains(const Elem& a) const override {
    if (a.is_null() || a.tag() != Tag::Word) return false;
    for (const auto& x : a.kids())
      if (!base_->contains(x)) return false;
    return true;
  }
  std::vector<Elem> enumerate(std::size_t budget) const override {
    std::vector<Elem> out;
    if (budget == 0) return out;
    auto pts = base_->enumerate(budget - 1);
    std::vector<Elem> cur;
    auto rec = [&](auto&& self, std::size_t used) -> void {
      out.push_back(Elem::node(Tag::Word, cur));
      if (cur.size() == max_len_) return;
      for (const auto& p : pts) {
        if (used + 1 + p.code_size() > budget - 1) continue;
        cur.push_back(p);
        self(self, used + 1 + p.code_size());
        cur.pop_back();
      }
    };
    rec(rec, 0);
    sort_by_size_then_order(*this, out);
    return out;
  }
  std::string label() const override { return "kb(" + base_->label() + ")"; }

 private:
  OrderPtr base_;
  std::size_t max_len_;
};

}  // namespace

OrderPtr ordinal_order(std::int64_t hi, std::int64_t lo) {
  if (hi < 0 || lo < 0) throw DecodeError("negative ordinal");
  if (hi == 0 && lo < 64) {
    static const std::vector<OrderPtr> finite = [] {
      std::vector<OrderPtr> t;
      for (std::int64_t i = 0; i < 64; ++i) t.push_back(std::make_shared<OrdinalOrder>(0, i));
      return t;
    }();
    return finite[static_cast<std::size_t>(lo)];
  }
  return std::make_shared<OrdinalOrder>(hi, lo);
}

std::vector<Elem> finite_points(std::size_t n) {
  std::vector<Elem> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Elem::nat(static_cast<std::int64_t>(i)));
  return out;
}

OrderPtr sum_order(OrderPtr left, OrderPtr right) {
  return std::make_shared<SumOrder>(std::move(left), std::move(right));
}
OrderPtr product_order(OrderPtr first, OrderPtr second) {
  return std::make_shared<ProductOrder>(std::move(first), std::move(second));
}
OrderPtr word_order(OrderPtr base) { return std::make_shared<WordOrder>(std::move(base)); }

OrderPtr combine_orders(Combine kind, OrderPtr x, OrderPtr y) {
  switch (kind) {
    case Combine::Sum:
      if (!y) throw std::invalid_argument("sum takes two orders");
      return sum_order(std::move(x), std::move(y));
    case Combine::Product:
      if (!y) throw std::invalid_argument("product takes two orders");
      return product_order(std::move(x), std::move(y));
    case Combine::Word:
      if (y) throw std::invalid_argument("word takes one order");
      return word_order(std::move(x));
  }
  throw std::invalid_argument("unknown combinator");
}

OrderPtr kb_order(OrderPtr base, std::size_t max_length) {
  return std::make_shared<KBOrder>(std::move(base), max_length);
}

std::strong_ordering lex_compare(std::span<const Elem> s, std::span<const Elem> t,
                                 const CodedOrder& entries) {
  std::size_t n = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] == t[i]) continue;
    if (auto c = entries.compare(s[i], t[i]); c != 0) return c;
  }
  return s.size() <=> t.size();
}

std::strong_ordering kb_compare(const CodedOrder& base, std::span<const Elem> s,
                                std::span<const Elem> t) {
  std::size_t n = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] == t[i]) continue;
    if (auto c = base.compare(s[i], t[i]); c != 0) return c;
  }
  // one is a prefix of the other: the longer sequence is smaller
  return t.size() <=> s.size();
}

const Elem& FiniteEmbedding::operator()(const Elem& point) const {
  if (point.tag() != Tag::Ordinal || point.hi() != 0 || point.lo() < 0 ||
      static_cast<std::size_t>(point.lo()) >= images.size())
    throw DecodeError("embedding undefined at " + debug_string(point));
  return images[static_cast<std::size_t>(point.lo())];
}

bool FiniteEmbedding::is_increasing(const CodedOrder& codomain) const {
  for (std::size_t i = 1; i < images.size(); ++i)
    if (!codomain.less(images[i - 1], images[i])) return false;
  return true;
}

FiniteEmbedding increasing_enumeration(const CodedOrder& order, std::vector<Elem> a) {
  std::sort(a.begin(), a.end(), [&](const Elem& x, const Elem& y) { return order.less(x, y); });
  for (std::size_t i = 1; i < a.size(); ++i)
    if (order.compare(a[i - 1], a[i]) == 0)
      throw InvariantViolation("duplicate element " + debug_string(a[i]));
  return FiniteEmbedding{std::move(a)};
}

void sort_unique(const CodedOrder& order, std::vector<Elem>& v) {
  std::sort(v.begin(), v.end(), [&](const Elem& x, const Elem& y) { return order.less(x, y); });
  v.erase(std::unique(v.begin(), v.end(), [&](const Elem& x, const Elem& y) {
            return x == y || order.compare(x, y) == 0;
          }),
          v.end());
}

LinearityAudit audit_linear_indices(std::size_t n, const IndexCompareFn& cmp,
                                    const std::function<std::string(std::size_t)>& describe,
                                    std::vector<std::size_t>* sorted) {
  LinearityAudit audit;
  audit.elements = n;
  auto fail = [&](const std::string& what, std::size_t a, std::size_t b) {
    audit.counterexample = what + ": " + describe(a) + " vs " + describe(b);
    return audit;
  };
  for (std::size_t i = 0; i < n; ++i) {
    ++audit.comparisons;
    if (cmp(i, i) != 0) return fail("irreflexive EQ", i, i);
  }
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  merge_sort(idx, [&](std::size_t a, std::size_t b) { return cmp(a, b) < 0; });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      audit.comparisons += 2;
      auto fwd = cmp(idx[i], idx[j]);
      auto bwd = cmp(idx[j], idx[i]);
      if (fwd == 0 || bwd == 0) return fail("EQ on distinct codes", idx[i], idx[j]);
      if ((fwd < 0) != (bwd > 0)) return fail("antisymmetry", idx[i], idx[j]);
      // a sorted list the relation disagrees with exhibits a cycle
      if (fwd > 0) return fail("transitivity", idx[i], idx[j]);
    }
  }
  if (sorted) *sorted = std::move(idx);
  return audit;
}

LinearityAudit audit_linear_order(std::vector<Elem>& elems, const CompareFn& cmp) {
  {
    std::unordered_set<Elem, ElemHash> seen;
    std::vector<Elem> unique;
    for (auto& e : elems)
      if (seen.insert(e).second) unique.push_back(e);
    elems.swap(unique);
  }
  std::vector<std::size_t> order;
  auto audit = audit_linear_indices(
      elems.size(), [&](std::size_t a, std::size_t b) { return cmp(elems[a], elems[b]); },
      [&](std::size_t a) { return debug_string(elems[a]); }, &order);
  if (audit.ok()) {
    std::vector<Elem> out;
    out.reserve(elems.size());
    for (auto i : order) out.push_back(elems[i]);
    elems.swap(out);
  }
  return audit;
}

}  // namespace collapse
