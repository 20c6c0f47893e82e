#include "collapse/dilator.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace collapse {

std::vector<Elem> AppliedOrder::enumerate(std::size_t budget) const {
  auto pts = x_.enumerate(budget);
  std::sort(pts.begin(), pts.end(), [&](const Elem& a, const Elem& b) { return x_.less(a, b); });
  auto out = d_.enumerate(x_, pts, budget);
  std::sort(out.begin(), out.end(), [&](const Elem& a, const Elem& b) {
    if (a.code_size() != b.code_size()) return a.code_size() < b.code_size();
    return less(a, b);
  });
  return out;
}

std::size_t DilElem::hash() const {
  std::size_t h = trace.payload.hash() ^ (trace.arity * 0x9e3779b97f4a7c15ULL);
  for (const auto& s : support) h = h * 31 + s.hash();
  return h;
}

std::vector<Elem> support(const Predilator& d, const CodedOrder& x, const Elem& a) {
  std::vector<Elem> out;
  d.collect_support(a, out);
  sort_unique(x, out);
  return out;
}

DilElem normal_form(const Predilator& d, const CodedOrder& x, const Elem& raw) {
  DilElem nf;
  nf.support = support(d, x, raw);
  nf.trace.arity = nf.support.size();
  const auto& supp = nf.support;
  nf.trace.payload = d.map(
      [&](const Elem& p) {
        auto it = std::lower_bound(supp.begin(), supp.end(), p,
                                   [&](const Elem& a, const Elem& b) { return x.less(a, b); });
        if (it == supp.end() || x.compare(*it, p) != 0)
          throw InvariantViolation("point outside support: " + debug_string(p));
        return Elem::nat(it - supp.begin());
      },
      raw);
  return nf;
}

Elem denote(const Predilator& d, const DilElem& a) {
  if (a.trace.arity != a.support.size())
    throw InvariantViolation("normal form arity differs from support size");
  FiniteEmbedding e{a.support};
  return d.map([&](const Elem& p) { return e(p); }, a.trace.payload);
}

std::strong_ordering Predilator::compare_placed(std::size_t k, const Elem& a,
                                                std::span<const std::size_t> u, const Elem& b,
                                                std::span<const std::size_t> v) const {
  auto place = [](std::span<const std::size_t> pos) {
    return [pos](const Elem& p) {
      auto i = static_cast<std::size_t>(p.lo());
      if (p.tag() != Tag::Ordinal || p.hi() != 0 || i >= pos.size())
        throw DecodeError("trace point out of range: " + debug_string(p));
      return Elem::nat(static_cast<std::int64_t>(pos[i]));
    };
  };
  auto k_order = finite_order(static_cast<std::int64_t>(k));
  return compare(*k_order, map(place(u), a), map(place(v), b));
}

std::strong_ordering compare_at(const Predilator& d, std::size_t k, const TraceElem& lhs,
                                std::span<const std::size_t> u, const TraceElem& rhs,
                                std::span<const std::size_t> v) {
  if (u.size() != lhs.arity || v.size() != rhs.arity)
    throw InvariantViolation("compare_at: positions do not match trace arity");
  return d.compare_placed(k, lhs.payload, u, rhs.payload, v);
}

std::strong_ordering element_compare(const Predilator& d, const CodedOrder& x, const DilElem& a,
                                     const DilElem& b) {
  if (a == b) return std::strong_ordering::equal;
  for (const auto* s : {&a.support, &b.support})
    for (std::size_t i = 1; i < s->size(); ++i)
      if (!x.less((*s)[i - 1], (*s)[i]))
        throw InvariantViolation("support not sorted: " + debug_string((*s)[i]));
  // merge the two ascending supports, recording positions in the union
  std::vector<std::size_t> u, v;
  std::size_t i = 0, j = 0, k = 0;
  while (i < a.support.size() || j < b.support.size()) {
    std::strong_ordering c = std::strong_ordering::equal;
    if (i == a.support.size())
      c = std::strong_ordering::greater;
    else if (j == b.support.size())
      c = std::strong_ordering::less;
    else if (a.support[i] != b.support[j])
      c = x.compare(a.support[i], b.support[j]);
    if (c <= 0) u.push_back(k), ++i;
    if (c >= 0) v.push_back(k), ++j;
    ++k;
  }
  return compare_at(d, k, a.trace, u, b.trace, v);
}

DilElem apply_embedding(const Predilator& d, const CodedOrder& codomain, const PointMap& f,
                        const DilElem& a) {
  (void)d;
  DilElem out{a.trace, {}};
  out.support.reserve(a.support.size());
  for (const auto& s : a.support) out.support.push_back(f(s));
  for (std::size_t i = 1; i < out.support.size(); ++i)
    if (!codomain.less(out.support[i - 1], out.support[i]))
      throw InvariantViolation("embedding not increasing on the support");
  return out;
}

std::vector<TraceElem> trace_enumerate(const Predilator& d, std::size_t arity, std::size_t budget) {
  auto n = finite_order(static_cast<std::int64_t>(arity));
  auto pts = finite_points(arity);
  std::vector<TraceElem> out;
  std::vector<Elem> raw = d.enumerate(*n, pts, budget);
  std::sort(raw.begin(), raw.end(), [&](const Elem& a, const Elem& b) {
    auto sa = d.payload_size(a), sb = d.payload_size(b);
    if (sa != sb) return sa < sb;
    return d.compare(*n, a, b) < 0;
  });
  for (auto& r : raw)
    if (support(d, *n, r).size() == arity) out.push_back(TraceElem{arity, r});
  return out;
}

bool is_trace(const Predilator& d, const TraceElem& t) {
  auto n = finite_order(static_cast<std::int64_t>(t.arity));
  if (t.payload.is_null() || !d.valid(*n, t.payload)) return false;
  return support(d, *n, t.payload).size() == t.arity;
}

namespace {

std::size_t placed(const Elem& p, std::span<const std::size_t> pos) {
  auto i = static_cast<std::size_t>(p.lo());
  if (p.tag() != Tag::Ordinal || p.hi() != 0 || i >= pos.size())
    throw DecodeError("trace point out of range: " + debug_string(p));
  return pos[i];
}

class OmegaDilator final : public Predilator {
 public:
  std::string name() const override { return "omega"; }

  std::strong_ordering compare(const CodedOrder& x, const Elem& a, const Elem& b) const override {
    return lex_compare(a.kids(), b.kids(), x);
  }
  std::strong_ordering compare_placed(std::size_t, const Elem& a, std::span<const std::size_t> u,
                                      const Elem& b,
                                      std::span<const std::size_t> v) const override {
    std::size_t n = std::min(a.arity(), b.arity());
    for (std::size_t i = 0; i < n; ++i)
      if (auto c = placed(a.kid(i), u) <=> placed(b.kid(i), v); c != 0) return c;
    return a.arity() <=> b.arity();
  }
  Elem map(const PointMap& f, const Elem& a) const override {
    std::vector<Elem> kids;
    kids.reserve(a.arity());
    for (const auto& p : a.kids()) kids.push_back(f(p));
    return Elem::node(Tag::Word, std::move(kids));
  }
  void collect_support(const Elem& a, std::vector<Elem>& out) const override {
    out.insert(out.end(), a.kids().begin(), a.kids().end());
  }
  bool valid(const CodedOrder& x, const Elem& a) const override {
    if (a.is_null() || a.tag() != Tag::Word) return false;
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (!x.contains(a.kid(i))) return false;
      if (i > 0 && x.less(a.kid(i - 1), a.kid(i))) return false;
    }
    return true;
  }
  std::vector<Elem> enumerate(const CodedOrder&, std::span<const Elem> points,
                              std::size_t budget) const override {
    std::vector<Elem> out, cur;
    auto rec = [&](auto&& self, std::size_t top) -> void {
      out.push_back(Elem::node(Tag::Word, cur));
      if (cur.size() == budget) return;
      for (std::size_t i = 0; i < top; ++i) {
        cur.push_back(points[top - 1 - i]);
        self(self, top - i);
        cur.pop_back();
      }
    };
    rec(rec, points.size());
    return out;
  }
  std::size_t payload_size(const Elem& a) const override { return a.arity(); }
  std::size_t max_arity(std::size_t budget) const override { return budget; }

  void write(std::string& out, const Elem& a, const PointWriter& point) const override {
    out += "w[";
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (i) out += ',';
      point(out, a.kid(i));
    }
    out += ']';
  }
  Elem read(Cursor& in, const PointReader& point, const CodedOrder&) const override {
    in.expect("w[");
    std::vector<Elem> kids;
    if (!in.accept("]")) {
      do kids.push_back(point(in));
      while (in.accept(","));
      in.expect("]");
    }
    return Elem::node(Tag::Word, std::move(kids));
  }
};

class AffineDilator final : public Predilator {
 public:
  explicit AffineDilator(OrderPtr y) : y_(std::move(y)) {}

  std::string name() const override { return "affine:" + y_->label(); }

  std::strong_ordering compare(const CodedOrder& x, const Elem& a, const Elem& b) const override {
    if (a.tag() != b.tag())
      return a.tag() == Tag::AffineZero ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.tag() == Tag::AffineZero) return std::strong_ordering::equal;
    if (auto c = y_->compare(a.kid(0), b.kid(0)); c != 0) return c;
    return x.compare(a.kid(1), b.kid(1));
  }
  std::strong_ordering compare_placed(std::size_t, const Elem& a, std::span<const std::size_t> u,
                                      const Elem& b,
                                      std::span<const std::size_t> v) const override {
    if (a.tag() != b.tag())
      return a.tag() == Tag::AffineZero ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.tag() == Tag::AffineZero) return std::strong_ordering::equal;
    if (auto c = y_->compare(a.kid(0), b.kid(0)); c != 0) return c;
    return placed(a.kid(1), u) <=> placed(b.kid(1), v);
  }
  Elem map(const PointMap& f, const Elem& a) const override {
    if (a.tag() == Tag::AffineZero) return a;
    return Elem::node(Tag::AffineOne, {a.kid(0), f(a.kid(1))});
  }
  void collect_support(const Elem& a, std::vector<Elem>& out) const override {
    if (a.tag() == Tag::AffineOne) out.push_back(a.kid(1));
  }
  bool valid(const CodedOrder& x, const Elem& a) const override {
    if (a.is_null()) return false;
    if (a.tag() == Tag::AffineZero) return a.arity() == 0;
    return a.tag() == Tag::AffineOne && a.arity() == 2 && y_->contains(a.kid(0)) &&
           x.contains(a.kid(1));
  }
  std::vector<Elem> enumerate(const CodedOrder&, std::span<const Elem> points,
                              std::size_t budget) const override {
    std::vector<Elem> out{Elem::node(Tag::AffineZero, {})};
    if (budget == 0) return out;
    for (const auto& y : y_->enumerate(budget - 1))
      for (const auto& p : points) out.push_back(Elem::node(Tag::AffineOne, {y, p}));
    return out;
  }
  std::size_t payload_size(const Elem& a) const override {
    return a.tag() == Tag::AffineZero ? 0 : 1 + a.kid(0).code_size();
  }
  std::size_t max_arity(std::size_t) const override { return 1; }

  void write(std::string& out, const Elem& a, const PointWriter& point) const override {
    if (a.tag() == Tag::AffineZero) {
      out += 'o';
      return;
    }
    out += "a(";
    write_ordinal(out, a.kid(0));
    // `a(y)` abbreviates the trace form with x at the first point of a finite order
    if (!(a.kid(1).tag() == Tag::Ordinal && a.kid(1).hi() == 0 && a.kid(1).lo() == 0)) {
      out += ',';
      point(out, a.kid(1));
    }
    out += ')';
  }
  Elem read(Cursor& in, const PointReader& point, const CodedOrder&) const override {
    if (in.accept("o")) return Elem::node(Tag::AffineZero, {});
    in.expect("a(");
    Elem y = read_ordinal(in);
    Elem x = Elem::nat(0);
    if (in.accept(",")) x = point(in);
    in.expect(")");
    return Elem::node(Tag::AffineOne, {y, x});
  }

 private:
  OrderPtr y_;
};

class ComposedDilator final : public Predilator {
 public:
  ComposedDilator(DilatorPtr outer, DilatorPtr inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {}

  std::string name() const override {
    return "compose(" + outer_->name() + "," + inner_->name() + ")";
  }
  std::strong_ordering compare(const CodedOrder& x, const Elem& a, const Elem& b) const override {
    AppliedOrder dx(*inner_, x);
    return outer_->compare(dx, a, b);
  }
  Elem map(const PointMap& f, const Elem& a) const override {
    return outer_->map([&](const Elem& rho) { return inner_->map(f, rho); }, a);
  }
  void collect_support(const Elem& a, std::vector<Elem>& out) const override {
    std::vector<Elem> rhos;
    outer_->collect_support(a, rhos);
    for (const auto& rho : rhos) inner_->collect_support(rho, out);
  }
  bool valid(const CodedOrder& x, const Elem& a) const override {
    AppliedOrder dx(*inner_, x);
    return outer_->valid(dx, a);
  }
  std::vector<Elem> enumerate(const CodedOrder& x, std::span<const Elem> points,
                              std::size_t budget) const override {
    auto rhos = inner_->enumerate(x, points, budget);
    AppliedOrder dx(*inner_, x);
    sort_unique(dx, rhos);
    return outer_->enumerate(dx, rhos, budget);
  }
  std::size_t payload_size(const Elem& a) const override {
    std::vector<Elem> rhos;
    outer_->collect_support(a, rhos);
    std::size_t s = outer_->payload_size(a);
    for (const auto& rho : rhos) s = std::max(s, inner_->payload_size(rho));
    return s;
  }
  std::size_t max_arity(std::size_t budget) const override {
    return outer_->max_arity(budget) * inner_->max_arity(budget);
  }
  void write(std::string& out, const Elem& a, const PointWriter& point) const override {
    outer_->write(out, a, [&](std::string& o, const Elem& rho) { inner_->write(o, rho, point); });
  }
  Elem read(Cursor& in, const PointReader& point, const CodedOrder& x) const override {
    AppliedOrder dx(*inner_, x);
    return outer_->read(in, [&](Cursor& c) { return inner_->read(c, point, x); }, dx);
  }
  PointReader finite_point_reader() const override { return inner_->finite_point_reader(); }
  PointWriter finite_point_writer() const override { return inner_->finite_point_writer(); }

 private:
  DilatorPtr outer_, inner_;
};

/// All strictly increasing maps n -> m, as image index lists.
std::vector<std::vector<std::size_t>> embeddings(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i + (n - cur.size()) <= m; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

PointMap index_map(const std::vector<std::size_t>& f) {
  return [&f](const Elem& p) {
    auto i = static_cast<std::size_t>(p.lo());
    if (p.tag() != Tag::Ordinal || p.hi() != 0 || i >= f.size())
      throw DecodeError("embedding undefined at " + debug_string(p));
    return Elem::nat(static_cast<std::int64_t>(f[i]));
  };
}

std::string show(const std::vector<std::size_t>& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + "]";
}

}  // namespace

DilatorPtr omega_dilator() { return std::make_shared<OmegaDilator>(); }
DilatorPtr affine_dilator(OrderPtr y) { return std::make_shared<AffineDilator>(std::move(y)); }
DilatorPtr compose(DilatorPtr outer, DilatorPtr inner) {
  return std::make_shared<ComposedDilator>(std::move(outer), std::move(inner));
}

std::string LawReport::summary() const {
  std::ostringstream os;
  os << dilator << " max-order=" << max_order << " budget=" << budget << ": "
     << (ok() ? "pass" : "FAIL") << " (" << elements << " elements, " << embeddings
     << " embeddings, " << checks << " checks)";
  if (violation) os << "\n  violation: " << *violation;
  if (lint) os << "\n  lint: " << *lint;
  return os.str();
}

LawReport check_predilator_laws(const Predilator& d, std::size_t max_order, std::size_t budget,
                                bool monotonicity_lint) {
  LawReport rep;
  rep.dilator = d.name();
  rep.max_order = max_order;
  rep.budget = budget;

  std::vector<OrderPtr> orders;
  std::vector<std::vector<Elem>> elems;
  std::vector<std::unordered_set<Elem, ElemHash>> elem_sets;

  auto fail = [&](std::string law, const std::string& detail) {
    rep.violation = std::move(law) + ": " + detail;
    return rep;
  };

  for (std::size_t n = 0; n <= max_order; ++n) {
    orders.push_back(finite_order(static_cast<std::int64_t>(n)));
    const auto& x = *orders.back();
    auto pts = finite_points(n);
    auto list = d.enumerate(x, pts, budget);
    for (const auto& a : list) {
      ++rep.checks;
      if (!d.valid(x, a)) return fail("validity", debug_string(a) + " in D(" + std::to_string(n) + ")");
      if (d.payload_size(a) > budget) return fail("budget", debug_string(a));
      auto nf = normal_form(d, x, a);
      if (!is_trace(d, nf.trace))
        return fail("normal form", "trace of " + debug_string(a) + " lacks full support");
      if (denote(d, nf) != a) return fail("normal form", "does not re-denote " + debug_string(a));
    }
    auto audit = audit_linear_order(list, [&](const Elem& a, const Elem& b) { return d.compare(x, a, b); });
    rep.checks += audit.comparisons;
    if (!audit.ok()) return fail("linear order on D(" + std::to_string(n) + ")", *audit.counterexample);
    rep.elements += list.size();
    // placement contract: comparing normal forms at positions agrees with D(n);
    // all pairs on small fragments, neighbours in the sorted list otherwise
    std::vector<DilElem> nfs;
    std::vector<std::vector<std::size_t>> pos;
    for (const auto& a : list) {
      nfs.push_back(normal_form(d, x, a));
      std::vector<std::size_t> p;
      for (const auto& e : nfs.back().support) p.push_back(static_cast<std::size_t>(e.lo()));
      pos.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::size_t hi = list.size() <= 1000 ? list.size() : std::min(list.size(), i + 2);
      for (std::size_t j = i; j < hi; ++j) {
        ++rep.checks;
        auto c = compare_at(d, n, nfs[i].trace, pos[i], nfs[j].trace, pos[j]);
        if (c != d.compare(x, list[i], list[j]))
          return fail("placement contract",
                      debug_string(list[i]) + " vs " + debug_string(list[j]) + " in D(" +
                          std::to_string(n) + ")");
      }
    }
    elem_sets.emplace_back(list.begin(), list.end());
    elems.push_back(std::move(list));
  }

  for (std::size_t n = 0; n <= max_order; ++n) {
    for (std::size_t m = n; m <= max_order; ++m) {
      const auto& xm = *orders[m];
      for (const auto& f : embeddings(n, m)) {
        ++rep.embeddings;
        auto fmap = index_map(f);
        std::unordered_set<Elem, ElemHash> image;
        std::vector<Elem> mapped;
        mapped.reserve(elems[n].size());
        for (const auto& a : elems[n]) {
          Elem b = d.map(fmap, a);
          rep.checks += 3;
          if (!d.valid(xm, b) || !elem_sets[m].count(b))
            return fail("functor", "D(" + show(f) + ") maps " + debug_string(a) +
                                       " outside the enumerated D(" + std::to_string(m) + ")");
          if (n == m && b != a) return fail("functor identity", debug_string(a));
          // naturality: supp(D(f)(a)) = f[supp(a)]
          auto sa = support(d, *orders[n], a);
          std::vector<Elem> fs;
          for (const auto& p : sa) fs.push_back(fmap(p));
          if (support(d, xm, b) != fs)
            return fail("support naturality", "f=" + show(f) + " a=" + debug_string(a));
          image.insert(b);
          mapped.push_back(std::move(b));
        }
        // order preservation: the sorted D(n) must map to an increasing list
        for (std::size_t i = 1; i < mapped.size(); ++i) {
          ++rep.checks;
          if (d.compare(xm, mapped[i - 1], mapped[i]) >= 0)
            return fail("order preservation",
                        "f=" + show(f) + " on " + debug_string(elems[n][i - 1]) + " < " +
                            debug_string(elems[n][i]));
        }
        // support condition: rng D(f) = {b | supp(b) in rng f}
        std::unordered_set<Elem, ElemHash> range_points;
        for (auto i : f) range_points.insert(Elem::nat(static_cast<std::int64_t>(i)));
        for (const auto& b : elems[m]) {
          ++rep.checks;
          auto sb = support(d, xm, b);
          bool inside = std::all_of(sb.begin(), sb.end(),
                                    [&](const Elem& p) { return range_points.count(p) > 0; });
          if (inside != (image.count(b) > 0))
            return fail(inside ? "support condition (supp in rng f, not in rng D(f))"
                               : "support condition (rng D(f) escapes rng f)",
                        "f=" + show(f) + " b=" + debug_string(b));
        }
        // composition: D(g o f) = D(g) o D(f)
        for (std::size_t k = m; k <= max_order; ++k) {
          for (const auto& g : embeddings(m, k)) {
            std::vector<std::size_t> gf;
            for (auto i : f) gf.push_back(g[i]);
            auto gmap = index_map(g);
            auto gfmap = index_map(gf);
            for (std::size_t i = 0; i < elems[n].size(); ++i) {
              ++rep.checks;
              if (d.map(gfmap, elems[n][i]) != d.map(gmap, mapped[i]))
                return fail("functor composition",
                            "f=" + show(f) + " g=" + show(g) + " a=" + debug_string(elems[n][i]));
            }
          }
        }
        if (monotonicity_lint && !rep.lint) {
          for (const auto& g : embeddings(n, m)) {
            bool pointwise = true;
            for (std::size_t i = 0; i < n; ++i) pointwise = pointwise && f[i] <= g[i];
            if (!pointwise) continue;
            auto gmap = index_map(g);
            for (std::size_t i = 0; i < elems[n].size() && !rep.lint; ++i)
              if (d.compare(xm, mapped[i], d.map(gmap, elems[n][i])) > 0)
                rep.lint = "monotonicity: f=" + show(f) + " <= g=" + show(g) +
                           " but D(f)(a) > D(g)(a) for a=" + debug_string(elems[n][i]);
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace collapse
