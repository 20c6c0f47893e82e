#include "collapse/gamma.hpp"

#include <algorithm>
#include <map>

namespace collapse::gamma {

namespace {

const Elem& zero_term() {
  static const Elem z = Elem::node(Tag::GammaZero, {});
  return z;
}

bool is_term_tag(Tag t) {
  return t == Tag::GammaZero || t == Tag::GammaSc || t == Tag::GammaPv || t == Tag::GammaSeq;
}

// Well-shaped in Gamma^+(X): tags and arities only.
bool well_shaped(const Elem& t) {
  if (t.is_null() || !is_term_tag(t.tag())) return false;
  switch (t.tag()) {
    case Tag::GammaZero: return t.arity() == 0;
    case Tag::GammaSc: return t.arity() == 1;
    case Tag::GammaPv: return t.arity() == 2 && well_shaped(t.kid(0)) && well_shaped(t.kid(1));
    default:
      if (t.arity() < 2) return false;
      for (const auto& e : t.kids())
        if (!well_shaped(e)) return false;
      return true;
  }
}

bool leq(const CodedOrder& x, const Elem& s, const Elem& t);

// The decision procedure, written once over a term view so that it runs both
// on Elem codes and on interned fragment tables. A view supplies same(a, b),
// tag(a), kid(a, i), entries(a) (the term as a sequence of H-terms) and
// point_less(a, b) for two Gamma_x terms, and lt(a, b) for the recursive calls.
template <class V>
bool less_in(const V& v, typename V::Ref s, typename V::Ref t);

template <class V>
bool leq_in(const V& v, typename V::Ref s, typename V::Ref t) {
  return v.same(s, t) || v.lt(s, t);
}

template <class V>
bool less_h(const V& v, typename V::Ref r, typename V::Ref t) {
  if (v.tag(t) == Tag::GammaSc) {
    if (v.tag(r) == Tag::GammaSc) return v.point_less(r, t);
    return v.lt(v.kid(r, 0), t) && v.lt(v.kid(r, 1), t);
  }
  auto s = v.kid(t, 0);
  auto tt = v.kid(t, 1);
  if (v.tag(r) == Tag::GammaSc) return leq_in(v, r, s) || leq_in(v, r, tt);
  auto s2 = v.kid(r, 0);
  auto t2 = v.kid(r, 1);
  // s' = s makes the first bullet false (less is irreflexive on identical terms)
  if (v.same(s2, s)) return v.lt(t2, tt) || leq_in(v, r, tt);
  return (v.lt(s2, s) && v.lt(t2, t)) || leq_in(v, r, tt);
}

template <class V>
bool less_in(const V& v, typename V::Ref s, typename V::Ref t) {
  if (v.same(s, t)) return false;
  Tag a = v.tag(s), b = v.tag(t);
  bool hs = a == Tag::GammaSc || a == Tag::GammaPv;
  bool ht = b == Tag::GammaSc || b == Tag::GammaPv;
  if (hs && ht) return less_h(v, s, t);
  auto es = v.entries(s);
  auto et = v.entries(t);
  std::size_t n = std::min(es.size(), et.size());
  for (std::size_t j = 0; j < n; ++j)
    if (!v.same(es[j], et[j])) return v.lt(es[j], et[j]);
  return es.size() < et.size();
}

struct ElemView {
  using Ref = const Elem&;
  const CodedOrder& x;

  static bool same(const Elem& a, const Elem& b) { return a == b; }
  static Tag tag(const Elem& a) { return a.tag(); }
  static const Elem& kid(const Elem& a, std::size_t i) { return a.kid(i); }
  static std::span<const Elem> entries(const Elem& t) {
    if (t.tag() == Tag::GammaZero) return {};
    if (t.tag() == Tag::GammaSeq) return t.kids();
    return {&t, 1};
  }
  bool point_less(const Elem& a, const Elem& b) const { return x.less(a.kid(0), b.kid(0)); }
  bool lt(const Elem& a, const Elem& b) const { return less_in(*this, a, b); }
};

void collect(const Elem& t, std::vector<Elem>& out) {
  switch (t.tag()) {
    case Tag::GammaZero: return;
    case Tag::GammaSc: out.push_back(t.kid(0)); return;
    default:
      for (const auto& k : t.kids()) collect(k, out);
  }
}

bool leq(const CodedOrder& x, const Elem& s, const Elem& t) { return leq_in(ElemView{x}, s, t); }

}  // namespace

Elem zero() { return zero_term(); }
Elem sc(const Elem& x) { return Elem::node(Tag::GammaSc, {x}); }

bool is_zero(const Elem& t) { return t.tag() == Tag::GammaZero; }
bool is_sc(const Elem& t) { return t.tag() == Tag::GammaSc; }
bool is_h(const Elem& t) { return t.tag() == Tag::GammaSc || t.tag() == Tag::GammaPv; }

Elem pv(const CodedOrder& x, const Elem& s, const Elem& t) {
  if (!leq(x, h(t), s)) throw ValidationError("pv(s,t) needs h(t) <= s");
  if (is_zero(t) && is_sc(s)) throw ValidationError("pv(s,0) needs s outside SC");
  return Elem::node(Tag::GammaPv, {s, t});
}

Elem seq(const CodedOrder& x, std::vector<Elem> es) {
  if (es.empty()) return zero();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (!is_h(es[i])) throw ValidationError("sequence entries must be in H");
    if (i > 0 && less(x, es[i - 1], es[i])) throw ValidationError("sequence entries must be non-increasing");
  }
  if (es.size() == 1) return es[0];
  return Elem::node(Tag::GammaSeq, std::move(es));
}

std::size_t l_measure(const Elem& t) {
  switch (t.tag()) {
    case Tag::GammaZero:
    case Tag::GammaSc: return 0;
    default: {
      std::size_t l = 1;
      for (const auto& k : t.kids()) l += l_measure(k);
      return l;
    }
  }
}

Elem h(const Elem& t) {
  if (t.tag() == Tag::GammaSc) return t;
  if (t.tag() == Tag::GammaPv) return t.kid(0);
  return zero();
}

std::vector<Elem> entries(const Elem& t) {
  if (is_zero(t)) return {};
  if (is_h(t)) return {t};
  return {t.kids().begin(), t.kids().end()};
}

bool less(const CodedOrder& x, const Elem& s, const Elem& t) { return less_in(ElemView{x}, s, t); }

std::strong_ordering compare(const CodedOrder& x, const Elem& s, const Elem& t) {
  if (s == t) return std::strong_ordering::equal;
  return less(x, s, t) ? std::strong_ordering::less : std::strong_ordering::greater;
}

bool is_member(const CodedOrder& x, const Elem& t) {
  if (!well_shaped(t)) return false;
  switch (t.tag()) {
    case Tag::GammaZero: return true;
    case Tag::GammaSc: return x.contains(t.kid(0));
    case Tag::GammaPv: {
      const Elem& s = t.kid(0);
      const Elem& u = t.kid(1);
      if (!is_member(x, s) || !is_member(x, u)) return false;
      return leq(x, h(u), s) && (!is_zero(u) || !is_sc(s));
    }
    default:
      for (std::size_t i = 0; i < t.arity(); ++i) {
        if (!is_h(t.kid(i)) || !is_member(x, t.kid(i))) return false;
        if (i > 0 && less(x, t.kid(i - 1), t.kid(i))) return false;
      }
      return true;
  }
}

Elem map(const PointMap& f, const Elem& t) {
  switch (t.tag()) {
    case Tag::GammaZero: return t;
    case Tag::GammaSc: return sc(f(t.kid(0)));
    default: {
      std::vector<Elem> kids;
      kids.reserve(t.arity());
      for (const auto& k : t.kids()) kids.push_back(map(f, k));
      return Elem::node(t.tag(), std::move(kids));
    }
  }
}

std::vector<Elem> support(const CodedOrder& x, const Elem& t) {
  std::vector<Elem> out;
  collect(t, out);
  sort_unique(x, out);
  return out;
}

Elem phi(const CodedOrder& x, const Elem& s, const Elem& t) {
  if (less(x, s, h(t))) return t;
  if (is_sc(s) && is_zero(t)) return s;
  return pv(x, s, t);
}

Elem add(const CodedOrder& x, const Elem& s, const Elem& t) {
  auto a = entries(s);
  auto b = entries(t);
  std::size_t i = a.size();
  if (!a.empty() && !b.empty() && !leq(x, b[0], a.back())) {
    i = 0;
    while (i < a.size() && !less(x, a[i], b[0])) ++i;
  }
  a.resize(i);
  a.insert(a.end(), b.begin(), b.end());
  return seq(x, std::move(a));
}

Elem nat(std::size_t n) {
  if (n == 0) return zero();
  Elem one = Elem::node(Tag::GammaPv, {zero_term(), zero_term()});
  if (n == 1) return one;
  return Elem::node(Tag::GammaSeq, std::vector<Elem>(n, one));
}

std::optional<std::size_t> as_nat(const Elem& t) {
  static const Elem one = nat(1);
  for (const auto& e : entries(t))
    if (e != one) return std::nullopt;
  return entries(t).size();
}

Elem omega_times(const CodedOrder& x, const Elem& t) {
  switch (t.tag()) {
    case Tag::GammaZero:
    case Tag::GammaSc: return t;
    case Tag::GammaPv:
      if (is_zero(t.kid(0))) return pv(x, zero(), add(x, nat(1), t.kid(1)));
      return t;
    default: {
      std::vector<Elem> es;
      for (const auto& e : t.kids()) es.push_back(omega_times(x, e));
      return seq(x, std::move(es));
    }
  }
}

std::vector<Elem> enumerate_members(const CodedOrder& x, std::span<const Elem> points,
                                    std::size_t max_l, std::size_t max_seq_len) {
  std::vector<std::vector<Elem>> level(max_l + 1);
  std::vector<std::vector<Elem>> h_level(max_l + 1);
  level[0].push_back(zero());
  for (const auto& p : points) {
    level[0].push_back(sc(p));
    h_level[0].push_back(sc(p));
  }
  auto by_order = [&](const Elem& a, const Elem& b) { return less(x, a, b); };
  for (std::size_t l = 1; l <= max_l; ++l) {
    for (std::size_t a = 0; a < l; ++a) {
      for (const auto& s : level[a])
        for (const auto& t : level[l - 1 - a])
          if (leq(x, h(t), s) && (!is_zero(t) || !is_sc(s)))
            h_level[l].push_back(Elem::node(Tag::GammaPv, {s, t}));
    }
    level[l] = h_level[l];
    // sequences: non-increasing H entries with L summing to l - 1
    std::vector<std::pair<Elem, std::size_t>> hs;
    for (std::size_t a = 0; a < l; ++a)
      for (const auto& e : h_level[a]) hs.emplace_back(e, a);
    std::sort(hs.begin(), hs.end(), [&](const auto& p, const auto& q) { return by_order(q.first, p.first); });
    std::vector<Elem> cur;
    auto rec = [&](auto&& self, std::size_t from, std::size_t left) -> void {
      if (cur.size() >= 2 && left == 0) level[l].push_back(Elem::node(Tag::GammaSeq, cur));
      if (cur.size() == max_seq_len) return;
      for (std::size_t i = from; i < hs.size(); ++i) {
        if (hs[i].second > left) continue;
        cur.push_back(hs[i].first);
        self(self, i, left - hs[i].second);
        cur.pop_back();
      }
    };
    rec(rec, 0, l - 1);
    std::sort(h_level[l].begin(), h_level[l].end(), by_order);
  }
  std::vector<Elem> out;
  for (auto& lv : level) {
    std::sort(lv.begin(), lv.end(), by_order);
    out.insert(out.end(), lv.begin(), lv.end());
  }
  return out;
}

void write(std::string& out, const Elem& t, const PointWriter& point) {
  switch (t.tag()) {
    case Tag::GammaZero: out += '0'; return;
    case Tag::GammaSc:
      out += "G(";
      point(out, t.kid(0));
      out += ')';
      return;
    case Tag::GammaPv:
      out += "pv(";
      write(out, t.kid(0), point);
      out += ',';
      write(out, t.kid(1), point);
      out += ')';
      return;
    default:
      if (auto n = as_nat(t)) {
        out += "n:" + std::to_string(*n);
        return;
      }
      out += '<';
      for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) out += ',';
        write(out, t.kid(i), point);
      }
      out += '>';
  }
}

namespace {

Elem read_checked(Cursor& in, const PointReader& point, const CodedOrder& x) {
  auto pair = [&](auto&& fn) {
    Elem s = read_checked(in, point, x);
    in.expect(",");
    Elem t = read_checked(in, point, x);
    in.expect(")");
    return fn(s, t);
  };
  if (in.accept("0")) return zero();
  if (in.accept("G(")) {
    Elem p = point(in);
    in.expect(")");
    if (!x.contains(p)) throw ValidationError("point outside " + x.label() + ": " + debug_string(p));
    return sc(p);
  }
  if (in.accept("pv(")) return pair([&](const Elem& s, const Elem& t) { return pv(x, s, t); });
  if (in.accept("phi(")) return pair([&](const Elem& s, const Elem& t) { return phi(x, s, t); });
  if (in.accept("add(")) return pair([&](const Elem& s, const Elem& t) { return add(x, s, t); });
  if (in.accept("w*(")) {
    Elem t = read_checked(in, point, x);
    in.expect(")");
    return omega_times(x, t);
  }
  if (in.accept("n:")) return nat(in.read_uint());
  if (in.accept("<")) {
    std::vector<Elem> es;
    do es.push_back(read_checked(in, point, x));
    while (in.accept(","));
    in.expect(">");
    if (es.size() < 2) throw ValidationError("<...> needs at least two entries");
    return seq(x, std::move(es));
  }
  in.fail("Gamma term (0, G(, pv(, phi(, add(, w*(, n:, <)");
}

class GammaOrder final : public CodedOrder {
 public:
  GammaOrder(OrderPtr x, std::size_t cap) : x_(std::move(x)), cap_(cap) {}
  std::strong_ordering compare(const Elem& a, const Elem& b) const override {
    return gamma::compare(*x_, a, b);
  }
  bool contains(const Elem& a) const override { return is_member(*x_, a); }
  std::vector<Elem> enumerate(std::size_t budget) const override {
    auto pts = x_->enumerate(budget);
    sort_unique(*x_, pts);
    return enumerate_members(*x_, pts, budget, cap_);
  }
  std::string label() const override { return "Gamma(" + x_->label() + ")"; }

 private:
  OrderPtr x_;
  std::size_t cap_;
};

class GammaDilator final : public Predilator {
 public:
  explicit GammaDilator(std::size_t cap) : cap_(cap) {}
  std::string name() const override { return "gamma"; }
  std::strong_ordering compare(const CodedOrder& x, const Elem& a, const Elem& b) const override {
    return gamma::compare(x, a, b);
  }
  Elem map(const PointMap& f, const Elem& a) const override { return gamma::map(f, a); }
  void collect_support(const Elem& a, std::vector<Elem>& out) const override { collect(a, out); }
  bool valid(const CodedOrder& x, const Elem& a) const override { return is_member(x, a); }
  std::vector<Elem> enumerate(const CodedOrder& x, std::span<const Elem> points,
                              std::size_t budget) const override {
    return enumerate_members(x, points, budget, cap_);
  }
  std::size_t payload_size(const Elem& a) const override { return l_measure(a); }
  std::size_t max_arity(std::size_t budget) const override {
    // most support points a term of measure <= budget can carry
    std::vector<std::size_t> best(budget + 1, 1);
    for (std::size_t l = 1; l <= budget; ++l) {
      std::size_t b = best[l - 1];
      for (std::size_t a = 0; a < l; ++a) b = std::max(b, best[a] + best[l - 1 - a]);
      // cap entries, total measure l - 1
      std::vector<std::size_t> part(l, 0);
      for (std::size_t k = 0; k < cap_; ++k) {
        std::vector<std::size_t> next(l, 0);
        for (std::size_t s = 0; s < l; ++s)
          for (std::size_t e = 0; e + s < l; ++e) next[s + e] = std::max(next[s + e], part[s] + best[e]);
        part = next;
      }
      b = std::max(b, part[l - 1]);
      best[l] = b;
    }
    return best[budget];
  }
  void write(std::string& out, const Elem& a, const PointWriter& point) const override {
    gamma::write(out, a, point);
  }
  Elem read(Cursor& in, const PointReader& point, const CodedOrder& x) const override {
    return gamma::read(in, point, x);
  }
  PointReader finite_point_reader() const override { return read_var_point; }
  PointWriter finite_point_writer() const override { return write_var_point; }

 private:
  std::size_t cap_;
};

}  // namespace

Elem read(Cursor& in, const PointReader& point, const CodedOrder& x) {
  return read_checked(in, point, x);
}

struct TableView {
  using Ref = std::uint32_t;
  const Fragment& f;

  static bool same(Ref a, Ref b) { return a == b; }
  Tag tag(Ref a) const { return f.tags_[a]; }
  Ref kid(Ref a, std::size_t i) const { return f.flat_[f.first_[a] + i]; }
  std::span<const Ref> entries(Ref a) const { return {f.flat_.data() + f.entry_[a], f.count_[a]}; }
  bool point_less(Ref a, Ref b) const { return f.x_->less(f.terms_[a].kid(0), f.terms_[b].kid(0)); }
  bool lt(Ref a, Ref b) const { return less_in(*this, a, b); }
};

// One unfolding of the procedure, with the recursive calls answered by ranks.
struct RankView : TableView {
  const std::vector<std::uint32_t>& rank;
  bool lt(Ref a, Ref b) const { return rank[a] < rank[b]; }
};

Fragment::Fragment(OrderPtr x, const std::vector<Elem>& members) : x_(std::move(x)) {
  for (const auto& m : members) intern(m);
}

std::uint32_t Fragment::intern(const Elem& t) {
  if (auto it = index_.find(t); it != index_.end()) return it->second;
  std::vector<std::uint32_t> kids;
  if (t.tag() == Tag::GammaPv || t.tag() == Tag::GammaSeq)
    for (const auto& k : t.kids()) kids.push_back(intern(k));
  auto id = static_cast<std::uint32_t>(terms_.size());
  terms_.push_back(t);
  tags_.push_back(t.tag());
  first_.push_back(static_cast<std::uint32_t>(flat_.size()));
  flat_.insert(flat_.end(), kids.begin(), kids.end());
  switch (t.tag()) {
    case Tag::GammaZero:
      entry_.push_back(0);
      count_.push_back(0);
      break;
    case Tag::GammaSeq:
      entry_.push_back(first_.back());
      count_.push_back(static_cast<std::uint32_t>(kids.size()));
      break;
    default:
      entry_.push_back(static_cast<std::uint32_t>(flat_.size()));
      count_.push_back(1);
      flat_.push_back(id);
  }
  index_.emplace(t, id);
  return id;
}

std::optional<std::size_t> Fragment::index_of(const Elem& t) const {
  if (auto it = index_.find(t); it != index_.end()) return it->second;
  return std::nullopt;
}

bool Fragment::less(std::size_t a, std::size_t b) const {
  return less_in(TableView{*this}, static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
}

std::strong_ordering Fragment::compare(std::size_t a, std::size_t b) const {
  if (a == b) return std::strong_ordering::equal;
  return less(a, b) ? std::strong_ordering::less : std::strong_ordering::greater;
}

LinearityAudit Fragment::audit(std::vector<std::size_t>* sorted) const {
  LinearityAudit audit;
  const std::size_t n = size();
  audit.elements = n;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return less(a, b); });
  std::vector<std::uint32_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[idx[i]] = static_cast<std::uint32_t>(i);
  RankView v{TableView{*this}, rank};
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      ++audit.comparisons;
      if (less_in(v, a, b) != (rank[a] < rank[b])) {
        audit.counterexample = std::string(rank[a] < rank[b] ? "not below" : "unexpectedly below") +
                               ": " + debug_string(terms_[a]) + " vs " + debug_string(terms_[b]);
        return audit;
      }
    }
  }
  if (sorted) *sorted = std::move(idx);
  return audit;
}

OrderPtr order(OrderPtr x, std::size_t max_seq_len) {
  return std::make_shared<GammaOrder>(std::move(x), max_seq_len);
}

DilatorPtr dilator(std::size_t max_seq_len) { return std::make_shared<GammaDilator>(max_seq_len); }

}  // namespace collapse::gamma
