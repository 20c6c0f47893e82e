#include "collapse/psi.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace collapse {

namespace {

void add_unique(std::vector<DilElem>& out, std::unordered_set<DilElem, DilElemHash>& seen,
                const std::vector<DilElem>& more) {
  for (const auto& d : more)
    if (seen.insert(d).second) out.push_back(d);
}

std::string show_pair(const Elem& alpha, const DilElem& tau) {
  std::ostringstream os;
  os << "(" << debug_string(alpha) << ", " << debug_string(tau.trace.payload) << "@{";
  for (std::size_t i = 0; i < tau.support.size(); ++i)
    os << (i ? "," : "") << debug_string(tau.support[i]);
  os << "})";
  return os.str();
}

std::strong_ordering pi_compare(const CollapseHandle& h, const std::pair<Elem, DilElem>& a,
                                const std::pair<Elem, DilElem>& b) {
  if (auto c = h.nu().compare(a.first, b.first); c != 0) return c;
  return element_compare(h.dilator(), h.order(), a.second, b.second);
}

}  // namespace

std::vector<DilElem> g_of_point(const CollapseHandle& h, const Elem& gamma, const Elem& t) {
  auto [alpha, tau] = h.pi(t);
  if (h.nu().less(alpha, gamma)) return {};
  std::vector<DilElem> out{tau};
  std::unordered_set<DilElem, DilElemHash> seen{tau};
  add_unique(out, seen, g_of_elem(h, gamma, tau));
  return out;
}

std::vector<DilElem> g_of_elem(const CollapseHandle& h, const Elem& gamma, const DilElem& tau) {
  std::vector<DilElem> out;
  std::unordered_set<DilElem, DilElemHash> seen;
  for (const auto& s : tau.support) add_unique(out, seen, g_of_point(h, gamma, s));
  return out;
}

std::vector<Elem> e_of_point(const CollapseHandle& h, const Elem& alpha, const Elem& t) {
  auto [gamma, tau] = h.pi(t);
  if (h.nu().leq(gamma, alpha)) return {t};
  return e_of_elem(h, alpha, tau);
}

std::vector<Elem> e_of_elem(const CollapseHandle& h, const Elem& alpha, const DilElem& tau) {
  std::vector<Elem> out;
  std::unordered_set<Elem, ElemHash> seen;
  for (const auto& s : tau.support)
    for (auto& r : e_of_point(h, alpha, s))
      if (seen.insert(r).second) out.push_back(r);
  return out;
}

bool range_condition(const CollapseHandle& h, const Elem& alpha, const DilElem& tau) {
  for (const auto& rho : g_of_elem(h, alpha, tau))
    if (element_compare(h.dilator(), h.order(), rho, tau) >= 0) return false;
  return true;
}

CheckReport check_range_condition(const CollapseHandle& h,
                                  const std::vector<std::pair<Elem, DilElem>>& sample) {
  CheckReport r{"range-condition", 0, {}};
  for (const auto& [alpha, tau] : sample) {
    ++r.checks;
    auto t = h.psi_inv(alpha, tau);
    bool cond = range_condition(h, alpha, tau);
    if (t.has_value() != cond) {
      r.violation = "psi_inv " + std::string(t ? "defined" : "undefined") + " but G_alpha(tau) " +
                    (cond ? "below" : "not below") + " tau at " + show_pair(alpha, tau);
      return r;
    }
    if (t) {
      auto back = h.pi(*t);
      if (back.first != alpha || !(back.second == tau)) {
        r.violation = "pi(psi_inv(x)) != x at " + show_pair(alpha, tau);
        return r;
      }
    }
  }
  return r;
}

std::vector<std::pair<Elem, DilElem>> range_grid(const CollapseHandle& h, std::vector<Elem> points,
                                                 const std::vector<Elem>& levels, std::size_t width,
                                                 std::size_t budget, std::size_t limit) {
  const auto& x = h.order();
  sort_unique(x, points);
  if (points.size() > width) points.resize(width);
  std::vector<std::pair<Elem, DilElem>> out;
  std::size_t n = 0;
  for (const auto& raw : h.dilator().enumerate(x, points, budget)) {
    if (n++ == limit) break;
    auto tau = normal_form(h.dilator(), x, raw);
    for (const auto& a : levels) out.emplace_back(a, tau);
  }
  return out;
}

std::vector<std::pair<Elem, DilElem>> extension_grid(const CollapseHandle& h,
                                                     const std::vector<Elem>& points,
                                                     const std::vector<Elem>& levels,
                                                     std::size_t rounds, std::size_t budget) {
  const auto& x = h.order();
  std::vector<std::pair<Elem, DilElem>> out;
  std::unordered_set<Elem, ElemHash> seen(points.begin(), points.end());
  std::vector<Elem> frontier = points;
  for (std::size_t round = 0; round <= rounds && !frontier.empty(); ++round) {
    std::vector<Elem> next;
    for (const auto& p : frontier) {
      for (const auto& raw : h.dilator().enumerate(x, {&p, 1}, budget)) {
        auto tau = normal_form(h.dilator(), x, raw);
        if (tau.support.size() != 1) continue;
        for (const auto& a : levels) {
          out.emplace_back(a, tau);
          if (round < rounds)
            if (auto t = h.psi_inv(a, tau); t && seen.insert(*t).second) next.push_back(*t);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

CheckReport check_pi_embedding(const CollapseHandle& h, const std::vector<Elem>& points) {
  CheckReport r{"pi-embedding", 0, {}};
  std::vector<std::pair<Elem, DilElem>> images;
  images.reserve(points.size());
  for (const auto& p : points) images.push_back(h.pi(p));
  for (std::size_t i = 0; i < points.size(); ++i) {
    // ⊲ is acyclic: no point is reachable from its own children
    std::vector<Elem> stack = images[i].second.support;
    std::unordered_set<Elem, ElemHash> seen;
    while (!stack.empty()) {
      Elem s = stack.back();
      stack.pop_back();
      ++r.checks;
      if (s == points[i]) {
        r.violation = "⊲-cycle through " + debug_string(points[i]);
        return r;
      }
      if (!seen.insert(s).second) continue;
      for (auto& c : h.subterm_children(s)) stack.push_back(c);
    }
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      ++r.checks;
      auto c = h.order().compare(points[i], points[j]);
      auto d = pi_compare(h, images[i], images[j]);
      if (c != d) {
        r.violation = "order " + std::string(to_string(c)) + " but pi gives " + to_string(d) +
                      " for " + debug_string(points[i]) + " vs " + debug_string(points[j]);
        return r;
      }
    }
  }
  return r;
}

CheckReport check_e_basic(const CollapseHandle& h, const std::vector<Elem>& points,
                          const std::vector<Elem>& levels, const std::vector<DilElem>& taus) {
  CheckReport r{"e-basic", 0, {}};
  auto subset = [](const std::vector<Elem>& a, const std::vector<Elem>& b) {
    std::unordered_set<Elem, ElemHash> bs(b.begin(), b.end());
    return std::all_of(a.begin(), a.end(), [&](const Elem& x) { return bs.count(x) > 0; });
  };
  auto fail = [&](const std::string& what) {
    r.violation = what;
    return r;
  };
  // (a) for points and for elements of D(X)
  for (const auto& beta : levels) {
    for (const auto& alpha : levels) {
      if (h.nu().less(beta, alpha)) continue;
      for (const auto& t : points) {
        auto et = e_of_point(h, alpha, t);
        for (const auto& s : e_of_point(h, beta, t)) {
          ++r.checks;
          if (!subset(e_of_point(h, alpha, s), et))
            return fail("(a) fails for s=" + debug_string(s) + " in E^D_" + debug_string(beta) +
                        "(" + debug_string(t) + ") at alpha=" + debug_string(alpha));
        }
      }
      for (const auto& tau : taus) {
        auto et = e_of_elem(h, alpha, tau);
        for (const auto& s : e_of_elem(h, beta, tau)) {
          ++r.checks;
          if (!subset(e_of_point(h, alpha, s), et))
            return fail("(a) fails for s=" + debug_string(s) + " in E_" + debug_string(beta) +
                        show_pair(alpha, tau));
        }
      }
    }
  }
  // (b)
  for (const auto& t : points) {
    auto [alpha, tau] = h.pi(t);
    for (const auto& s : e_of_elem(h, alpha, tau)) {
      ++r.checks;
      if (!h.order().less(s, t))
        return fail("(b) fails: " + debug_string(s) + " in E_alpha(tau) not below " +
                    debug_string(t));
    }
  }
  // (c) over the given elements and the components of the points
  std::vector<DilElem> all = taus;
  for (const auto& t : points) all.push_back(h.pi(t).second);
  for (const auto& tau : all) {
    for (const auto& alpha : levels) {
      if (!h.psi_inv(alpha, tau)) continue;
      for (const auto& beta : levels) {
        if (h.nu().less(beta, alpha)) continue;
        ++r.checks;
        if (!h.psi_inv(beta, tau))
          return fail("(c) fails: " + show_pair(alpha, tau) + " in range but not at level " +
                      debug_string(beta));
      }
    }
  }
  return r;
}

class PsiSystem::TermOrder final : public CodedOrder {
 public:
  TermOrder(const PsiSystem& sys, bool members) : sys_(sys), members_(members) {}
  std::strong_ordering compare(const Elem& a, const Elem& b) const override {
    return sys_.compare(a, b);
  }
  bool contains(const Elem& a) const override {
    return sys_.well_formed(a) && (!members_ || sys_.member(a));
  }
  /// The terms with l-measure at most `budget`.
  std::vector<Elem> enumerate(std::size_t budget) const override {
    return sys_.generate(members_, budget, std::numeric_limits<std::size_t>::max());
  }
  std::string label() const override {
    return std::string(members_ ? "psi" : "psi+") + "[" + sys_.nu_->label() + "](" +
           sys_.d_->name() + ")";
  }

 private:
  const PsiSystem& sys_;
  bool members_;
};

PsiSystem::PsiSystem(OrderPtr nu, DilatorPtr d, PsiCaps caps, bool drop_union)
    : nu_(std::move(nu)), d_(std::move(d)), caps_(caps), drop_union_(drop_union) {
  plus_ = std::make_shared<TermOrder>(*this, false);
  members_ = std::make_shared<TermOrder>(*this, true);
}

PsiPtr make_psi_system(OrderPtr nu, DilatorPtr d, PsiCaps caps, bool drop_union) {
  return std::make_shared<PsiSystem>(std::move(nu), std::move(d), caps, drop_union);
}

std::vector<Elem> PsiSystem::children(const Elem& t) {
  auto k = t.kids();
  return {k.begin() + 2, k.end()};
}

std::size_t PsiSystem::l_measure(const Elem& t) {
  std::size_t l = 1;
  for (std::size_t i = 2; i < t.arity(); ++i) l += 2 * l_measure(t.kid(i));
  return l;
}

Elem PsiSystem::make_term(const Elem& alpha, std::vector<Elem> children,
                          const TraceElem& sigma) const {
  if (!nu_->contains(alpha)) throw ValidationError("level outside nu: " + debug_string(alpha));
  if (sigma.arity != children.size())
    throw ValidationError("trace arity " + std::to_string(sigma.arity) + " but " +
                          std::to_string(children.size()) + " children");
  if (!is_trace(*d_, sigma))
    throw ValidationError("not a trace element: " + debug_string(sigma.payload));
  for (const auto& c : children)
    if (c.is_null() || c.tag() != Tag::Psi) throw ValidationError("child is not a psi-term");
  merge_sort(children, [&](const Elem& a, const Elem& b) { return compare_cached(a, b) < 0; });
  for (std::size_t i = 1; i < children.size(); ++i)
    if (children[i - 1] == children[i])
      throw ValidationError("repeated child " + debug_string(children[i]));
  std::vector<Elem> kids{alpha, sigma.payload};
  kids.insert(kids.end(), children.begin(), children.end());
  return Elem::node(Tag::Psi, std::move(kids));
}

bool PsiSystem::well_formed(const Elem& t) const {
  if (t.is_null() || t.tag() != Tag::Psi || t.arity() < 2) return false;
  if (!nu_->contains(alpha(t)) || !is_trace(*d_, sigma(t))) return false;
  for (std::size_t i = 2; i < t.arity(); ++i) {
    if (!well_formed(t.kid(i))) return false;
    if (i > 2 && compare_cached(t.kid(i - 1), t.kid(i)) >= 0) return false;
  }
  return true;
}

std::strong_ordering PsiSystem::compare(const Elem& s, const Elem& t) const {
  if (s == t) return std::strong_ordering::equal;
  if (auto c = nu_->compare(alpha(s), alpha(t)); c != 0) return c;
  return compare_spans(sigma(s), s.kids().subspan(2), sigma(t), t.kids().subspan(2));
}

std::strong_ordering PsiSystem::compare_cached(const Elem& s, const Elem& t) const {
  if (s == t) return std::strong_ordering::equal;
  {
    std::lock_guard lock(mu_);
    if (auto it = cmp_cache_.find({s, t}); it != cmp_cache_.end())
      return it->second < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  auto c = compare(s, t);
  std::lock_guard lock(mu_);
  cmp_cache_.emplace(std::pair{s, t}, c < 0 ? -1 : 1);
  return c;
}

std::strong_ordering PsiSystem::compare_elems(const DilElem& a, const DilElem& b) const {
  if (a == b) return std::strong_ordering::equal;
  return compare_spans(a.trace, a.support, b.trace, b.support);
}

std::strong_ordering PsiSystem::compare_spans(const TraceElem& a, std::span<const Elem> as,
                                              const TraceElem& b,
                                              std::span<const Elem> bs) const {
  std::size_t n = as.size() + bs.size();
  std::array<std::size_t, 32> small_u, small_v;
  std::vector<std::size_t> big_u, big_v;
  std::size_t* u = small_u.data();
  std::size_t* v = small_v.data();
  if (n > small_u.size()) {
    big_u.resize(n), big_v.resize(n);
    u = big_u.data(), v = big_v.data();
  }
  std::size_t i = 0, j = 0, k = 0;
  while (i < as.size() || j < bs.size()) {
    std::strong_ordering c = std::strong_ordering::equal;
    if (i == as.size())
      c = std::strong_ordering::greater;
    else if (j == bs.size())
      c = std::strong_ordering::less;
    else
      c = compare_cached(as[i], bs[j]);
    if (c <= 0) u[i++] = k;
    if (c >= 0) v[j++] = k;
    ++k;
  }
  return compare_at(*d_, k, a, {u, i}, b, {v, j});
}

std::vector<DilElem> PsiSystem::g_plus(const Elem& gamma, const Elem& t) const {
  if (nu_->less(alpha(t), gamma)) return {};
  std::vector<DilElem> out{component(t)};
  if (drop_union_) return out;
  std::unordered_set<DilElem, DilElemHash> seen{out[0]};
  for (std::size_t i = 2; i < t.arity(); ++i) add_unique(out, seen, g_plus(gamma, t.kid(i)));
  return out;
}

bool PsiSystem::member(const Elem& t) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = member_cache_.find(t); it != member_cache_.end()) return it->second;
  }
  bool ok = true;
  auto own = component(t);
  for (std::size_t i = 2; ok && i < t.arity(); ++i) {
    const Elem& r = t.kid(i);
    if (!member(r)) {
      ok = false;
      break;
    }
    for (const auto& rho : g_plus(alpha(t), r))
      if (compare_elems(rho, own) >= 0) {
        ok = false;
        break;
      }
  }
  std::lock_guard lock(mu_);
  member_cache_.emplace(t, ok);
  return ok;
}

std::pair<Elem, DilElem> PsiSystem::pi(const Elem& t) const {
  if (!member(t)) throw InvariantViolation("pi of a non-member: " + to_string(t));
  return {alpha(t), component(t)};
}

std::optional<Elem> PsiSystem::psi_inv(const Elem& alpha, const DilElem& tau) const {
  for (const auto& s : tau.support)
    if (!member(s)) throw InvariantViolation("support point is not a member: " + to_string(s));
  Elem t = make_term(alpha, tau.support, tau.trace);
  if (!member(t)) return std::nullopt;
  return t;
}

const std::vector<TraceElem>& PsiSystem::traces(std::size_t arity) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = traces_.find(arity); it != traces_.end()) return it->second;
  }
  auto ts = trace_enumerate(*d_, arity, caps_.max_payload);
  std::lock_guard lock(mu_);
  return traces_.emplace(arity, std::move(ts)).first->second;
}

std::vector<Elem> PsiSystem::generate(bool members_only, std::size_t max_l,
                                      std::size_t count) const {
  auto alphas = levels();
  merge_sort(alphas, [&](const Elem& a, const Elem& b) { return nu_->less(a, b); });
  std::size_t max_arity = d_->max_arity(caps_.max_payload);

  std::vector<Elem> out;
  std::vector<std::size_t> ls;  // l-measure of out[i], ascending
  // smallest sum of at most max_arity distinct l-values exceeding h; levels
  // in between are empty and get skipped
  auto next_half = [&](std::size_t h) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    auto rec = [&](auto&& self, std::size_t from, std::size_t depth, std::size_t sum) -> void {
      if (sum > h) {
        best = std::min(best, sum);
        return;
      }
      if (depth == max_arity) return;
      for (std::size_t i = from; i < ls.size() && sum + ls[i] < best; ++i)
        self(self, i + 1, depth + 1, sum + ls[i]);
    };
    rec(rec, 0, 0, 0);
    return best;
  };
  for (std::size_t half = 0; half <= (max_l - 1) / 2 && out.size() < count;
       half = next_half(half)) {
    std::size_t level = 2 * half + 1;
    std::vector<Elem> fresh;
    std::vector<Elem> pick;
    // child sets as index-increasing picks from `out`
    auto rec = [&](auto&& self, std::size_t from, std::size_t rest) -> void {
      if (rest == 0) {
        for (const auto& sigma : traces(pick.size()))
          for (const auto& a : alphas) fresh.push_back(make_term(a, pick, sigma));
        return;
      }
      if (pick.size() == max_arity) return;
      for (std::size_t i = from; i < out.size() && ls[i] <= rest; ++i) {
        pick.push_back(out[i]);
        self(self, i + 1, rest - ls[i]);
        pick.pop_back();
      }
    };
    rec(rec, 0, half);
    std::sort(fresh.begin(), fresh.end(), [&](const Elem& a, const Elem& b) {
      auto sa = d_->payload_size(a.kid(1)), sb = d_->payload_size(b.kid(1));
      if (sa != sb) return sa < sb;
      return compare(a, b) < 0;
    });
    for (auto& t : fresh) {
      if (members_only && !member(t)) continue;
      out.push_back(t);
      ls.push_back(level);
    }
  }
  if (out.size() > count) out.resize(count);
  return out;
}

std::vector<Elem> PsiSystem::enumerate_plus(bool members_only) const {
  return generate(members_only, caps_.max_l, std::numeric_limits<std::size_t>::max());
}

std::vector<Elem> PsiSystem::enumerate_members(std::size_t count, std::size_t max_l) const {
  return generate(true, max_l, count);
}

std::vector<Elem> PsiSystem::sorted_members(std::size_t count) const {
  auto v = enumerate_members(count);
  merge_sort(v, [&](const Elem& a, const Elem& b) { return compare(a, b) < 0; });
  return v;
}

void PsiSystem::write(std::string& out, const Elem& t) const {
  out += "p[";
  write_ordinal(out, alpha(t));
  out += "]({";
  for (std::size_t i = 2; i < t.arity(); ++i) {
    if (i > 2) out += ',';
    write(out, t.kid(i));
  }
  out += "};";
  d_->write(out, t.kid(1), d_->finite_point_writer());
  out += ')';
}

std::string PsiSystem::to_string(const Elem& t) const {
  std::string s;
  write(s, t);
  return s;
}

Elem PsiSystem::read(Cursor& in) const {
  in.expect("p[");
  Elem a = read_ordinal(in);
  in.expect("]");
  in.expect("(");
  in.expect("{");
  std::vector<Elem> kids;
  if (!in.accept("}")) {
    do kids.push_back(read(in));
    while (in.accept(","));
    in.expect("}");
  }
  in.expect(";");
  auto k = finite_order(static_cast<std::int64_t>(kids.size()));
  Elem payload = d_->read(in, d_->finite_point_reader(), *k);
  in.expect(")");
  TraceElem sigma{kids.size(), payload};
  return make_term(a, std::move(kids), sigma);
}

Elem PsiSystem::parse(std::string_view text) const {
  Cursor in(text);
  Elem t = read(in);
  in.expect_end();
  return t;
}

}  // namespace collapse
