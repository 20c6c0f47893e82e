#include "collapse/gamma_checks.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "collapse/gamma.hpp"

namespace collapse::gamma {

namespace {

using Tuple = std::vector<const Elem*>;

// Calls fn on every k-tuple of members whose L-measures sum to at most
// `bound`, then on `samples` random k-tuples.
class Tuples {
 public:
  Tuples(const std::vector<Elem>& members, const BatteryScope& scope)
      : scope_(scope), rng_(scope.seed), all_(&members) {
    for (const auto& m : members) {
      auto l = l_measure(m);
      if (l >= by_l_.size()) by_l_.resize(l + 1);
      by_l_[l].push_back(&m);
    }
  }

  // Returns false as soon as fn does.
  bool each(std::size_t k, const std::function<bool(const Tuple&)>& fn) {
    Tuple cur;
    if (!rec(k, scope_.tuple_l, cur, fn)) return false;
    if (all_->empty()) return true;
    std::uniform_int_distribution<std::size_t> pick(0, all_->size() - 1);
    for (std::size_t i = 0; i < scope_.samples; ++i) {
      cur.clear();
      for (std::size_t j = 0; j < k; ++j) cur.push_back(&(*all_)[pick(rng_)]);
      if (!fn(cur)) return false;
    }
    return true;
  }

 private:
  bool rec(std::size_t k, std::size_t budget, Tuple& cur,
           const std::function<bool(const Tuple&)>& fn) {
    if (cur.size() == k) return fn(cur);
    for (std::size_t l = 0; l <= budget && l < by_l_.size(); ++l) {
      for (const Elem* e : by_l_[l]) {
        cur.push_back(e);
        bool go = rec(k, budget - l, cur, fn);
        cur.pop_back();
        if (!go) return false;
      }
    }
    return true;
  }

  BatteryScope scope_;
  std::mt19937_64 rng_;
  const std::vector<Elem>* all_;
  std::vector<std::vector<const Elem*>> by_l_;
};

std::string show(std::initializer_list<const Elem*> ts) {
  std::string out;
  for (const Elem* t : ts) {
    if (!out.empty()) out += ", ";
    write(out, *t, write_var_point);
  }
  return out;
}

bool subset(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  return std::all_of(a.begin(), a.end(),
                     [&](const Elem& e) { return std::find(b.begin(), b.end(), e) != b.end(); });
}

}  // namespace

CheckReport check_veblen(const CodedOrder& x, const std::vector<Elem>& members,
                         const BatteryScope& scope) {
  CheckReport r{"veblen", 0, {}};
  auto lt = [&](const Elem& a, const Elem& b) { return less(x, a, b); };
  auto le = [&](const Elem& a, const Elem& b) { return a == b || less(x, a, b); };
  auto fail = [&](std::string what, std::initializer_list<const Elem*> ts) {
    r.violation = what + " at " + show(ts);
    return false;
  };
  std::vector<Elem> gammas;
  for (const auto& m : members)
    if (is_sc(m) && std::find(gammas.begin(), gammas.end(), m) == gammas.end()) gammas.push_back(m);
  const Elem z = zero();

  for (const auto& t : members) {
    ++r.checks;
    if (t.tag() == Tag::GammaPv && !(lt(t.kid(0), t) && lt(t.kid(1), t)))
      {
      fail("s, t < phi-bar st", {&t});
      return r;
    }
    if (t.tag() == Tag::GammaSeq && !lt(t.kid(0), t)) {
      fail("t0 < <t0,...>", {&t});
      return r;
    }
    // SC = {s | phi s 0 = s}; every H-term is a value of phi
    if (is_sc(t) != (phi(x, t, z) == t)) {
      fail("SC is the set of phi s 0 = s", {&t});
      return r;
    }
    if (t.tag() == Tag::GammaPv && phi(x, t.kid(0), t.kid(1)) != t)
      {
      fail("phi-bar st = phi st", {&t});
      return r;
    }
  }

  Tuples tuples(members, scope);
  bool ok = tuples.each(2, [&](const Tuple& p) {
    const Elem &s = *p[0], &t = *p[1];
    ++r.checks;
    Elem v = phi(x, s, t);
    if (!is_h(v) || !is_member(x, v)) return fail("phi st in H", {&s, &t});
    if (!le(s, v) || !le(t, v)) return fail("s, t <= phi st", {&s, &t});
    // t = phi t0 t1 with s < t0 holds for some t0, t1 iff s < h(t) for SC
    // or phi-bar terms t (the witnesses are t0 = h(t))
    bool right = (is_sc(t) && lt(s, t)) || (t.tag() == Tag::GammaPv && lt(s, t.kid(0)));
    if ((v == t) != right) return fail("fixed points in the second argument", {&s, &t});
    for (const auto& g : gammas)
      if (lt(v, g) != (lt(s, g) && lt(t, g))) return fail("phi st < Gamma_x", {&s, &t, &g});
    return true;
  });
  if (!ok) return r;

  ok = tuples.each(3, [&](const Tuple& p) {
    const Elem &a = *p[0], &b = *p[1], &c = *p[2];
    ++r.checks;
    if (lt(b, c) && !lt(phi(x, a, b), phi(x, a, c))) return fail("strictly increasing in t", {&a, &b, &c});
    if (lt(a, b) && !le(phi(x, a, c), phi(x, b, c))) return fail("weakly increasing in s", {&a, &b, &c});
    return true;
  });
  if (!ok) return r;

  tuples.each(4, [&](const Tuple& p) {
    const Elem &s2 = *p[0], &t2 = *p[1], &s = *p[2], &t = *p[3];
    ++r.checks;
    Elem v2 = phi(x, s2, t2), v = phi(x, s, t);
    bool right = (lt(s2, s) && lt(t2, v)) || (s2 == s && lt(t2, t)) || (lt(s, s2) && lt(v2, t));
    if (lt(v2, v) != right) return fail("comparison of phi-values", {&s2, &t2, &s, &t});
    return true;
  });
  return r;
}

CheckReport check_arithmetic(const CodedOrder& x, const std::vector<Elem>& members,
                             const BatteryScope& scope) {
  CheckReport r{"arithmetic", 0, {}};
  auto lt = [&](const Elem& a, const Elem& b) { return less(x, a, b); };
  auto le = [&](const Elem& a, const Elem& b) { return a == b || less(x, a, b); };
  auto plus = [&](const Elem& a, const Elem& b) { return add(x, a, b); };
  auto fail = [&](std::string what, std::initializer_list<const Elem*> ts) {
    r.violation = what + " at " + show(ts);
    return false;
  };
  const Elem z = zero();
  Tuples tuples(members, scope);

  bool ok = tuples.each(1, [&](const Tuple& p) {
    const Elem& t = *p[0];
    ++r.checks;
    if (plus(t, z) != t || plus(z, t) != t) return fail("t + 0 = t = 0 + t", {&t});
    Elem w = omega_times(x, t);
    if (!is_member(x, w)) return fail("omega t is a member", {&t});
    if (!le(t, w)) return fail("t <= omega t", {&t});
    for (std::size_t n = 0; n <= 3; ++n) {
      Elem k = nat(n);
      if (plus(k, t) != (as_nat(t) ? nat(n + *as_nat(t)) : t)) return fail("m + t on naturals", {&t});
    }
    return true;
  });
  if (!ok) return r;

  ok = tuples.each(2, [&](const Tuple& p) {
    const Elem &s = *p[0], &t = *p[1];
    ++r.checks;
    Elem sum = plus(s, t), v = phi(x, s, t), w = omega_times(x, t);
    if (!is_member(x, sum)) return fail("s + t is a member", {&s, &t});
    auto st = support(x, s);
    auto tt = support(x, t);
    st.insert(st.end(), tt.begin(), tt.end());
    if (!subset(support(x, v), st) || !subset(support(x, sum), st) || !subset(support(x, w), st))
      return fail("support bounds", {&s, &t});
    // (d): a witness s' with s + s' = t has the entries of a suffix of t
    auto es = entries(t);
    bool witness = false;
    for (std::size_t k = 0; k <= es.size() && !witness; ++k)
      witness = plus(s, seq(x, {es.begin() + static_cast<std::ptrdiff_t>(k), es.end()})) == t;
    if (le(s, t) != witness) return fail("r <= t iff r + s = t for some s", {&s, &t});
    if (lt(s, t) && !lt(omega_times(x, s), w)) return fail("omega t strictly increasing", {&s, &t});
    if (lt(s, w))
      for (std::size_t n = 1; n <= 3; ++n)
        if (!lt(plus(s, nat(n)), w)) return fail("s < omega t implies s + n < omega t", {&s, &t});
    return true;
  });
  if (!ok) return r;

  ok = tuples.each(3, [&](const Tuple& p) {
    const Elem &a = *p[0], &b = *p[1], &c = *p[2];
    ++r.checks;
    if (plus(plus(a, b), c) != plus(a, plus(b, c))) return fail("(r + s) + t = r + (s + t)", {&a, &b, &c});
    if (lt(b, c) && !(lt(plus(a, b), plus(a, c)) && le(plus(b, a), plus(c, a))))
      return fail("monotonicity of +", {&a, &b, &c});
    return true;
  });
  if (!ok) return r;

  tuples.each(4, [&](const Tuple& p) {
    const Elem &a = *p[0], &a2 = *p[1], &s = *p[2], &t = *p[3];
    ++r.checks;
    if (is_h(t) && lt(a, plus(a2, t)) && lt(s, t) && !lt(plus(a, s), plus(a2, t)))
      return fail("r < r' + t and s < t give r + s < r' + t", {&a, &a2, &s, &t});
    return true;
  });
  return r;
}

}  // namespace collapse::gamma
