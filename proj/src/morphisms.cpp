#include "collapse/morphisms.hpp"

#include <algorithm>
#include <sstream>

namespace collapse {

namespace {

std::string show(const DilElem& a) {
  std::ostringstream os;
  os << debug_string(a.trace.payload) << "@{";
  for (std::size_t i = 0; i < a.support.size(); ++i)
    os << (i ? "," : "") << debug_string(a.support[i]);
  os << "}";
  return os.str();
}

}  // namespace

InitialEmbedding::InitialEmbedding(LevelMap level, HandlePtr src, HandlePtr dst)
    : level_(std::move(level)), src_(std::move(src)), dst_(std::move(dst)) {}

Elem InitialEmbedding::operator()(const Elem& t) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
  }
  auto [alpha, tau] = src_->pi(t);
  DilElem image{tau.trace, {}};
  for (const auto& s : tau.support) image.support.push_back((*this)(s));
  for (std::size_t i = 1; i < image.support.size(); ++i)
    if (!dst_->order().less(image.support[i - 1], image.support[i]))
      throw LawViolation("embedding not increasing below " + debug_string(t));
  auto r = dst_->psi_inv(level_(alpha), image);
  if (!r)
    throw LawViolation("target has no preimage of (" + debug_string(level_(alpha)) + ", " +
                       show(image) + ") required by " + debug_string(t));
  std::lock_guard lock(mu_);
  memo_.emplace(t, *r);
  return *r;
}

bool InitialEmbedding::square_commutes(const Elem& t) const {
  auto [alpha, tau] = src_->pi(t);
  auto [beta, kappa] = dst_->pi((*this)(t));
  DilElem mapped{tau.trace, {}};
  for (const auto& s : tau.support) mapped.support.push_back((*this)(s));
  return beta == level_(alpha) && kappa == mapped;
}

std::size_t InitialEmbedding::computed() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

std::vector<Elem> initial_embedding(LevelMap level, HandlePtr src, HandlePtr dst,
                                    const std::vector<Elem>& pts) {
  InitialEmbedding f(std::move(level), std::move(src), std::move(dst));
  std::vector<Elem> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(f(p));
  return out;
}

namespace {

class OmegaOneCollapse final : public CollapseHandle {
 public:
  explicit OmegaOneCollapse(OrderPtr y)
      : y_(y), words_(word_order(y)), nu_(finite_order(1)), d_(affine_dilator(y)) {}

  const CodedOrder& order() const override { return *words_; }
  const CodedOrder& nu() const override { return *nu_; }
  const Predilator& dilator() const override { return *d_; }

  std::pair<Elem, DilElem> pi(const Elem& w) const override {
    if (!words_->contains(w)) throw DecodeError("not a word over Y: " + debug_string(w));
    if (w.arity() == 0) return {Elem::nat(0), DilElem{{0, Elem::node(Tag::AffineZero, {})}, {}}};
    auto k = w.kids();
    Elem rest = Elem::node(Tag::Word, {k.begin() + 1, k.end()});
    return {Elem::nat(0),
            DilElem{{1, Elem::node(Tag::AffineOne, {k[0], Elem::nat(0)})}, {rest}}};
  }

  std::optional<Elem> psi_inv(const Elem& alpha, const DilElem& tau) const override {
    if (!nu_->contains(alpha)) throw DecodeError("level outside 1: " + debug_string(alpha));
    if (tau.trace.payload.tag() == Tag::AffineZero) return Elem::node(Tag::Word, {});
    const Elem& y0 = tau.trace.payload.kid(0);
    const Elem& w = tau.support.at(0);
    if (w.arity() > 0 && y_->less(y0, w.kid(0))) return std::nullopt;
    std::vector<Elem> kids{y0};
    kids.insert(kids.end(), w.kids().begin(), w.kids().end());
    return Elem::node(Tag::Word, std::move(kids));
  }

 private:
  OrderPtr y_, words_, nu_;
  DilatorPtr d_;
};

}  // namespace

HandlePtr omega_one_collapse(OrderPtr y) { return std::make_shared<OmegaOneCollapse>(std::move(y)); }

DilElem sigma_plus(const CollapseHandle& h, const Predilator& d, const DilElem& sigma) {
  const auto& x = h.order();
  const auto& e = h.dilator();
  Elem s = denote(d, sigma);
  DilElem single = normal_form(e, x, Elem::node(Tag::Word, {s}));
  Elem star = Elem::node(Tag::Word, {});
  for (const auto& g : g_of_elem(h, Elem::nat(0), single)) {
    Elem raw = denote(e, g);
    if (e.compare(x, raw, star) > 0) star = raw;
  }
  std::vector<Elem> entries;
  for (const auto& si : star.kids()) {
    if (d.compare(x, si, s) < 0) break;
    entries.push_back(si);
  }
  entries.push_back(s);
  return normal_form(e, x, Elem::node(Tag::Word, std::move(entries)));
}

namespace {

class ThetaFromCollapse final : public BHCollapse {
 public:
  ThetaFromCollapse(HandlePtr h, DilatorPtr d) : h_(std::move(h)), d_(std::move(d)) {}

  const CodedOrder& order() const override { return h_->order(); }
  const Predilator& dilator() const override { return *d_; }

  Elem theta(const DilElem& sigma) const override {
    {
      std::lock_guard lock(mu_);
      if (auto it = memo_.find(sigma); it != memo_.end()) return it->second;
    }
    auto plus = sigma_plus(*h_, *d_, sigma);
    auto z = h_->psi_inv(Elem::nat(0), plus);
    if (!z) throw LawViolation("sigma+ outside the range of pi for " + show(sigma));
    std::lock_guard lock(mu_);
    memo_.emplace(sigma, *z);
    return *z;
  }

  std::optional<DilElem> theta_inverse(const Elem& z) const override {
    // pi(theta(sigma)) = (0, sigma+) and sigma is the last entry of sigma+
    auto [alpha, tau] = h_->pi(z);
    Elem word = denote(h_->dilator(), tau);
    if (word.arity() == 0) return std::nullopt;
    auto sigma = normal_form(*d_, h_->order(), word.kid(word.arity() - 1));
    if (theta(sigma) != z) return std::nullopt;
    return sigma;
  }

 private:
  HandlePtr h_;
  DilatorPtr d_;
  mutable std::mutex mu_;
  mutable std::unordered_map<DilElem, Elem, DilElemHash> memo_;
};

class ConstantTheta final : public BHCollapse {
 public:
  ConstantTheta(BHPtr base, Elem value) : base_(std::move(base)), value_(std::move(value)) {}
  const CodedOrder& order() const override { return base_->order(); }
  const Predilator& dilator() const override { return base_->dilator(); }
  Elem theta(const DilElem&) const override { return value_; }
  std::optional<DilElem> theta_inverse(const Elem&) const override { return std::nullopt; }

 private:
  BHPtr base_;
  Elem value_;
};

}  // namespace

BHPtr bh_theta(HandlePtr h, DilatorPtr d) {
  return std::make_shared<ThetaFromCollapse>(std::move(h), std::move(d));
}

BHPtr constant_theta(BHPtr base, Elem value) {
  return std::make_shared<ConstantTheta>(std::move(base), std::move(value));
}

CheckReport check_bh_collapse(const BHCollapse& bh, const std::vector<DilElem>& sample) {
  CheckReport r{"bh-collapse", 0, {}};
  const auto& z = bh.order();
  std::vector<Elem> th;
  th.reserve(sample.size());
  for (const auto& s : sample) th.push_back(bh.theta(s));
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (const auto& p : sample[i].support) {
      ++r.checks;
      if (!z.less(p, th[i])) {
        r.violation = "clause (ii): " + debug_string(p) + " in supp(" + show(sample[i]) +
                      ") is not below theta = " + debug_string(th[i]);
        return r;
      }
    }
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = 0; j < sample.size(); ++j) {
      if (element_compare(bh.dilator(), z, sample[i], sample[j]) >= 0) continue;
      bool below = std::all_of(sample[i].support.begin(), sample[i].support.end(),
                               [&](const Elem& p) { return z.less(p, th[j]); });
      if (!below) continue;
      ++r.checks;
      if (!z.less(th[i], th[j])) {
        r.violation = "clause (i): " + show(sample[i]) + " < " + show(sample[j]) +
                      " with support below theta, but theta values are not increasing";
        return r;
      }
    }
  }
  return r;
}

class OneCollapseFromBH::PointOrder final : public CodedOrder {
 public:
  explicit PointOrder(const OneCollapseFromBH& owner) : owner_(owner) {}
  std::strong_ordering compare(const Elem& a, const Elem& b) const override {
    return owner_.bh_->order().compare(a, b);
  }
  bool contains(const Elem& a) const override {
    std::lock_guard lock(owner_.mu_);
    return owner_.inverse_.count(a) > 0;
  }
  std::vector<Elem> enumerate(std::size_t) const override { return owner_.points(); }
  std::string label() const override { return "X<" + owner_.bh_->order().label() + ">"; }

 private:
  const OneCollapseFromBH& owner_;
};

OneCollapseFromBH::OneCollapseFromBH(BHPtr bh, std::size_t payload_budget,
                                     std::size_t max_points)
    : bh_(std::move(bh)), nu_(finite_order(1)) {
  order_ = std::make_shared<PointOrder>(*this);
  const auto& z = bh_->order();
  const auto& d = bh_->dilator();
  std::unordered_set<DilElem, DilElemHash> tried;
  while (true) {
    auto pts = points();
    bool grew = false;
    for (const auto& raw : d.enumerate(z, pts, payload_budget)) {
      auto tau = normal_form(d, z, raw);
      if (!tried.insert(tau).second || !in_y(tau)) continue;
      Elem t = bh_->theta(tau);
      std::lock_guard lock(mu_);
      auto [it, fresh] = inverse_.emplace(t, tau);
      if (!fresh && !(it->second == tau) && !defect_)
        defect_ = "theta not injective: " + show(tau) + " and " + show(it->second);
      grew = grew || fresh;
      if (inverse_.size() >= max_points) return;
    }
    if (!grew) break;
  }
  closed_ = true;
}

std::vector<Elem> OneCollapseFromBH::points() const {
  std::vector<Elem> out;
  {
    std::lock_guard lock(mu_);
    for (const auto& kv : inverse_) out.push_back(kv.first);
  }
  const auto& z = bh_->order();
  std::sort(out.begin(), out.end(), [&](const Elem& a, const Elem& b) { return z.less(a, b); });
  return out;
}

std::vector<DilElem> OneCollapseFromBH::g_of(const DilElem& tau) const {
  std::vector<DilElem> out;
  std::unordered_set<DilElem, DilElemHash> seen;
  for (const auto& s : tau.support) {
    DilElem sigma;
    {
      std::lock_guard lock(mu_);
      auto it = inverse_.find(s);
      if (it == inverse_.end())
        throw InvariantViolation("support point outside the generated suborder: " +
                                 debug_string(s));
      sigma = it->second;
    }
    if (seen.insert(sigma).second) out.push_back(sigma);
    for (auto& r : g_of(sigma))
      if (seen.insert(r).second) out.push_back(r);
  }
  return out;
}

bool OneCollapseFromBH::in_y(const DilElem& tau) const {
  for (const auto& rho : g_of(tau))
    if (element_compare(bh_->dilator(), bh_->order(), rho, tau) >= 0) return false;
  return true;
}

std::pair<Elem, DilElem> OneCollapseFromBH::pi(const Elem& t) const {
  std::lock_guard lock(mu_);
  auto it = inverse_.find(t);
  if (it == inverse_.end()) throw InvariantViolation("pi outside the generated suborder");
  return {Elem::nat(0), it->second};
}

std::optional<Elem> OneCollapseFromBH::psi_inv(const Elem& alpha, const DilElem& tau) const {
  if (!nu_->contains(alpha)) throw DecodeError("level outside 1: " + debug_string(alpha));
  if (!in_y(tau)) return std::nullopt;
  Elem t = bh_->theta(tau);
  std::lock_guard lock(mu_);
  auto [it, fresh] = inverse_.emplace(t, tau);
  if (!fresh && !(it->second == tau))
    throw LawViolation("theta not injective: " + show(tau) + " and " + show(it->second));
  return t;
}

std::shared_ptr<const OneCollapseFromBH> bh_to_one_collapse(BHPtr bh, std::size_t payload_budget,
                                                            std::size_t max_points) {
  return std::make_shared<OneCollapseFromBH>(std::move(bh), payload_budget, max_points);
}

}  // namespace collapse
