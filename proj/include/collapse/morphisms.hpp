#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "collapse/dilator.hpp"
#include "collapse/elem.hpp"
#include "collapse/order.hpp"
#include "collapse/psi.hpp"

namespace collapse {

using LevelMap = std::function<Elem(const Elem&)>;

/// The unique embedding f: X -> Y between collapses with
/// kappa o f = (I x D(f)) o pi, computed lazily along ⊲.
class InitialEmbedding {
 public:
  InitialEmbedding(LevelMap level, HandlePtr src, HandlePtr dst);

  /// Throws LawViolation if dst has no preimage where one is required.
  Elem operator()(const Elem& t) const;
  /// kappa(f(t)) = (I(alpha), D(f)(tau)) for pi(t) = (alpha, tau).
  bool square_commutes(const Elem& t) const;
  std::size_t computed() const;

 private:
  LevelMap level_;
  HandlePtr src_, dst_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Elem, Elem, ElemHash> memo_;
};

/// Convenience: f on each of `pts`.
std::vector<Elem> initial_embedding(LevelMap level, HandlePtr src, HandlePtr dst,
                                    const std::vector<Elem>& pts);

/// omega(Y) as a 1-collapse of X -> 1 + Y x X, with pi(<>) = 0 and
/// pi(<y0, ..., yn>) = 1 + (y0, <y1, ..., yn>).
HandlePtr omega_one_collapse(OrderPtr y);

/// A Bachmann-Howard collapse theta: D(Z) -> Z.
class BHCollapse {
 public:
  virtual ~BHCollapse() = default;
  virtual const CodedOrder& order() const = 0;
  virtual const Predilator& dilator() const = 0;
  virtual Elem theta(const DilElem& sigma) const = 0;
  /// sigma with theta(sigma) = z, when known.
  virtual std::optional<DilElem> theta_inverse(const Elem& z) const = 0;
};

using BHPtr = std::shared_ptr<const BHCollapse>;

/// sigma+ for a 1-collapse of omega o D over X (`d` is D): the entries of
/// max({<>} u G_0(<sigma>)) that are at least sigma, followed by sigma.
DilElem sigma_plus(const CollapseHandle& h, const Predilator& d, const DilElem& sigma);

/// theta with pi(theta(sigma)) = (0, sigma+), from a 1-collapse of omega o D.
BHPtr bh_theta(HandlePtr h, DilatorPtr d);

/// A broken collapse sending everything to `value`, for harness checks.
BHPtr constant_theta(BHPtr base, Elem value);

/// Clause (ii) on every sample element and clause (i) on every sample pair.
CheckReport check_bh_collapse(const BHCollapse& bh, const std::vector<DilElem>& sample);

/// The 1-collapse carved out of a BH fixed point: the suborder generated by
/// t = theta(tau) with supp(tau) already generated and G(tau) below tau.
class OneCollapseFromBH final : public CollapseHandle {
 public:
  OneCollapseFromBH(BHPtr bh, std::size_t payload_budget, std::size_t max_points);

  const CodedOrder& order() const override { return *order_; }
  const CodedOrder& nu() const override { return *nu_; }
  const Predilator& dilator() const override { return bh_->dilator(); }
  std::pair<Elem, DilElem> pi(const Elem& t) const override;
  std::optional<Elem> psi_inv(const Elem& alpha, const DilElem& tau) const override;

  /// The generated points, ascending.
  std::vector<Elem> points() const;
  /// False if saturation stopped at `max_points` before reaching a fixed point.
  bool closed() const { return closed_; }
  /// Empty unless theta was found to be non-injective on the fragment.
  const std::optional<std::string>& defect() const { return defect_; }

 private:
  class PointOrder;
  bool in_y(const DilElem& tau) const;
  std::vector<DilElem> g_of(const DilElem& tau) const;

  BHPtr bh_;
  OrderPtr nu_;
  std::shared_ptr<const CodedOrder> order_;
  bool closed_ = false;
  std::optional<std::string> defect_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Elem, DilElem, ElemHash> inverse_;  // the generated points
};

std::shared_ptr<const OneCollapseFromBH> bh_to_one_collapse(BHPtr bh, std::size_t payload_budget,
                                                            std::size_t max_points);

}  // namespace collapse
