#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "collapse/cursor.hpp"
#include "collapse/dilator.hpp"
#include "collapse/elem.hpp"
#include "collapse/order.hpp"
#include "collapse/report.hpp"

namespace collapse {

/// A nu-collapse pi: X -> nu x D(X) together with its partial inverse.
///
/// `pi(t)` returns (alpha, tau) with tau in normal form over X, so the
/// support of tau is the list of ⊲-predecessors of t. `psi_inv` is defined
/// exactly on the range of pi.
class CollapseHandle {
 public:
  virtual ~CollapseHandle() = default;

  virtual const CodedOrder& order() const = 0;
  virtual const CodedOrder& nu() const = 0;
  virtual const Predilator& dilator() const = 0;
  virtual std::pair<Elem, DilElem> pi(const Elem& t) const = 0;
  virtual std::optional<Elem> psi_inv(const Elem& alpha, const DilElem& tau) const = 0;

  std::vector<Elem> subterm_children(const Elem& t) const { return pi(t).second.support; }
};

using HandlePtr = std::shared_ptr<const CollapseHandle>;

/// G^D_gamma(t) and G_gamma(tau): the elements of D(X) met along ⊲-chains
/// whose collapse level is at least gamma.
std::vector<DilElem> g_of_point(const CollapseHandle& h, const Elem& gamma, const Elem& t);
std::vector<DilElem> g_of_elem(const CollapseHandle& h, const Elem& gamma, const DilElem& tau);

/// E^D_alpha(t) and E_alpha(tau): the first points of level at most alpha
/// reached along ⊲-chains.
std::vector<Elem> e_of_point(const CollapseHandle& h, const Elem& alpha, const Elem& t);
std::vector<Elem> e_of_elem(const CollapseHandle& h, const Elem& alpha, const DilElem& tau);

/// The right side of the range equation: G_alpha(tau) lies strictly below tau.
bool range_condition(const CollapseHandle& h, const Elem& alpha, const DilElem& tau);

/// For every sample pair: psi_inv defined iff the range condition holds, and
/// pi(psi_inv(alpha, tau)) = (alpha, tau) whenever defined.
CheckReport check_range_condition(const CollapseHandle& h,
                                  const std::vector<std::pair<Elem, DilElem>>& sample);

/// Every level in `levels` against every element of D(X) with support in
/// the first `width` of `points` (sorted first) and payload at most `budget`,
/// at most `limit` elements of D(X).
std::vector<std::pair<Elem, DilElem>> range_grid(const CollapseHandle& h, std::vector<Elem> points,
                                                 const std::vector<Elem>& levels, std::size_t width,
                                                 std::size_t budget, std::size_t limit);

/// Every level against every element of D(X) with a single support point
/// and payload at most `budget`. Points come from `points` and, for `rounds`
/// further rounds, from the values of psi_inv on the previous round.
std::vector<std::pair<Elem, DilElem>> extension_grid(const CollapseHandle& h,
                                                     const std::vector<Elem>& points,
                                                     const std::vector<Elem>& levels,
                                                     std::size_t rounds, std::size_t budget);

/// pi is an order embedding on the given points and ⊲ matches supports.
CheckReport check_pi_embedding(const CollapseHandle& h, const std::vector<Elem>& points);

/// The three basic facts about E-functions on the given points, levels and
/// elements of D(X).
CheckReport check_e_basic(const CollapseHandle& h, const std::vector<Elem>& points,
                          const std::vector<Elem>& levels, const std::vector<DilElem>& taus);

/// Caps for generating fragments of psi^+_nu(D).
struct PsiCaps {
  std::size_t max_l = 9;        // l-measure bound for exhaustive suites
  std::size_t max_payload = 6;  // trace payload size bound
  std::size_t nu_budget = 1;    // levels are nu.enumerate(nu_budget)
};

/// The term systems psi^+_nu(D) and psi_nu(D).
///
/// Terms are Elem codes `Tag::Psi` with kids (alpha, sigma, c_1, ..., c_n),
/// the children sorted increasingly, and (n, sigma) in Tr(D).
class PsiSystem final : public CollapseHandle {
 public:
  /// `drop_union` replaces G+ by its first clause only; a deliberately
  /// broken variant used to exercise the harnesses.
  PsiSystem(OrderPtr nu, DilatorPtr d, PsiCaps caps = {}, bool drop_union = false);

  const CodedOrder& order() const override { return *members_; }
  const CodedOrder& nu() const override { return *nu_; }
  const Predilator& dilator() const override { return *d_; }
  OrderPtr nu_ptr() const { return nu_; }
  DilatorPtr dilator_ptr() const { return d_; }
  const PsiCaps& caps() const { return caps_; }
  /// psi^+_nu(D) as a coded order.
  const CodedOrder& plus_order() const { return *plus_; }

  Elem make_term(const Elem& alpha, std::vector<Elem> children, const TraceElem& sigma) const;
  bool well_formed(const Elem& t) const;

  static const Elem& alpha(const Elem& t) { return t.kid(0); }
  static TraceElem sigma(const Elem& t) { return {t.arity() - 2, t.kid(1)}; }
  static std::vector<Elem> children(const Elem& t);
  static std::size_t l_measure(const Elem& t);

  std::strong_ordering compare(const Elem& s, const Elem& t) const;
  bool less(const Elem& s, const Elem& t) const { return compare(s, t) < 0; }
  /// D(e_a)(sigma) as an element of D(psi^+).
  static DilElem component(const Elem& t) { return {sigma(t), children(t)}; }
  /// Comparison in D(psi^+) of normal forms over terms.
  std::strong_ordering compare_elems(const DilElem& a, const DilElem& b) const;

  std::vector<DilElem> g_plus(const Elem& gamma, const Elem& t) const;
  bool member(const Elem& t) const;

  std::pair<Elem, DilElem> pi(const Elem& t) const override;
  std::optional<Elem> psi_inv(const Elem& alpha, const DilElem& tau) const override;

  /// Every term of psi^+ (or only the members) with l <= caps.max_l, in
  /// generation order: by l, then trace payload size, then compare.
  std::vector<Elem> enumerate_plus(bool members_only) const;
  /// The first `count` members in generation order (children precede their
  /// parents), or fewer if no member has l-measure at most `max_l`.
  std::vector<Elem> enumerate_members(std::size_t count,
                                      std::size_t max_l = std::size_t{1} << 40) const;
  /// The same members sorted by the psi-order.
  std::vector<Elem> sorted_members(std::size_t count) const;

  void write(std::string& out, const Elem& t) const;
  std::string to_string(const Elem& t) const;
  Elem read(Cursor& in) const;
  Elem parse(std::string_view text) const;

  std::vector<Elem> levels() const { return nu_->enumerate(caps_.nu_budget); }

 private:
  class TermOrder;
  std::strong_ordering compare_cached(const Elem& s, const Elem& t) const;
  std::strong_ordering compare_spans(const TraceElem& a, std::span<const Elem> as,
                                     const TraceElem& b, std::span<const Elem> bs) const;
  std::vector<Elem> generate(bool members_only, std::size_t max_l, std::size_t count) const;

  OrderPtr nu_;
  DilatorPtr d_;
  PsiCaps caps_;
  bool drop_union_;
  std::shared_ptr<const CodedOrder> plus_;
  std::shared_ptr<const CodedOrder> members_;
  const std::vector<TraceElem>& traces(std::size_t arity) const;

  mutable std::mutex mu_;
  mutable std::unordered_map<std::size_t, std::vector<TraceElem>> traces_;  // by arity
  mutable std::unordered_map<std::pair<Elem, Elem>, std::int8_t, ElemPairHash> cmp_cache_;
  mutable std::unordered_map<Elem, bool, ElemHash> member_cache_;
};

using PsiPtr = std::shared_ptr<const PsiSystem>;

PsiPtr make_psi_system(OrderPtr nu, DilatorPtr d, PsiCaps caps = {}, bool drop_union = false);

}  // namespace collapse
