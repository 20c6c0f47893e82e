#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "collapse/cursor.hpp"
#include "collapse/dilator.hpp"
#include "collapse/elem.hpp"
#include "collapse/order.hpp"

/// The term order Gamma(X): 0, Gamma_x, phi-bar s t and <t0,...,t_{n-1}> over a
/// coded order X. Terms are Elem codes with the Gamma* tags; functions that
/// build terms validate the side conditions and throw ValidationError.
namespace collapse::gamma {

Elem zero();
Elem sc(const Elem& x);
/// phi-bar s t; requires h(t) <= s and (t != 0 or s not in SC).
Elem pv(const CodedOrder& x, const Elem& s, const Elem& t);
/// <t0,...>, with <> = 0 and <t> = t; entries must be in H and non-increasing.
Elem seq(const CodedOrder& x, std::vector<Elem> entries);

bool is_zero(const Elem& t);
bool is_sc(const Elem& t);
bool is_h(const Elem& t);

std::size_t l_measure(const Elem& t);
Elem h(const Elem& t);
/// The term read as a sequence of H-terms.
std::vector<Elem> entries(const Elem& t);

/// Decides s < t by the simultaneous recursion on L(s)+L(t); s, t members.
bool less(const CodedOrder& x, const Elem& s, const Elem& t);
std::strong_ordering compare(const CodedOrder& x, const Elem& s, const Elem& t);
/// Relaxed term in Gamma^+(X) satisfies all side conditions recursively.
bool is_member(const CodedOrder& x, const Elem& t);

Elem map(const PointMap& f, const Elem& t);
/// Sorted duplicate-free support.
std::vector<Elem> support(const CodedOrder& x, const Elem& t);
inline Elem embed(const Elem& x) { return sc(x); }

Elem phi(const CodedOrder& x, const Elem& s, const Elem& t);
Elem add(const CodedOrder& x, const Elem& s, const Elem& t);
Elem nat(std::size_t n);
/// Returns n if t = nat(n).
std::optional<std::size_t> as_nat(const Elem& t);
Elem omega_times(const CodedOrder& x, const Elem& t);

/// All members with L <= max_l over the given points (ascending in X), with
/// sequences of at most max_seq_len entries. Sorted by (L, <).
std::vector<Elem> enumerate_members(const CodedOrder& x, std::span<const Elem> points,
                                    std::size_t max_l, std::size_t max_seq_len);

/// A set of members interned into a table (closed under subterms), so that
/// exhaustive suites can compare by index. Uses the same decision procedure
/// as `less`; only the term storage differs.
class Fragment {
 public:
  Fragment(OrderPtr x, const std::vector<Elem>& members);

  std::size_t size() const { return terms_.size(); }
  const Elem& term(std::size_t i) const { return terms_[i]; }
  std::optional<std::size_t> index_of(const Elem& t) const;
  bool less(std::size_t a, std::size_t b) const;
  std::strong_ordering compare(std::size_t a, std::size_t b) const;
  /// Exhaustive audit that `less` is a strict linear order on the fragment.
  /// Sorts by `less`, then checks for every ordered pair that one unfolding
  /// of the decision procedure, with the recursive calls answered by the
  /// sorted ranks, agrees with the ranks. Since the fragment is closed under
  /// subterms and each recursive call lowers L(s)+L(t), induction gives
  /// less(a, b) iff rank(a) < rank(b) for all pairs.
  LinearityAudit audit(std::vector<std::size_t>* sorted = nullptr) const;

 private:
  friend struct TableView;
  std::uint32_t intern(const Elem& t);

  OrderPtr x_;
  std::vector<Elem> terms_;
  std::vector<Tag> tags_;
  std::vector<std::uint32_t> first_;  // offset into flat_ of the kids
  std::vector<std::uint32_t> entry_;  // offset into flat_ of the entries
  std::vector<std::uint32_t> count_;  // number of entries
  std::vector<std::uint32_t> flat_;
  std::unordered_map<Elem, std::uint32_t, ElemHash> index_;
};

void write(std::string& out, const Elem& t, const PointWriter& point);
/// Canonical form plus the evaluated forms phi(,), add(,), w*(), n:k.
Elem read(Cursor& in, const PointReader& point, const CodedOrder& x);

/// Gamma(X) as a coded order; enumerate(b) lists members with L <= b over
/// the points of X.enumerate(b).
OrderPtr order(OrderPtr x, std::size_t max_seq_len = 3);

/// Gamma as a predilator; payload size is L and sequences are capped at
/// max_seq_len entries so that each budget gives a finite fragment.
DilatorPtr dilator(std::size_t max_seq_len = 3);

}  // namespace collapse::gamma
