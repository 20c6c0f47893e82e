#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collapse/elem.hpp"

namespace collapse {

/// A linear order with decidable comparison and an element enumerator.
///
/// `enumerate(b)` lists the elements of code size at most `b` (or, for term
/// systems, the first `b` generated elements), ordered by size and then by
/// `compare`. Enumerations are monotone in `b` and duplicate free.
class CodedOrder {
 public:
  virtual ~CodedOrder() = default;
  virtual std::strong_ordering compare(const Elem& a, const Elem& b) const = 0;
  virtual bool contains(const Elem& a) const = 0;
  virtual std::vector<Elem> enumerate(std::size_t budget) const = 0;
  virtual std::string label() const = 0;

  bool less(const Elem& a, const Elem& b) const { return compare(a, b) < 0; }
  bool leq(const Elem& a, const Elem& b) const { return compare(a, b) <= 0; }
};

using OrderPtr = std::shared_ptr<const CodedOrder>;

/// Comparison with code validation; throws DecodeError on foreign codes.
std::strong_ordering compare_elements(const CodedOrder& order, const Elem& a, const Elem& b);

/// The ordinal omega*hi + lo as the order of its predecessors. Elements are
/// `Elem::ordinal(h, l)` with (h, l) lexicographically below (hi, lo).
OrderPtr ordinal_order(std::int64_t hi, std::int64_t lo);
inline OrderPtr finite_order(std::int64_t n) { return ordinal_order(0, n); }
std::vector<Elem> finite_points(std::size_t n);

enum class Combine { Sum, Product, Word };

OrderPtr sum_order(OrderPtr left, OrderPtr right);
/// Lexicographic on pairs, first component first.
OrderPtr product_order(OrderPtr first, OrderPtr second);
/// omega(X): finite non-increasing sequences, lexicographic, proper prefixes smaller.
OrderPtr word_order(OrderPtr base);
OrderPtr combine_orders(Combine kind, OrderPtr x, OrderPtr y = nullptr);

/// Lexicographic comparison of entry lists with proper prefixes smaller.
std::strong_ordering lex_compare(std::span<const Elem> s, std::span<const Elem> t,
                                 const CodedOrder& entries);

/// Kleene-Brouwer comparison of arbitrary finite sequences: extensions lie
/// below their prefixes and the first differing entry decides otherwise.
std::strong_ordering kb_compare(const CodedOrder& base, std::span<const Elem> s,
                                std::span<const Elem> t);
/// Sequences over `base` (Word codes, no monotonicity) under kb_compare.
OrderPtr kb_order(OrderPtr base, std::size_t max_length);

/// A strictly increasing map from the finite order n = domain_size() into a
/// codomain order, stored by its list of images.
struct FiniteEmbedding {
  std::vector<Elem> images;

  std::size_t domain_size() const { return images.size(); }
  /// Image of the point `Elem::nat(i)`.
  const Elem& operator()(const Elem& point) const;
  bool is_increasing(const CodedOrder& codomain) const;
};

/// The strictly increasing enumeration e_a of a duplicate-free finite set.
FiniteEmbedding increasing_enumeration(const CodedOrder& order, std::vector<Elem> a);

/// Sorts and removes duplicates under a verified linear order.
void sort_unique(const CodedOrder& order, std::vector<Elem>& v);

/// Outcome of auditing a comparison on a finite fragment.
struct LinearityAudit {
  std::size_t elements = 0;
  std::size_t comparisons = 0;
  std::optional<std::string> counterexample;
  bool ok() const { return !counterexample; }
};

using CompareFn = std::function<std::strong_ordering(const Elem&, const Elem&)>;

/// Exact check that `cmp` is a strict linear order on `elems` with EQ only
/// on identical codes: merge-sorts by `cmp`, then verifies every pair (i < j)
/// of the sorted list compares LT forwards and GT backwards. Quadratic, which
/// replaces the cubic transitivity scan. On success `elems` is left sorted.
LinearityAudit audit_linear_order(std::vector<Elem>& elems, const CompareFn& cmp);

using IndexCompareFn = std::function<std::strong_ordering(std::size_t, std::size_t)>;

/// The same audit over table indices 0..n-1 of pairwise distinct elements;
/// `sorted` receives the indices in increasing order.
LinearityAudit audit_linear_indices(std::size_t n, const IndexCompareFn& cmp,
                                    const std::function<std::string(std::size_t)>& describe,
                                    std::vector<std::size_t>* sorted = nullptr);

}  // namespace collapse
