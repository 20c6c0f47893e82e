#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace collapse {

/// Node kinds of the self-describing element codes. Every order, dilator and
/// term system in the library stores its elements as trees of these nodes, so
/// sums, products, words and terms nest without a global numbering.
enum class Tag : std::uint8_t {
  Ordinal,     // omega*hi + lo
  Left,        // sum injection, 1 kid
  Right,       // sum injection, 1 kid
  Pair,        // product, 2 kids
  Word,        // finite sequence
  GammaZero,   // 0
  GammaSc,     // Gamma_x, kid = point
  GammaPv,     // phi-bar s t
  GammaSeq,    // <t0,...,t_{n-1}>, n >= 2
  AffineZero,  // 0 of 1+Y*X
  AffineOne,   // 1+(y,x), kids = (y, x)
  Psi,         // psi_alpha(a, sigma), kids = (alpha, sigma, children...)
};

class Elem {
 public:
  Elem() = default;

  static Elem ordinal(std::int64_t hi, std::int64_t lo);
  static Elem nat(std::int64_t n) { return ordinal(0, n); }
  static Elem node(Tag tag, std::vector<Elem> kids);

  bool is_null() const { return node_ == nullptr; }
  Tag tag() const;
  std::int64_t hi() const;
  std::int64_t lo() const;
  std::span<const Elem> kids() const;
  const Elem& kid(std::size_t i) const { return kids()[i]; }
  std::size_t arity() const { return kids().size(); }
  std::size_t hash() const;
  /// Code size used by enumerators: hi+lo for ordinals, 1 + sum of kids otherwise.
  std::size_t code_size() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Elem& a, const Elem& b);
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

 private:
  struct Node;
  explicit Elem(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& checked() const;
  static Elem make_ordinal(std::int64_t hi, std::int64_t lo);
  [[noreturn]] static void null_access();
  static bool deep_equal(const Node& x, const Node& y);
  std::shared_ptr<const Node> node_;
};

struct Elem::Node {
  Tag tag;
  std::int64_t hi = 0;
  std::int64_t lo = 0;
  std::size_t hash = 0;
  std::size_t size = 0;
  std::size_t count = 0;
  // up to three kids are stored inline, which keeps comparisons cache friendly
  std::array<Elem, 3> small;
  std::vector<Elem> large;

  std::span<const Elem> kids() const {
    if (count > small.size()) return large;
    return {small.data(), count};
  }
};

inline const Elem::Node& Elem::checked() const {
  if (!node_) null_access();
  return *node_;
}
inline Tag Elem::tag() const { return checked().tag; }
inline std::int64_t Elem::hi() const { return checked().hi; }
inline std::int64_t Elem::lo() const { return checked().lo; }
inline std::span<const Elem> Elem::kids() const { return checked().kids(); }
inline std::size_t Elem::hash() const { return node_ ? node_->hash : 0; }
inline std::size_t Elem::code_size() const { return node_ ? node_->size : 0; }

inline bool operator==(const Elem& a, const Elem& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_ || a.node_->hash != b.node_->hash) return false;
  return Elem::deep_equal(*a.node_, *b.node_);
}

/// Generic rendering for diagnostics; canonical grammars live in text.hpp.
std::string debug_string(const Elem& e);

const char* to_string(std::strong_ordering c);
inline std::strong_ordering reverse(std::strong_ordering c) { return 0 <=> c; }

class DecodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class LawViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict linear order as a less-than predicate, used by the sort helpers.
using LessFn = std::function<bool(const Elem&, const Elem&)>;

/// Merge sort that stays well defined when `less` is not a strict weak order,
/// so law checkers can sort first and then audit the result.
template <class T, class Less>
void merge_sort(std::vector<T>& v, const Less& less) {
  std::vector<T> tmp(v.size());
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
    if (hi - lo < 2) return;
    std::size_t mid = lo + (hi - lo) / 2;
    self(self, lo, mid);
    self(self, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) tmp[k++] = less(v[j], v[i]) ? v[j++] : v[i++];
    while (i < mid) tmp[k++] = v[i++];
    while (j < hi) tmp[k++] = v[j++];
    for (k = lo; k < hi; ++k) v[k] = tmp[k];
  };
  rec(rec, 0, v.size());
}

struct ElemHash {
  std::size_t operator()(const Elem& e) const { return e.hash(); }
};

struct ElemPairHash {
  std::size_t operator()(const std::pair<Elem, Elem>& p) const {
    return p.first.hash() * 0x9e3779b97f4a7c15ULL ^ p.second.hash();
  }
};

}  // namespace collapse

template <>
struct std::hash<collapse::Elem> {
  std::size_t operator()(const collapse::Elem& e) const { return e.hash(); }
};
