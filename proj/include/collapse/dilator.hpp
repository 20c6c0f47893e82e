#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collapse/cursor.hpp"
#include "collapse/elem.hpp"
#include "collapse/order.hpp"

namespace collapse {

using PointMap = std::function<Elem(const Elem&)>;

/// A coded predilator, given by its action on raw element codes over an
/// arbitrary coded order X.
///
/// Raw codes of D(X) are trees whose leaves (the "points") are elements of X.
/// An implementation supplies comparison in D(X), the functorial action on
/// points, supports, a validity check and a bounded enumerator. Everything
/// else in this header (traces, normal forms, comparison over unions of
/// supports) is derived from these primitives.
class Predilator {
 public:
  virtual ~Predilator() = default;

  virtual std::string name() const = 0;
  virtual std::strong_ordering compare(const CodedOrder& x, const Elem& a, const Elem& b) const = 0;
  /// Compares trace payloads `a`, `b` after placing their points 0, 1, ...
  /// at positions `u`, `v` of the finite order k. The default maps both
  /// payloads into D(k) and calls `compare`.
  virtual std::strong_ordering compare_placed(std::size_t k, const Elem& a,
                                              std::span<const std::size_t> u, const Elem& b,
                                              std::span<const std::size_t> v) const;
  /// D(f): relabels every point of `a` through `f`.
  virtual Elem map(const PointMap& f, const Elem& a) const = 0;
  /// Appends the support points of `a`, in any order, possibly repeated.
  virtual void collect_support(const Elem& a, std::vector<Elem>& out) const = 0;
  virtual bool valid(const CodedOrder& x, const Elem& a) const = 0;
  /// All elements of D(X) with points drawn from `points` (ascending in X)
  /// and payload size at most `budget`.
  virtual std::vector<Elem> enumerate(const CodedOrder& x, std::span<const Elem> points,
                                      std::size_t budget) const = 0;
  virtual std::size_t payload_size(const Elem& a) const = 0;
  /// Upper bound on the support size of elements within `budget`.
  virtual std::size_t max_arity(std::size_t budget) const = 0;

  virtual void write(std::string& out, const Elem& a, const PointWriter& point) const = 0;
  virtual Elem read(Cursor& in, const PointReader& point, const CodedOrder& x) const = 0;
  /// How points of finite orders are spelled inside this dilator's payloads.
  virtual PointReader finite_point_reader() const { return read_nat_point; }
  virtual PointWriter finite_point_writer() const { return write_nat_point; }
};

using DilatorPtr = std::shared_ptr<const Predilator>;

/// D(X) as a coded order.
class AppliedOrder final : public CodedOrder {
 public:
  AppliedOrder(const Predilator& d, const CodedOrder& x) : d_(d), x_(x) {}
  std::strong_ordering compare(const Elem& a, const Elem& b) const override {
    return d_.compare(x_, a, b);
  }
  bool contains(const Elem& a) const override { return d_.valid(x_, a); }
  std::vector<Elem> enumerate(std::size_t budget) const override;
  std::string label() const override { return d_.name() + "(" + x_.label() + ")"; }

 private:
  const Predilator& d_;
  const CodedOrder& x_;
};

/// Trace element (n, sigma): sigma in D(n) with supp_n(sigma) = n.
struct TraceElem {
  std::size_t arity = 0;
  Elem payload;

  friend bool operator==(const TraceElem&, const TraceElem&) = default;
};

/// An element of D(X) in normal form: D(e)(trace) with e enumerating the
/// (ascending) support.
struct DilElem {
  TraceElem trace;
  std::vector<Elem> support;

  friend bool operator==(const DilElem&, const DilElem&) = default;
  std::size_t hash() const;
};

struct DilElemHash {
  std::size_t operator()(const DilElem& d) const { return d.hash(); }
};

/// Sorted, duplicate-free support of a raw element.
std::vector<Elem> support(const Predilator& d, const CodedOrder& x, const Elem& a);

/// Normal form of a raw element of D(X).
DilElem normal_form(const Predilator& d, const CodedOrder& x, const Elem& raw);
/// The raw element denoted by a normal form.
Elem denote(const Predilator& d, const DilElem& a);

/// The comparison contract in a common finite order k: the two traces are
/// placed at positions `u` and `v` (ascending subsets of k) and compared in D(k).
std::strong_ordering compare_at(const Predilator& d, std::size_t k, const TraceElem& lhs,
                                std::span<const std::size_t> u, const TraceElem& rhs,
                                std::span<const std::size_t> v);

/// Comparison in D(X) through the union of the two supports.
std::strong_ordering element_compare(const Predilator& d, const CodedOrder& x, const DilElem& a,
                                     const DilElem& b);

/// D(f) on a normal form; `f` must be increasing on the support (checked in `codomain`).
DilElem apply_embedding(const Predilator& d, const CodedOrder& codomain, const PointMap& f,
                        const DilElem& a);

/// Tr(D) restricted to one arity and payload size at most `budget`.
std::vector<TraceElem> trace_enumerate(const Predilator& d, std::size_t arity, std::size_t budget);
bool is_trace(const Predilator& d, const TraceElem& t);

DilatorPtr omega_dilator();
/// X -> 1 + Y*X with supp(0) = {} and supp(1+(y,x)) = {x}.
DilatorPtr affine_dilator(OrderPtr y);
/// E o D, with supp^{E o D}(s) the union of D-supports over the E-support.
DilatorPtr compose(DilatorPtr outer, DilatorPtr inner);

struct LawReport {
  std::string dilator;
  std::size_t max_order = 0;
  std::size_t budget = 0;
  std::size_t elements = 0;
  std::size_t embeddings = 0;
  std::size_t checks = 0;
  std::optional<std::string> violation;
  std::optional<std::string> lint;

  bool ok() const { return !violation; }
  std::string summary() const;
};

/// Exhaustive bounded check of the predilator laws over all finite orders of
/// size <= max_order and all embeddings between them: linearity of each D(n),
/// normal forms, functoriality, naturality of supports, both inclusions of the
/// support condition, and order preservation. With `monotonicity_lint`, also
/// reports (without failing) pointwise f <= g not entailing D(f) <= D(g).
LawReport check_predilator_laws(const Predilator& d, std::size_t max_order, std::size_t budget,
                                bool monotonicity_lint = false);

}  // namespace collapse
