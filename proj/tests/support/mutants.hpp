#pragma once

#include "collapse/dilator.hpp"

namespace collapse::testing {

/// omega with its raw comparison reversed and everything else intact,
/// including the comparison of placed traces.
class ReversedOmega final : public Predilator {
 public:
  ReversedOmega() : base_(omega_dilator()) {}
  std::string name() const override { return "reversed-omega"; }
  std::strong_ordering compare(const CodedOrder& x, const Elem& a, const Elem& b) const override {
    return reverse(base_->compare(x, a, b));
  }
  std::strong_ordering compare_placed(std::size_t k, const Elem& a, std::span<const std::size_t> u,
                                      const Elem& b, std::span<const std::size_t> v) const override {
    return base_->compare_placed(k, a, u, b, v);
  }
  Elem map(const PointMap& f, const Elem& a) const override { return base_->map(f, a); }
  void collect_support(const Elem& a, std::vector<Elem>& out) const override {
    base_->collect_support(a, out);
  }
  bool valid(const CodedOrder& x, const Elem& a) const override { return base_->valid(x, a); }
  std::vector<Elem> enumerate(const CodedOrder& x, std::span<const Elem> points,
                              std::size_t budget) const override {
    return base_->enumerate(x, points, budget);
  }
  std::size_t payload_size(const Elem& a) const override { return base_->payload_size(a); }
  std::size_t max_arity(std::size_t budget) const override { return base_->max_arity(budget); }
  void write(std::string& out, const Elem& a, const PointWriter& point) const override {
    base_->write(out, a, point);
  }
  Elem read(Cursor& in, const PointReader& point, const CodedOrder& x) const override {
    return base_->read(in, point, x);
  }

 private:
  DilatorPtr base_;
};

}  // namespace collapse::testing
