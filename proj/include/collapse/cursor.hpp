#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "collapse/elem.hpp"

namespace collapse {

/// Syntax error with the byte offset where parsing stopped and what the
/// parser expected there.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t position, std::string expected, std::string_view found);
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

/// Term text that parsed but violates a term-formation side condition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Whitespace-insensitive cursor over a term literal.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws();
  bool at_end();
  char peek();
  /// Consumes `token` if it is next (after whitespace).
  bool accept(std::string_view token);
  void expect(std::string_view token);
  bool peek_digit();
  std::uint64_t read_uint();
  std::size_t position() const { return pos_; }
  [[noreturn]] void fail(std::string expected) const;
  void expect_end();

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

using PointReader = std::function<Elem(Cursor&)>;
using PointWriter = std::function<void(std::string&, const Elem&)>;

/// Ordinal literals: decimal, `w`, `w+k`, `w2`, `w2+k` (and `w<k>` generally).
Elem read_ordinal(Cursor& in);
void write_ordinal(std::string& out, const Elem& e);

/// Points of a finite order written as naturals `i`.
Elem read_nat_point(Cursor& in);
void write_nat_point(std::string& out, const Elem& e);
/// Points of a finite order written as variables `x<i>`.
Elem read_var_point(Cursor& in);
void write_var_point(std::string& out, const Elem& e);

}  // namespace collapse
