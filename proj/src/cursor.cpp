#include "collapse/cursor.hpp"

#include <cctype>
#include <limits>

namespace collapse {

namespace {
std::string describe(std::size_t pos, const std::string& expected, std::string_view found) {
  std::string msg = "parse error at offset " + std::to_string(pos) + ": expected " + expected;
  msg += found.empty() ? ", found end of input" : ", found '" + std::string(found.substr(0, 12)) + "'";
  return msg;
}
}  // namespace

ParseError::ParseError(std::size_t position, std::string expected, std::string_view found)
    : std::invalid_argument(describe(position, expected, found)),
      position_(position),
      expected_(std::move(expected)) {}

void Cursor::skip_ws() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool Cursor::at_end() {
  skip_ws();
  return pos_ >= text_.size();
}

char Cursor::peek() {
  skip_ws();
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Cursor::accept(std::string_view token) {
  skip_ws();
  if (text_.substr(pos_).starts_with(token)) {
    pos_ += token.size();
    return true;
  }
  return false;
}

void Cursor::expect(std::string_view token) {
  if (!accept(token)) fail("'" + std::string(token) + "'");
}

bool Cursor::peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

std::uint64_t Cursor::read_uint() {
  if (!peek_digit()) fail("natural number");
  std::uint64_t v = 0;
  while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
    auto d = static_cast<std::uint64_t>(text_[pos_] - '0');
    if (v > (std::numeric_limits<std::uint32_t>::max() - d) / 10) fail("natural number below 2^32");
    v = v * 10 + d;
    ++pos_;
  }
  return v;
}

void Cursor::fail(std::string expected) const {
  throw ParseError(pos_, std::move(expected), text_.substr(std::min(pos_, text_.size())));
}

void Cursor::expect_end() {
  if (!at_end()) fail("end of input");
}

Elem read_ordinal(Cursor& in) {
  if (in.peek_digit()) return Elem::nat(static_cast<std::int64_t>(in.read_uint()));
  in.expect("w");
  std::int64_t hi = 1;
  if (in.peek_digit()) hi = static_cast<std::int64_t>(in.read_uint());
  if (hi == 0) in.fail("positive multiple of w");
  std::int64_t lo = 0;
  if (in.accept("+")) lo = static_cast<std::int64_t>(in.read_uint());
  return Elem::ordinal(hi, lo);
}

void write_ordinal(std::string& out, const Elem& e) {
  if (e.tag() != Tag::Ordinal) throw InvariantViolation("not an ordinal code: " + debug_string(e));
  if (e.hi() == 0) {
    out += std::to_string(e.lo());
    return;
  }
  out += 'w';
  if (e.hi() > 1) out += std::to_string(e.hi());
  if (e.lo() > 0) out += "+" + std::to_string(e.lo());
}

Elem read_nat_point(Cursor& in) { return Elem::nat(static_cast<std::int64_t>(in.read_uint())); }

void write_nat_point(std::string& out, const Elem& e) {
  if (e.tag() != Tag::Ordinal || e.hi() != 0)
    throw InvariantViolation("not a finite point: " + debug_string(e));
  out += std::to_string(e.lo());
}

Elem read_var_point(Cursor& in) {
  in.expect("x");
  return read_nat_point(in);
}

void write_var_point(std::string& out, const Elem& e) {
  out += 'x';
  write_nat_point(out, e);
}

}  // namespace collapse
