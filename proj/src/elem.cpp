#include "collapse/elem.hpp"

#include <sstream>

namespace collapse {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

void require(const Elem& e) {
  if (e.is_null()) throw InvariantViolation("null element code");
}

}  // namespace

Elem Elem::ordinal(std::int64_t hi, std::int64_t lo) {
  if (hi < 0 || lo < 0) throw DecodeError("negative ordinal code");
  constexpr std::int64_t kShared = 256;
  if (hi == 0 && lo < kShared) {
    // small naturals are interned; they are the points of every finite order
    static const std::vector<Elem> table = [] {
      std::vector<Elem> t;
      for (std::int64_t i = 0; i < kShared; ++i) t.push_back(make_ordinal(0, i));
      return t;
    }();
    return table[static_cast<std::size_t>(lo)];
  }
  return make_ordinal(hi, lo);
}

Elem Elem::make_ordinal(std::int64_t hi, std::int64_t lo) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Ordinal;
  n->hi = hi;
  n->lo = lo;
  n->hash = mix(mix(mix(0, static_cast<std::size_t>(Tag::Ordinal)), hi), lo);
  n->size = static_cast<std::size_t>(hi + lo);
  return Elem(std::move(n));
}

Elem Elem::node(Tag tag, std::vector<Elem> kids) {
  if (tag == Tag::Ordinal) throw InvariantViolation("use Elem::ordinal");
  auto n = std::make_shared<Node>();
  n->tag = tag;
  std::size_t h = mix(0, static_cast<std::size_t>(tag));
  std::size_t size = 1;
  for (const auto& k : kids) {
    require(k);
    h = mix(h, k.hash());
    size += k.code_size();
  }
  h = mix(h, kids.size());
  n->count = kids.size();
  if (kids.size() > n->small.size())
    n->large = std::move(kids);
  else
    std::move(kids.begin(), kids.end(), n->small.begin());
  n->hash = h;
  n->size = size;
  return Elem(std::move(n));
}

void Elem::null_access() { throw InvariantViolation("null element code"); }

bool Elem::deep_equal(const Node& x, const Node& y) {
  if (x.tag != y.tag || x.hi != y.hi || x.lo != y.lo ||
      x.count != y.count)
    return false;
  auto a = x.kids();
  auto b = y.kids();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

namespace {

void render(std::ostringstream& os, const Elem& e) {
  if (e.is_null()) {
    os << "<null>";
    return;
  }
  auto list = [&](const char* open, const char* close) {
    os << open;
    for (std::size_t i = 0; i < e.arity(); ++i) {
      if (i) os << ',';
      render(os, e.kid(i));
    }
    os << close;
  };
  switch (e.tag()) {
    case Tag::Ordinal:
      if (e.hi() == 0) {
        os << e.lo();
      } else {
        os << 'w';
        if (e.hi() > 1) os << e.hi();
        if (e.lo() > 0) os << '+' << e.lo();
      }
      break;
    case Tag::Left: list("L(", ")"); break;
    case Tag::Right: list("R(", ")"); break;
    case Tag::Pair: list("(", ")"); break;
    case Tag::Word: list("w[", "]"); break;
    case Tag::GammaZero: os << '0'; break;
    case Tag::GammaSc: list("G(", ")"); break;
    case Tag::GammaPv: list("pv(", ")"); break;
    case Tag::GammaSeq: list("<", ">"); break;
    case Tag::AffineZero: os << 'o'; break;
    case Tag::AffineOne: list("a(", ")"); break;
    case Tag::Psi: {
      os << "p[";
      render(os, e.kid(0));
      os << "]({";
      for (std::size_t i = 2; i < e.arity(); ++i) {
        if (i > 2) os << ',';
        render(os, e.kid(i));
      }
      os << "};";
      render(os, e.kid(1));
      os << ')';
      break;
    }
  }
}

}  // namespace

std::string debug_string(const Elem& e) {
  std::ostringstream os;
  render(os, e);
  return os.str();
}

const char* to_string(std::strong_ordering c) {
  if (c < 0) return "LT";
  if (c > 0) return "GT";
  return "EQ";
}

}  // namespace collapse
