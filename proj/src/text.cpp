#include "collapse/text.hpp"

#include <cctype>
#include <cstdlib>

#include "collapse/cursor.hpp"
#include "collapse/gamma.hpp"

namespace collapse {

namespace {

std::size_t to_size(std::string_view key, std::string_view v) {
  Cursor in(v);
  auto n = in.read_uint();
  in.expect_end();
  if (n == 0) throw ValidationError(std::string(key) + " must be positive");
  return n;
}

// Splits on commas outside parentheses.
std::vector<std::string_view> split_top(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Grammar parse_grammar(std::string_view name) {
  if (name == "gamma") return Grammar::Gamma;
  if (name == "psi") return Grammar::Psi;
  if (name == "word") return Grammar::Word;
  throw ValidationError("unknown grammar: " + std::string(name));
}

Budgets parse_budgets(std::string_view text, Budgets base) {
  if (trim(text).empty()) return base;
  for (auto part : split_top(text)) {
    part = trim(part);
    auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ValidationError("budget needs key=value: " + std::string(part));
    auto key = trim(part.substr(0, eq));
    auto val = trim(part.substr(eq + 1));
    if (key == "max-l") base.max_l = to_size(key, val);
    else if (key == "max-payload") base.max_payload = to_size(key, val);
    else if (key == "count") base.count = to_size(key, val);
    else throw ValidationError("unknown budget: " + std::string(key));
  }
  return base;
}

Budgets default_budgets() {
  const char* env = std::getenv("COLLAPSE_BUDGETS");
  return env ? parse_budgets(env) : Budgets{};
}

DilatorPtr parse_dilator(std::string_view text) {
  text = trim(text);
  if (text == "omega") return omega_dilator();
  if (text.substr(0, 7) == "affine:")
    return affine_dilator(finite_order(static_cast<std::int64_t>(to_size("affine", text.substr(7)))));
  if (text.substr(0, 6) == "gamma:") return gamma::dilator(to_size("gamma", text.substr(6)));
  if (text.substr(0, 8) == "compose(" && text.back() == ')') {
    auto parts = split_top(text.substr(8, text.size() - 9));
    if (parts.size() != 2) throw ValidationError("compose takes two dilators");
    return compose(parse_dilator(parts[0]), parse_dilator(parts[1]));
  }
  throw ValidationError("unknown dilator: " + std::string(text));
}

OrderPtr parse_nu(std::string_view text) {
  Cursor in(text);
  Elem o = read_ordinal(in);
  in.expect_end();
  if (o.hi() == 0 && o.lo() == 0) throw ValidationError("nu must be nonempty");
  return ordinal_order(o.hi(), o.lo());
}

SystemSpec parse_system_spec(std::string_view text, Budgets base) {
  SystemSpec s;
  std::string budgets;
  for (auto part : split_top(text)) {
    part = trim(part);
    auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ValidationError("system needs key=value: " + std::string(part));
    auto key = trim(part.substr(0, eq));
    auto val = trim(part.substr(eq + 1));
    if (key == "nu") s.nu_text = val;
    else if (key == "dil") s.dil_text = val;
    else {
      if (!budgets.empty()) budgets += ',';
      budgets += part;
    }
  }
  if (s.nu_text.empty() || s.dil_text.empty()) throw ValidationError("system needs nu= and dil=");
  s.nu = parse_nu(s.nu_text);
  s.dil = parse_dilator(s.dil_text);
  s.budgets = parse_budgets(budgets, base);
  return s;
}

PsiPtr SystemSpec::build() const {
  PsiCaps caps;
  caps.max_l = budgets.max_l;
  caps.max_payload = budgets.max_payload;
  return make_psi_system(nu, dil, caps);
}

Elem parse_term(Grammar g, std::string_view text, const TermContext& ctx) {
  switch (g) {
    case Grammar::Psi:
      if (!ctx.psi) throw ValidationError("psi grammar needs a system");
      return ctx.psi->parse(text);
    case Grammar::Gamma: {
      Cursor in(text);
      Elem t = gamma::read(in, read_var_point, *ctx.points);
      in.expect_end();
      return t;
    }
    case Grammar::Word: {
      Cursor in(text);
      Elem t = omega_dilator()->read(in, read_nat_point, *ctx.points);
      in.expect_end();
      return t;
    }
  }
  throw InvariantViolation("unreachable grammar");
}

std::string print_term(Grammar g, const Elem& t, const TermContext& ctx) {
  std::string out;
  switch (g) {
    case Grammar::Psi: return ctx.psi->to_string(t);
    case Grammar::Gamma: gamma::write(out, t, write_var_point); break;
    case Grammar::Word: omega_dilator()->write(out, t, write_nat_point); break;
  }
  return out;
}

}  // namespace collapse
