#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "collapse/dilator.hpp"
#include "collapse/elem.hpp"
#include "collapse/order.hpp"
#include "collapse/psi.hpp"

namespace collapse {

enum class Grammar { Gamma, Psi, Word };

Grammar parse_grammar(std::string_view name);

struct Budgets {
  std::size_t max_l = 9;
  std::size_t max_payload = 6;
  std::size_t count = 300;
};

/// Defaults overridden by `COLLAPSE_BUDGETS`, e.g. "max-l=7,count=50".
Budgets default_budgets();
Budgets parse_budgets(std::string_view text, Budgets base = {});

/// A psi system named by text such as "nu=w+1,dil=compose(omega,affine:2),max-l=7".
struct SystemSpec {
  std::string nu_text;
  std::string dil_text;
  OrderPtr nu;
  DilatorPtr dil;
  Budgets budgets;

  PsiPtr build() const;
};

/// dil is omega | affine:<n> | gamma:<n> | compose(<dil>,<dil>). For gamma
/// the number caps sequence length.
DilatorPtr parse_dilator(std::string_view text);
OrderPtr parse_nu(std::string_view text);
SystemSpec parse_system_spec(std::string_view text, Budgets base = default_budgets());

/// Terms by grammar. Gamma terms range over variables x0..x{n-1} of the
/// finite order `context`; words are `w[...]` over it; psi terms belong to `psi`.
struct TermContext {
  OrderPtr points;  // gamma variables and word letters
  PsiPtr psi;
};

Elem parse_term(Grammar g, std::string_view text, const TermContext& ctx);
std::string print_term(Grammar g, const Elem& t, const TermContext& ctx);

}  // namespace collapse
