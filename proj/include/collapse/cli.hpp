#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "collapse/text.hpp"

namespace collapse {

enum ExitCode : int { kPass = 0, kViolation = 1, kUsage = 2, kBudget = 3 };

/// A requested count or fragment did not fit inside the budgets.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One JSON record per line: idx, term, alpha, children, member. Terms come
/// in generation order, so children always precede their parents. With
/// `plus`, non-members of psi+ within max-l are included as well.
std::string export_fragment(const SystemSpec& spec, bool plus = false);

/// Runs one subcommand; `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace collapse
