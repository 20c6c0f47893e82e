#pragma once

#include <cstdint>
#include <vector>

#include "collapse/elem.hpp"
#include "collapse/order.hpp"
#include "collapse/report.hpp"

/// Property batteries for Gamma(X). Tuples are drawn from `members` in two
/// ways: exhaustively, all tuples whose L-measures sum to at most `tuple_l`,
/// and `samples` seeded uniform tuples of each arity.
namespace collapse::gamma {

struct BatteryScope {
  std::size_t tuple_l = 5;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

/// The total Veblen function: range and SC characterizations, the fixed
/// point equivalence, s, t <= phi st, strict monotonicity in t, weak
/// monotonicity in s, comparison with Gamma_x and between phi-values. Also
/// s, t < phi-bar st and t0 < <t0, ...> on every member.
CheckReport check_veblen(const CodedOrder& x, const std::vector<Elem>& members,
                         const BatteryScope& scope);

/// Addition laws (a)-(d), support bounds for phi, + and omega-times, and
/// the monotonicity facts about omega-times.
CheckReport check_arithmetic(const CodedOrder& x, const std::vector<Elem>& members,
                             const BatteryScope& scope);

}  // namespace collapse::gamma
