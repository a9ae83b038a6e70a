#pragma once

#include <string>
#include <vector>

#include "layoutcn/solver.hpp"

namespace layoutcn {

/// Nest names ordered by descending importance (weight), ties in
/// declaration order.
std::vector<std::string> order_nests(const Program& program);

struct HeuristicResult {
  Assignment assignment;
  /// Innermost loop chosen per nest, keyed by nest name.
  std::map<std::string, std::size_t> innermost;
};

/// The propagation baseline: process nests from most to least important;
/// per nest pick the innermost loop satisfying the most references to
/// already-fixed arrays, then derive and fix layouts for the arrays still
/// open. Always produces a total assignment; arrays never reached default
/// to row-major.
HeuristicResult heuristic_solve(const Program& program);

} // namespace layoutcn
