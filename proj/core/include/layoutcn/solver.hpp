#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "layoutcn/network.hpp"

namespace layoutcn {

/// Assignment to a prefix of the variables, in instantiation order.
using PartialInstantiation = std::vector<std::pair<std::string, LayoutMatrix>>;

/// One layout per array.
using Assignment = std::map<std::string, LayoutMatrix>;

enum class VarOrder {
  kInstantiationOrder,  // fixed seeded order, decided once per run
  kMostConstraining,    // most constraint edges to uninstantiated variables
};

enum class ValOrder {
  kDomainOrder,       // as listed in the domain
  kOptionMaximizing,  // most options left open for future assignments
  kSeededRandom,      // fresh seeded permutation per visit
};

struct SolverConfig {
  VarOrder var_order = VarOrder::kInstantiationOrder;
  ValOrder val_order = ValOrder::kSeededRandom;
  bool backjump = false;
  std::uint64_t seed = 0;

  static SolverConfig base(std::uint64_t seed = 0) {
    return {VarOrder::kInstantiationOrder, ValOrder::kSeededRandom, false, seed};
  }
  static SolverConfig enhanced(std::uint64_t seed = 0) {
    return {VarOrder::kMostConstraining, ValOrder::kOptionMaximizing, true, seed};
  }
};

struct SolverStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t backjumps = 0;
  std::uint64_t max_depth = 0;
  std::chrono::steady_clock::duration elapsed{};

  /// Equality ignores elapsed time.
  friend bool operator==(const SolverStats& a, const SolverStats& b) {
    return a.nodes_visited == b.nodes_visited && a.backtracks == b.backtracks &&
           a.backjumps == b.backjumps && a.max_depth == b.max_depth;
  }
};

struct SolveResult {
  bool sat = false;
  std::optional<Assignment> assignment;
  SolverStats stats;
  /// Deepest consistent partial instantiation reached; a diagnostic for
  /// unsat networks.
  PartialInstantiation deepest;
};

/// True iff every constraint whose two variables are both instantiated is
/// satisfied by the chosen pair. Throws DomainError when a chosen value is
/// not in its variable's domain.
bool is_consistent(const ConstraintNetwork& network, const PartialInstantiation& p);

/// Next variable to instantiate. Most-constraining mode picks the
/// uninstantiated variable with the most constraint edges to other
/// uninstantiated variables, breaking ties by smaller domain and then by
/// variable position; instantiation-order mode draws from the seed stream.
std::string select_variable(const ConstraintNetwork& network,
                            const PartialInstantiation& p, const SolverConfig& config);

/// Domain of `var` in the order the solver would try it. Option-maximizing
/// mode sorts by the number of compatible values left in uninstantiated
/// neighbors' domains (stable, descending).
std::vector<LayoutMatrix> rank_values(const ConstraintNetwork& network,
                                      const PartialInstantiation& p,
                                      const std::string& var,
                                      const SolverConfig& config);

/// Depth to resume from after `deadend_var` exhausts its values: the most
/// recently instantiated variable sharing a constraint edge with it, or 0
/// when none does (the search then terminates unsat).
std::size_t backjump_target(const ConstraintNetwork& network,
                            const PartialInstantiation& p,
                            const std::string& deadend_var);

/// Depth-first search for a consistent total assignment. Complete: returns
/// an assignment iff one exists, under every configuration.
SolveResult solve(const ConstraintNetwork& network, const SolverConfig& config);

/// Every consistent total assignment, by Cartesian enumeration. Serves as
/// the oracle for the search. Throws CapError when the domain product
/// exceeds `cap`.
std::vector<Assignment> brute_force(const ConstraintNetwork& network,
                                    std::uint64_t cap = 1000000);

} // namespace layoutcn
