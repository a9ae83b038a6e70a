#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "layoutcn/network.hpp"
#include "layoutcn/solver.hpp"

namespace layoutcn {

/// Set-associative LRU cache parameters; all three values must be powers
/// of two and size must be divisible by associativity * line_size.
struct CacheConfig {
  std::uint64_t size = 8192;
  std::uint64_t associativity = 2;
  std::uint64_t line_size = 32;

  void validate() const;
  /// Parse the flag form "size,assoc,line", e.g. "8192,2,32".
  static CacheConfig parse(const std::string& flag);
};

struct CacheCounts {
  std::uint64_t accesses = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
};

struct RefLocality {
  std::string array;
  bool compatible = false;
};

struct NestLocality {
  std::string name;
  std::size_t innermost = 0;
  std::vector<RefLocality> refs;
};

struct LocalityReport {
  double score = 1.0;
  std::vector<NestLocality> nests;
  std::optional<CacheCounts> l1;
  std::optional<CacheCounts> l2;
};

/// Innermost loop position per nest, keyed by nest name.
using InnermostChoices = std::map<std::string, std::size_t>;

/// Every nest's original innermost loop (the deepest one).
InnermostChoices original_innermost(const Program& program);

/// Innermost choice per nest that explains the most allowed pairs of the
/// assignment (by derivation provenance), falling back to the original
/// loop order. Used to evaluate a solved layout the way the restructuring
/// that produced it intended.
InnermostChoices provenance_innermost(const Program& program,
                                      const Assignment& assignment);

/// Analytic spatial-locality score: the weighted fraction of references
/// whose innermost access delta every row of the array's layout
/// annihilates. Zero deltas (temporal locality) count compatible.
LocalityReport locality_score(const Program& program, const Assignment& assignment,
                              const InnermostChoices& innermost);

/// Exact LRU simulation of the address trace the program emits under the
/// given layouts: arrays placed contiguously in declaration order, each
/// base aligned to the line size; nests iterated with the chosen loop
/// innermost. Deterministic.
CacheCounts simulate_cache(const Program& program, const Assignment& assignment,
                           const InnermostChoices& innermost, const CacheConfig& config);

/// Score plus cache counts in one report; l2 misses are the l1 misses
/// re-filtered through the second-level configuration.
LocalityReport evaluate_locality(const Program& program, const Assignment& assignment,
                                 const InnermostChoices& innermost,
                                 const std::optional<CacheConfig>& l1,
                                 const std::optional<CacheConfig>& l2 = std::nullopt);

/// Row-major layout for every array; the untransformed baseline.
Assignment all_row_major(const Program& program);

} // namespace layoutcn
