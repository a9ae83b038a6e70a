#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "layoutcn/program.hpp"

namespace layoutcn {

/// Identifies the loop restructuring that produced a derivation or an
/// allowed layout pair: a nest together with the loop chosen innermost.
struct Provenance {
  std::string nest;
  std::size_t innermost = 0;  // loop position within the nest

  friend bool operator==(const Provenance&, const Provenance&) = default;
  friend auto operator<=>(const Provenance&, const Provenance&) = default;
};

struct DroppedRef {
  std::string array;
  std::size_t ref_index = 0;  // position in the nest's reference list

  friend bool operator==(const DroppedRef&, const DroppedRef&) = default;
};

/// Per-array best layouts for one nest under one innermost-loop choice.
struct NestDerivation {
  Provenance source;
  std::vector<std::pair<std::string, LayoutMatrix>> layouts;  // array order of first use
  std::vector<DroppedRef> dropped;

  const LayoutMatrix* layout_for(const std::string& array) const;
};

/// One allowed layout combination for a pair of arrays, with every
/// restructuring that proposed it.
struct AllowedPair {
  LayoutMatrix first;
  LayoutMatrix second;
  std::vector<Provenance> sources;

  friend bool operator==(const AllowedPair& a, const AllowedPair& b) {
    return a.first == b.first && a.second == b.second;
  }
};

struct PairConstraint {
  std::size_t first_var = 0;   // index into variables, first_var < second_var
  std::size_t second_var = 0;
  std::vector<AllowedPair> allowed;
};

/// Binary constraint network over array variables: each variable's domain
/// is a set of candidate layouts, each constraint a set of allowed layout
/// pairs. Immutable once built; shared freely across solver runs.
class ConstraintNetwork {
public:
  ConstraintNetwork(std::vector<std::string> variables,
                    std::vector<std::vector<LayoutMatrix>> domains,
                    std::vector<PairConstraint> constraints);

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t variable_count() const { return variables_.size(); }
  const std::vector<LayoutMatrix>& domain(std::size_t var) const { return domains_[var]; }
  const std::vector<PairConstraint>& constraints() const { return constraints_; }

  std::optional<std::size_t> variable_index(const std::string& name) const;
  std::optional<std::size_t> value_index(std::size_t var, const LayoutMatrix& value) const;

  /// Constraint between two variables, if any (order-insensitive).
  const PairConstraint* constraint_between(std::size_t a, std::size_t b) const;

  /// Variables sharing a constraint with `var`.
  const std::vector<std::size_t>& neighbors(std::size_t var) const {
    return neighbors_[var];
  }

  /// True iff assigning `va` to constraint.first_var and `vb` to
  /// constraint.second_var (domain value indexes) is allowed.
  bool pair_allowed(const PairConstraint& c, std::size_t va, std::size_t vb) const;

private:
  std::vector<std::string> variables_;
  std::vector<std::vector<LayoutMatrix>> domains_;
  std::vector<PairConstraint> constraints_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> constraint_lookup_;
  // allowed_bits_[ci][va] has bit vb set iff (va, vb) is allowed.
  std::vector<std::vector<std::vector<bool>>> allowed_bits_;
};

/// Best layout annihilating every access delta: a basis of the integer
/// orthogonal complement of the deltas, provided it has rank >= k-1.
/// Rows are canonical and ordered descending lexicographically; with no
/// deltas at all the row-major layout results. Absent when the deltas
/// leave no spatial locality to exploit.
std::optional<LayoutMatrix> derive_layout(const std::vector<Vec>& deltas,
                                          std::size_t dims);

/// Derive the best layout per referenced array for one nest under the
/// given innermost-loop choice. When one array's references conflict,
/// references are dropped highest-index-first until a layout exists.
NestDerivation derive_for_nest(const Program& program, const LoopNest& nest,
                               std::size_t innermost);

/// All derivations for every nest and every allowed innermost choice, in
/// program order.
std::vector<NestDerivation> derive_all(const Program& program);

/// Assemble the constraint network: every derivation contributes its
/// layouts to the domains, and every array pair derived under the same
/// (nest, innermost) choice contributes an allowed pair. Arrays that no
/// derivation reaches borrow every distinct layout of matching
/// dimensionality, falling back to row-major. Deterministic.
ConstraintNetwork build_network(const Program& program);

/// Diagnostics produced while loading a serialized network.
struct NetworkIngest {
  ConstraintNetwork network;
  std::vector<std::string> diagnostics;
};

/// Load a network from its JSON form. Allowed pairs naming layouts absent
/// from the declared domains can never be selected; they are dropped and
/// reported as diagnostics.
NetworkIngest parse_network(const std::string& json_text);

std::string serialize_network(const ConstraintNetwork& network);

} // namespace layoutcn
