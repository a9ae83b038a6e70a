#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "layoutcn/layout_algebra.hpp"

namespace layoutcn {

struct ArrayDecl {
  std::string name;
  std::size_t dims = 1;
  Vec extents;               // elements per dimension
  Coeff element_size = 4;    // bytes

  friend bool operator==(const ArrayDecl&, const ArrayDecl&) = default;
};

struct Loop {
  std::string index;
  Coeff lower = 0;
  Coeff upper = 0;  // inclusive

  Coeff trip_count() const { return upper - lower + 1; }
  friend bool operator==(const Loop&, const Loop&) = default;
};

/// One array reference inside a nest: the element F*I + f is touched at
/// iteration vector I.
struct AffineReference {
  std::string array;
  std::vector<Vec> matrix;  // k rows, n columns (n = nest depth)
  Vec offset;               // k entries

  friend bool operator==(const AffineReference&, const AffineReference&) = default;
};

struct LoopNest {
  std::string name;
  double weight = 0.0;  // importance; defaults to the iteration count
  std::vector<Loop> loops;  // outermost first
  std::vector<std::size_t> allowed_innermost;  // loop positions, ascending
  std::vector<AffineReference> references;

  std::size_t depth() const { return loops.size(); }
  double iteration_count() const;
  std::optional<std::size_t> loop_position(const std::string& index) const;

  friend bool operator==(const LoopNest&, const LoopNest&) = default;
};

struct Program {
  std::vector<ArrayDecl> arrays;
  std::vector<LoopNest> nests;

  const ArrayDecl* find_array(const std::string& name) const;
  /// Checks every invariant; throws ParseError/DimensionError with a
  /// location-carrying message on the first violation.
  void validate() const;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Parse and validate the JSON program description (schema in the README).
/// Nest weights default to the nest's iteration count; allowed_innermost
/// defaults to every loop.
Program parse_program(const std::string& json_text);

std::string serialize_program(const Program& program);

/// Element difference between two successive iterations of the chosen
/// innermost loop: F applied to that loop's unit step, i.e. column
/// `innermost` of the access matrix.
Vec innermost_step_delta(const AffineReference& ref, std::size_t innermost);

} // namespace layoutcn
