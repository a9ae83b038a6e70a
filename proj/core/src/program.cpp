#include "layoutcn/program.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace layoutcn {

double LoopNest::iteration_count() const {
  double n = 1.0;
  for (const auto& l : loops) n *= static_cast<double>(l.trip_count());
  return n;
}

std::optional<std::size_t> LoopNest::loop_position(const std::string& index) const {
  for (std::size_t i = 0; i < loops.size(); ++i)
    if (loops[i].index == index) return i;
  return std::nullopt;
}

const ArrayDecl* Program::find_array(const std::string& name) const {
  for (const auto& a : arrays)
    if (a.name == name) return &a;
  return nullptr;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

void validate_reference(const Program& p, const LoopNest& nest,
                        const AffineReference& ref, const std::string& where) {
  const ArrayDecl* arr = p.find_array(ref.array);
  if (!arr) fail(where, "unknown array '" + ref.array + "'");
  std::size_t k = arr->dims;
  std::size_t n = nest.depth();
  if (ref.matrix.size() != k) {
    std::ostringstream os;
    os << where << ": access matrix has " << ref.matrix.size() << " rows but array '"
       << ref.array << "' has " << k << " dimensions";
    throw DimensionError(os.str());
  }
  for (const auto& row : ref.matrix)
    if (row.size() != n) {
      std::ostringstream os;
      os << where << ": access matrix row width " << row.size()
         << " does not match nest depth " << n;
      throw DimensionError(os.str());
    }
  if (ref.offset.size() != k) {
    std::ostringstream os;
    os << where << ": offset has " << ref.offset.size() << " entries, expected " << k;
    throw DimensionError(os.str());
  }
  // The referenced element must stay inside the array for every in-bounds
  // iteration vector; bounds are rectangular so the extrema separate per
  // subscript.
  for (std::size_t r = 0; r < k; ++r) {
    Coeff lo = ref.offset[r], hi = ref.offset[r];
    for (std::size_t c = 0; c < n; ++c) {
      Coeff a = ref.matrix[r][c] * nest.loops[c].lower;
      Coeff b = ref.matrix[r][c] * nest.loops[c].upper;
      lo += std::min(a, b);
      hi += std::max(a, b);
    }
    if (lo < 0 || hi >= arr->extents[r]) {
      std::ostringstream os;
      os << where << ": subscript " << r << " of '" << ref.array << "' spans [" << lo
         << ", " << hi << "], outside extent " << arr->extents[r];
      throw ParseError(os.str());
    }
  }
}

} // namespace

void Program::validate() const {
  std::set<std::string> names;
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    const auto& a = arrays[i];
    std::string where = "arrays[" + std::to_string(i) + "]";
    if (a.name.empty()) fail(where, "array name must be non-empty");
    if (!names.insert(a.name).second) fail(where, "duplicate array name '" + a.name + "'");
    if (a.dims == 0) fail(where, "dims must be at least 1");
    if (a.extents.size() != a.dims)
      fail(where, "extents length does not match dims");
    for (Coeff e : a.extents)
      if (e <= 0) fail(where, "extents must be positive");
    if (a.element_size <= 0) fail(where, "element_size must be positive");
  }
  if (nests.empty()) fail("nests", "program must contain at least one nest");
  std::set<std::string> nest_names;
  for (std::size_t i = 0; i < nests.size(); ++i) {
    const auto& nest = nests[i];
    std::string where = "nests[" + std::to_string(i) + "]";
    if (nest.name.empty()) fail(where, "nest name must be non-empty");
    if (!nest_names.insert(nest.name).second)
      fail(where, "duplicate nest name '" + nest.name + "'");
    if (nest.loops.empty()) fail(where, "nest must contain at least one loop");
    if (nest.weight < 0) fail(where, "weight must be nonnegative");
    std::set<std::string> indices;
    for (const auto& l : nest.loops) {
      if (!indices.insert(l.index).second)
        fail(where, "duplicate loop index '" + l.index + "'");
      if (l.lower > l.upper)
        fail(where, "loop '" + l.index + "' has lower > upper");
    }
    for (std::size_t pos : nest.allowed_innermost)
      if (pos >= nest.loops.size()) fail(where, "allowed_innermost position out of range");
    for (std::size_t j = 0; j < nest.references.size(); ++j)
      validate_reference(*this, nest, nest.references[j],
                         where + ".references[" + std::to_string(j) + "]");
  }
}

Vec innermost_step_delta(const AffineReference& ref, std::size_t innermost) {
  if (ref.matrix.empty()) return {};
  if (innermost >= ref.matrix[0].size())
    throw IndexError("innermost position " + std::to_string(innermost) +
                     " exceeds nest depth " + std::to_string(ref.matrix[0].size()));
  Vec delta(ref.matrix.size());
  for (std::size_t r = 0; r < ref.matrix.size(); ++r) delta[r] = ref.matrix[r][innermost];
  return delta;
}

} // namespace layoutcn
