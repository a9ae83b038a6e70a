#include "layoutcn/heuristic.hpp"

#include <algorithm>

namespace layoutcn {

std::vector<std::string> order_nests(const Program& program) {
  std::vector<std::size_t> idx(program.nests.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return program.nests[a].weight > program.nests[b].weight;
  });
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(program.nests[i].name);
  return out;
}

namespace {

bool annihilates(const LayoutMatrix& layout, const Vec& delta) {
  for (const auto& row : layout.rows())
    if (row.dot(delta) != 0) return false;
  return true;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Coeff c) { return c == 0; });
}

} // namespace

HeuristicResult heuristic_solve(const Program& program) {
  HeuristicResult result;
  Assignment& fixed = result.assignment;

  for (const auto& nest_name : order_nests(program)) {
    const LoopNest* nest = nullptr;
    for (const auto& n : program.nests)
      if (n.name == nest_name) nest = &n;
    if (nest->allowed_innermost.empty()) continue;

    // Score each allowed innermost choice: primary, the number of
    // references to already-fixed arrays whose delta the fixed layout
    // annihilates; secondary, the number of open arrays whose full delta
    // set still derives a layout; final ties fall to the deepest loop
    // (the original innermost).
    std::size_t best_pos = 0;
    long best_fixed = -1, best_open = -1;
    for (std::size_t pos : nest->allowed_innermost) {
      long fixed_ok = 0;
      for (const auto& ref : nest->references) {
        auto it = fixed.find(ref.array);
        if (it == fixed.end()) continue;
        if (annihilates(it->second, innermost_step_delta(ref, pos))) ++fixed_ok;
      }
      long open_ok = 0;
      for (const auto& arr : program.arrays) {
        if (fixed.count(arr.name)) continue;
        std::vector<Vec> deltas;
        bool referenced = false;
        for (const auto& ref : nest->references) {
          if (ref.array != arr.name) continue;
          referenced = true;
          Vec d = innermost_step_delta(ref, pos);
          if (!is_zero(d)) deltas.push_back(std::move(d));
        }
        if (referenced && derive_layout(deltas, arr.dims)) ++open_ok;
      }
      if (fixed_ok > best_fixed || (fixed_ok == best_fixed && open_ok > best_open) ||
          (fixed_ok == best_fixed && open_ok == best_open && pos >= best_pos)) {
        best_fixed = fixed_ok;
        best_open = open_ok;
        best_pos = pos;
      }
    }
    result.innermost[nest->name] = best_pos;

    // Fix layouts for arrays this nest reaches first; never overwrite.
    NestDerivation derivation = derive_for_nest(program, *nest, best_pos);
    for (const auto& [array, layout] : derivation.layouts)
      fixed.emplace(array, layout);
  }

  for (const auto& arr : program.arrays)
    if (!fixed.count(arr.name)) fixed.emplace(arr.name, LayoutMatrix::row_major(arr.dims));
  return result;
}

} // namespace layoutcn
