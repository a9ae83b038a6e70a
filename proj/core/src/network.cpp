#include "layoutcn/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace layoutcn {

const LayoutMatrix* NestDerivation::layout_for(const std::string& array) const {
  for (const auto& [name, layout] : layouts)
    if (name == array) return &layout;
  return nullptr;
}

ConstraintNetwork::ConstraintNetwork(std::vector<std::string> variables,
                                     std::vector<std::vector<LayoutMatrix>> domains,
                                     std::vector<PairConstraint> constraints)
    : variables_(std::move(variables)),
      domains_(std::move(domains)),
      constraints_(std::move(constraints)) {
  if (domains_.size() != variables_.size())
    throw InvariantError("network needs one domain per variable");
  std::set<std::string> seen;
  for (const auto& v : variables_)
    if (!seen.insert(v).second)
      throw InvariantError("duplicate variable '" + v + "'");
  for (std::size_t i = 0; i < domains_.size(); ++i) {
    if (domains_[i].empty())
      throw InvariantError("variable '" + variables_[i] + "' has an empty domain");
    for (std::size_t a = 0; a < domains_[i].size(); ++a)
      for (std::size_t b = a + 1; b < domains_[i].size(); ++b)
        if (domains_[i][a] == domains_[i][b])
          throw InvariantError("duplicate layout in domain of '" + variables_[i] + "'");
  }

  neighbors_.resize(variables_.size());
  for (std::size_t ci = 0; ci < constraints_.size(); ++ci) {
    auto& c = constraints_[ci];
    if (c.first_var >= variables_.size() || c.second_var >= variables_.size())
      throw InvariantError("constraint references an unknown variable");
    if (c.first_var == c.second_var)
      throw InvariantError("self-constraint on '" + variables_[c.first_var] + "'");
    if (c.first_var > c.second_var)
      throw InvariantError("constraint pair must be ordered by variable position");
    auto key = std::make_pair(c.first_var, c.second_var);
    if (!constraint_lookup_.emplace(key, ci).second)
      throw InvariantError("duplicate constraint between '" + variables_[c.first_var] +
                           "' and '" + variables_[c.second_var] + "'");
    neighbors_[c.first_var].push_back(c.second_var);
    neighbors_[c.second_var].push_back(c.first_var);

    std::vector<std::vector<bool>> bits(
        domains_[c.first_var].size(),
        std::vector<bool>(domains_[c.second_var].size(), false));
    for (const auto& pair : c.allowed) {
      auto va = value_index(c.first_var, pair.first);
      auto vb = value_index(c.second_var, pair.second);
      if (!va || !vb)
        throw InvariantError("allowed pair outside the domains of '" +
                             variables_[c.first_var] + "'/'" + variables_[c.second_var] +
                             "'");
      bits[*va][*vb] = true;
    }
    allowed_bits_.push_back(std::move(bits));
  }
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());
}

std::optional<std::size_t> ConstraintNetwork::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> ConstraintNetwork::value_index(std::size_t var,
                                                          const LayoutMatrix& value) const {
  const auto& dom = domains_[var];
  for (std::size_t i = 0; i < dom.size(); ++i)
    if (dom[i] == value) return i;
  return std::nullopt;
}

const PairConstraint* ConstraintNetwork::constraint_between(std::size_t a,
                                                            std::size_t b) const {
  if (a > b) std::swap(a, b);
  auto it = constraint_lookup_.find({a, b});
  if (it == constraint_lookup_.end()) return nullptr;
  return &constraints_[it->second];
}

bool ConstraintNetwork::pair_allowed(const PairConstraint& c, std::size_t va,
                                     std::size_t vb) const {
  std::size_t ci = static_cast<std::size_t>(&c - constraints_.data());
  return allowed_bits_[ci][va][vb];
}

std::optional<LayoutMatrix> derive_layout(const std::vector<Vec>& deltas,
                                          std::size_t dims) {
  for (const auto& d : deltas)
    if (d.size() != dims)
      throw DimensionError("delta dimensionality does not match the array");

  std::vector<Vec> basis = integer_kernel_basis(deltas, dims);
  if (basis.size() + 1 < dims) return std::nullopt;

  std::vector<HyperplaneVector> rows;
  rows.reserve(basis.size());
  for (const auto& v : basis) rows.push_back(canonicalize(v));
  std::sort(rows.begin(), rows.end(),
            [](const HyperplaneVector& a, const HyperplaneVector& b) { return b < a; });
  // With no deltas the complement is full rank; keep the first k-1 rows,
  // which is exactly the row-major layout.
  rows.erase(rows.begin() + (dims - 1), rows.end());
  return LayoutMatrix(dims, std::move(rows));
}

NestDerivation derive_for_nest(const Program& program, const LoopNest& nest,
                               std::size_t innermost) {
  if (innermost >= nest.depth())
    throw IndexError("innermost position out of range for nest '" + nest.name + "'");

  NestDerivation result;
  result.source = {nest.name, innermost};

  // Arrays in order of first reference.
  std::vector<std::string> order;
  for (const auto& ref : nest.references)
    if (std::find(order.begin(), order.end(), ref.array) == order.end())
      order.push_back(ref.array);

  for (const auto& array : order) {
    std::size_t k = program.find_array(array)->dims;

    // References of this array carrying a nonzero delta, by nest position.
    std::vector<std::pair<std::size_t, Vec>> contributing;
    for (std::size_t i = 0; i < nest.references.size(); ++i) {
      if (nest.references[i].array != array) continue;
      Vec delta = innermost_step_delta(nest.references[i], innermost);
      if (std::any_of(delta.begin(), delta.end(), [](Coeff c) { return c != 0; }))
        contributing.emplace_back(i, std::move(delta));
    }

    std::optional<LayoutMatrix> layout;
    while (true) {
      std::vector<Vec> deltas;
      for (const auto& [_, d] : contributing) deltas.push_back(d);
      layout = derive_layout(deltas, k);
      if (layout || contributing.empty()) break;
      result.dropped.push_back({array, contributing.back().first});
      contributing.pop_back();
    }
    if (layout) result.layouts.emplace_back(array, std::move(*layout));
  }
  return result;
}

std::vector<NestDerivation> derive_all(const Program& program) {
  std::vector<NestDerivation> out;
  for (const auto& nest : program.nests) {
    std::vector<std::size_t> choices = nest.allowed_innermost;
    for (std::size_t pos : choices) out.push_back(derive_for_nest(program, nest, pos));
  }
  return out;
}

ConstraintNetwork build_network(const Program& program) {
  std::vector<std::string> variables;
  for (const auto& a : program.arrays) variables.push_back(a.name);
  auto var_of = [&](const std::string& name) {
    return std::find(variables.begin(), variables.end(), name) - variables.begin();
  };

  std::vector<std::vector<LayoutMatrix>> domains(variables.size());
  auto add_to_domain = [&](std::size_t var, const LayoutMatrix& layout) {
    auto& dom = domains[var];
    if (std::find(dom.begin(), dom.end(), layout) == dom.end()) dom.push_back(layout);
  };

  std::map<std::pair<std::size_t, std::size_t>, std::vector<AllowedPair>> pairs;
  for (const auto& derivation : derive_all(program)) {
    for (const auto& [array, layout] : derivation.layouts)
      add_to_domain(var_of(array), layout);
    for (std::size_t a = 0; a < derivation.layouts.size(); ++a) {
      for (std::size_t b = a + 1; b < derivation.layouts.size(); ++b) {
        std::size_t va = var_of(derivation.layouts[a].first);
        std::size_t vb = var_of(derivation.layouts[b].first);
        const LayoutMatrix* la = &derivation.layouts[a].second;
        const LayoutMatrix* lb = &derivation.layouts[b].second;
        if (va > vb) {
          std::swap(va, vb);
          std::swap(la, lb);
        }
        auto& allowed = pairs[{va, vb}];
        auto it = std::find_if(allowed.begin(), allowed.end(), [&](const AllowedPair& p) {
          return p.first == *la && p.second == *lb;
        });
        if (it == allowed.end())
          allowed.push_back({*la, *lb, {derivation.source}});
        else
          it->sources.push_back(derivation.source);
      }
    }
  }

  // Arrays no derivation reached: borrow every distinct layout of the same
  // dimensionality, else fall back to row-major.
  for (std::size_t v = 0; v < variables.size(); ++v) {
    if (!domains[v].empty()) continue;
    std::size_t k = program.arrays[v].dims;
    for (std::size_t w = 0; w < variables.size(); ++w)
      for (const auto& layout : domains[w])
        if (layout.dims() == k) add_to_domain(v, layout);
    if (domains[v].empty()) domains[v].push_back(LayoutMatrix::row_major(k));
  }

  std::vector<PairConstraint> constraints;
  for (auto& [key, allowed] : pairs)
    constraints.push_back({key.first, key.second, std::move(allowed)});
  return ConstraintNetwork(std::move(variables), std::move(domains),
                           std::move(constraints));
}

} // namespace layoutcn
