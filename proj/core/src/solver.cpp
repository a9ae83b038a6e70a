#include "layoutcn/solver.hpp"

#include <algorithm>
#include <cassert>

#include "layoutcn/rng.hpp"

namespace layoutcn {

namespace {

constexpr int kUnassigned = -1;

struct IndexedPartial {
  std::vector<int> value_of;  // per variable, domain index or kUnassigned
  std::vector<std::size_t> order;  // instantiation order, variable indexes
};

IndexedPartial index_partial(const ConstraintNetwork& net, const PartialInstantiation& p) {
  IndexedPartial ip;
  ip.value_of.assign(net.variable_count(), kUnassigned);
  for (const auto& [name, layout] : p) {
    auto var = net.variable_index(name);
    if (!var) throw DomainError("unknown variable '" + name + "'");
    auto val = net.value_index(*var, layout);
    if (!val)
      throw DomainError("value " + to_string(layout) + " is not in the domain of '" +
                        name + "'");
    if (ip.value_of[*var] != kUnassigned)
      throw DomainError("variable '" + name + "' instantiated twice");
    ip.value_of[*var] = static_cast<int>(*val);
    ip.order.push_back(*var);
  }
  return ip;
}

bool value_consistent(const ConstraintNetwork& net, const std::vector<int>& value_of,
                      std::size_t var, std::size_t val) {
  for (std::size_t w : net.neighbors(var)) {
    if (value_of[w] == kUnassigned) continue;
    const PairConstraint* c = net.constraint_between(var, w);
    std::size_t va = c->first_var == var ? val : static_cast<std::size_t>(value_of[w]);
    std::size_t vb = c->first_var == var ? static_cast<std::size_t>(value_of[w]) : val;
    if (!net.pair_allowed(*c, va, vb)) return false;
  }
  return true;
}

// Greatest number of constraint edges to other uninstantiated variables;
// ties fall to the smaller domain, then to the earlier variable.
std::size_t pick_most_constraining(const ConstraintNetwork& net,
                                   const std::vector<int>& value_of) {
  std::size_t best = net.variable_count();
  std::size_t best_degree = 0;
  for (std::size_t v = 0; v < net.variable_count(); ++v) {
    if (value_of[v] != kUnassigned) continue;
    std::size_t degree = 0;
    for (std::size_t w : net.neighbors(v))
      if (value_of[w] == kUnassigned) ++degree;
    if (best == net.variable_count() || degree > best_degree ||
        (degree == best_degree && net.domain(v).size() < net.domain(best).size())) {
      best = v;
      best_degree = degree;
    }
  }
  return best;
}

std::vector<std::size_t> ranked_value_indexes(const ConstraintNetwork& net,
                                              const std::vector<int>& value_of,
                                              std::size_t var, ValOrder order, Rng& rng) {
  std::vector<std::size_t> idx(net.domain(var).size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  switch (order) {
    case ValOrder::kDomainOrder:
      break;
    case ValOrder::kSeededRandom:
      rng.shuffle(idx);
      break;
    case ValOrder::kOptionMaximizing: {
      std::vector<std::size_t> options(idx.size(), 0);
      for (std::size_t w : net.neighbors(var)) {
        if (value_of[w] != kUnassigned) continue;
        const PairConstraint* c = net.constraint_between(var, w);
        for (std::size_t val = 0; val < idx.size(); ++val) {
          for (std::size_t wb = 0; wb < net.domain(w).size(); ++wb) {
            std::size_t va = c->first_var == var ? val : wb;
            std::size_t vb = c->first_var == var ? wb : val;
            if (net.pair_allowed(*c, va, vb)) ++options[val];
          }
        }
      }
      std::stable_sort(idx.begin(), idx.end(),
                       [&](std::size_t a, std::size_t b) { return options[a] > options[b]; });
      break;
    }
  }
  return idx;
}

} // namespace

bool is_consistent(const ConstraintNetwork& network, const PartialInstantiation& p) {
  IndexedPartial ip = index_partial(network, p);
  for (const auto& c : network.constraints()) {
    int va = ip.value_of[c.first_var];
    int vb = ip.value_of[c.second_var];
    if (va == kUnassigned || vb == kUnassigned) continue;
    if (!network.pair_allowed(c, static_cast<std::size_t>(va),
                              static_cast<std::size_t>(vb)))
      return false;
  }
  return true;
}

std::string select_variable(const ConstraintNetwork& network,
                            const PartialInstantiation& p, const SolverConfig& config) {
  IndexedPartial ip = index_partial(network, p);
  std::vector<std::size_t> open;
  for (std::size_t v = 0; v < network.variable_count(); ++v)
    if (ip.value_of[v] == kUnassigned) open.push_back(v);
  if (open.empty()) throw DomainError("no uninstantiated variable left");

  if (config.var_order == VarOrder::kMostConstraining)
    return network.variables()[pick_most_constraining(network, ip.value_of)];
  Rng rng(config.seed);
  return network.variables()[open[rng.below(open.size())]];
}

std::vector<LayoutMatrix> rank_values(const ConstraintNetwork& network,
                                      const PartialInstantiation& p,
                                      const std::string& var,
                                      const SolverConfig& config) {
  IndexedPartial ip = index_partial(network, p);
  auto v = network.variable_index(var);
  if (!v) throw DomainError("unknown variable '" + var + "'");
  if (ip.value_of[*v] != kUnassigned)
    throw DomainError("variable '" + var + "' is already instantiated");
  Rng rng(config.seed);
  auto idx = ranked_value_indexes(network, ip.value_of, *v, config.val_order, rng);
  std::vector<LayoutMatrix> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(network.domain(*v)[i]);
  return out;
}

std::size_t backjump_target(const ConstraintNetwork& network,
                            const PartialInstantiation& p,
                            const std::string& deadend_var) {
  auto v = network.variable_index(deadend_var);
  if (!v) throw DomainError("unknown variable '" + deadend_var + "'");
  for (std::size_t depth = p.size(); depth > 0; --depth) {
    auto w = network.variable_index(p[depth - 1].first);
    if (!w) throw DomainError("unknown variable '" + p[depth - 1].first + "'");
    if (network.constraint_between(*v, *w)) return depth;
  }
  return 0;
}

SolveResult solve(const ConstraintNetwork& network, const SolverConfig& config) {
  auto start = std::chrono::steady_clock::now();
  SolveResult result;
  std::size_t n = network.variable_count();
  Rng rng(config.seed);

  // Instantiation-order runs follow one seeded order for the whole run, so
  // the order is static and reproducible.
  std::vector<std::size_t> static_order(n);
  for (std::size_t i = 0; i < n; ++i) static_order[i] = i;
  if (config.var_order == VarOrder::kInstantiationOrder) rng.shuffle(static_order);

  struct Frame {
    std::size_t var;
    std::vector<std::size_t> values;  // domain indexes in try order
    std::size_t next = 0;
    bool assigned = false;
    std::vector<bool> culprits;  // delegated from dead ends jumped here
  };

  std::vector<int> value_of(n, kUnassigned);
  std::vector<std::size_t> depth_of(n, 0);
  std::vector<Frame> frames;

  auto snapshot = [&]() {
    PartialInstantiation p;
    for (const auto& f : frames)
      if (f.assigned)
        p.emplace_back(network.variables()[f.var],
                       network.domain(f.var)[f.values[f.next - 1]]);
    return p;
  };

  auto push_next_frame = [&]() {
    std::size_t var = config.var_order == VarOrder::kMostConstraining
                          ? pick_most_constraining(network, value_of)
                          : static_order[frames.size()];
    Frame f{var,
            ranked_value_indexes(network, value_of, var, config.val_order, rng),
            0,
            false,
            std::vector<bool>(n, false)};
    frames.push_back(std::move(f));
  };

  auto finish = [&](bool sat) {
    result.sat = sat;
    if (sat) {
      Assignment a;
      for (const auto& f : frames)
        a.emplace(network.variables()[f.var], network.domain(f.var)[f.values[f.next - 1]]);
      result.assignment = std::move(a);
      result.deepest = snapshot();
    }
    result.stats.elapsed = std::chrono::steady_clock::now() - start;
    return result;
  };

  if (n == 0) return finish(true);
  push_next_frame();

  while (true) {
    Frame& f = frames.back();
    if (f.assigned) {
      value_of[f.var] = kUnassigned;
      f.assigned = false;
    }

    bool advanced = false;
    while (f.next < f.values.size()) {
      std::size_t val = f.values[f.next++];
      ++result.stats.nodes_visited;
      if (value_consistent(network, value_of, f.var, val)) {
        value_of[f.var] = static_cast<int>(val);
        depth_of[f.var] = frames.size() - 1;
        f.assigned = true;
        advanced = true;
        break;
      }
    }

    if (advanced) {
      if (frames.size() > result.stats.max_depth) {
        result.stats.max_depth = frames.size();
        result.deepest = snapshot();
      }
      if (frames.size() == n) return finish(true);
      push_next_frame();
      continue;
    }

    // Dead end: f.var has no value left.
    if (!config.backjump) {
      if (frames.size() == 1) return finish(false);
      ++result.stats.backtracks;
      frames.pop_back();
      continue;
    }

    // Graph-based backjumping: resume at the deepest instantiated variable
    // that shares a constraint with the dead end or with any dead end
    // previously delegated here.
    std::vector<bool> culprits = std::move(f.culprits);
    for (std::size_t w : network.neighbors(f.var))
      if (value_of[w] != kUnassigned) culprits[w] = true;

    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::size_t target_depth = kNone;
    for (std::size_t v = 0; v < n; ++v) {
      if (!culprits[v]) continue;
      assert(value_of[v] != kUnassigned);
      if (target_depth == kNone || depth_of[v] > target_depth)
        target_depth = depth_of[v];
    }
    if (target_depth == kNone) return finish(false);

    Frame& target = frames[target_depth];
    culprits[target.var] = false;
    for (std::size_t v = 0; v < n; ++v)
      if (culprits[v]) target.culprits[v] = true;

    if (target_depth + 2 == frames.size())
      ++result.stats.backtracks;  // jump distance 1 is a plain backtrack
    else
      ++result.stats.backjumps;

    while (frames.size() > target_depth + 1) {
      Frame& popped = frames.back();
      if (popped.assigned) value_of[popped.var] = kUnassigned;
      frames.pop_back();
    }
  }
}

std::vector<Assignment> brute_force(const ConstraintNetwork& network, std::uint64_t cap) {
  std::size_t n = network.variable_count();
  if (n == 0) return {Assignment{}};
  std::uint64_t space = 1;
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t size = network.domain(v).size();
    if (space > cap / size)
      throw CapError("domain product exceeds the enumeration cap of " +
                     std::to_string(cap));
    space *= size;
  }

  std::vector<Assignment> out;
  std::vector<std::size_t> choice(n, 0);
  while (true) {
    bool ok = true;
    for (const auto& c : network.constraints()) {
      if (!network.pair_allowed(c, choice[c.first_var], choice[c.second_var])) {
        ok = false;
        break;
      }
    }
    if (ok) {
      Assignment a;
      for (std::size_t v = 0; v < n; ++v)
        a.emplace(network.variables()[v], network.domain(v)[choice[v]]);
      out.push_back(std::move(a));
    }
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++choice[pos] < network.domain(pos).size()) break;
      choice[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

} // namespace layoutcn
