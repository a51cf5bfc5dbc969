#include <algorithm>

#include "adsyn/synthesis.hpp"

namespace adsyn::synthesis {

namespace {

constexpr std::uint32_t kUnseen = static_cast<std::uint32_t>(-1);

struct SccScratch {
  explicit SccScratch(std::size_t n) : in_set(n, 0), index(n, kUnseen), low(n, 0), on_stack(n, 0) {}
  NodeSet in_set;
  std::vector<std::uint32_t> index;
  std::vector<std::uint32_t> low;
  NodeSet on_stack;
};

// SCCs of the graph v -> succ(v) restricted to `members` (iterative Tarjan).
// Only components that contain a cycle are returned.
std::vector<std::vector<StateId>> cyclic_components(const std::vector<std::vector<StateId>>& succ,
                                                    const std::vector<StateId>& members, SccScratch& sc) {
  for (StateId v : members) sc.in_set[v] = 1;
  auto& index = sc.index;
  auto& low = sc.low;
  auto& on_stack = sc.on_stack;
  const auto& in_set = sc.in_set;
  std::vector<StateId> stack;
  std::vector<std::pair<StateId, std::size_t>> call;
  std::vector<std::vector<StateId>> out;
  std::uint32_t counter = 0;

  for (StateId root : members) {
    if (index[root] != kUnseen) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < succ[v].size()) {
        const StateId w = succ[v][pos++];
        if (!in_set[w]) continue;
        if (index[w] == kUnseen) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const StateId done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] != index[done]) continue;
      std::vector<StateId> comp;
      StateId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp.push_back(w);
      } while (w != done);
      const bool cyclic = comp.size() > 1 ||
                          std::find(succ[done].begin(), succ[done].end(), done) != succ[done].end();
      if (cyclic) out.push_back(std::move(comp));
    }
  }
  for (StateId v : members) {
    sc.in_set[v] = 0;
    index[v] = kUnseen;
  }
  return out;
}

}  // namespace

std::optional<std::string> verify_strategy(const RabinGame& g, const GameSolution& sol) {
  const std::size_t n = g.size();
  if (sol.winning.size() != n || sol.strategy.size() != n) return "solution size does not match the game";

  std::vector<std::vector<StateId>> succ(n);
  std::vector<StateId> winning;
  for (StateId v = 0; v < n; ++v) {
    const bool has = sol.strategy[v] != kNoInput;
    if (static_cast<bool>(sol.winning[v]) != has) {
      return "strategy " + std::string(has ? "defined outside" : "missing inside") + " the winning region at node " +
             std::to_string(v);
    }
    if (!has) continue;
    if (sol.strategy[v] >= g.graph.num_inputs()) return "input out of range at node " + std::to_string(v);
    winning.push_back(v);
    auto s = g.graph.successors(v, sol.strategy[v]);
    succ[v].assign(s.begin(), s.end());
    for (StateId w : succ[v]) {
      if (!sol.winning[w]) {
        return "node " + std::to_string(v) + " leaves the winning region to " + std::to_string(w);
      }
    }
  }

  // A strongly connected set avoiding F_i and meeting I_i satisfies pair i, and
  // so does every cycle inside it that meets I_i; the remaining candidates for
  // a bad cycle are the cycles avoiding I_i.
  SccScratch scratch(n);
  std::vector<std::vector<StateId>> work{winning};
  while (!work.empty()) {
    std::vector<StateId> members = std::move(work.back());
    work.pop_back();
    for (auto& comp : cyclic_components(succ, members, scratch)) {
      std::optional<std::size_t> good;
      for (std::size_t i = 0; i < g.pairs.size() && !good; ++i) {
        const auto& p = g.pairs[i];
        const bool hits_fin = std::any_of(comp.begin(), comp.end(), [&](StateId v) { return p.fin[v]; });
        const bool hits_inf = std::any_of(comp.begin(), comp.end(), [&](StateId v) { return p.inf[v]; });
        if (!hits_fin && hits_inf) good = i;
      }
      if (!good) {
        std::sort(comp.begin(), comp.end());
        return "cycle through node " + std::to_string(comp.front()) + " violates every pair";
      }
      std::vector<StateId> rest;
      for (StateId v : comp) {
        if (!g.pairs[*good].inf[v]) rest.push_back(v);
      }
      if (!rest.empty()) work.push_back(std::move(rest));
    }
  }
  return std::nullopt;
}

}  // namespace adsyn::synthesis
