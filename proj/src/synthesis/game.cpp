#include <algorithm>

#include "adsyn/synthesis.hpp"

namespace adsyn::synthesis {

std::size_t GameSolution::num_winning() const {
  return static_cast<std::size_t>(std::count(winning.begin(), winning.end(), 1));
}

std::vector<StateId> winning_initial(const ProductAutomaton& product, const GameSolution& sol) {
  std::vector<StateId> out;
  for (StateId x = 0; x < product.initial().size(); ++x) {
    if (sol.winning[product.initial()[x]]) out.push_back(x);
  }
  return out;
}

std::vector<StateId> project_initial(const ProductAutomaton& product, const GameSolution& sol,
                                     const adaptive::Ats& ats) {
  std::vector<StateId> out;
  // Nodes (x, Θ) are exactly the first seeds of the ATS.
  const ParamSet all = ParamSet::full(ats.num_params());
  for (StateId id = 0; id < ats.size(); ++id) {
    const auto& n = ats.nodes()[id];
    if (n.params != all) continue;
    if (sol.winning[product.initial()[id]]) out.push_back(n.x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

InputId execute_strategy(const ProductAutomaton& product, const GameSolution& sol, StateId x, StateId s) {
  auto node = product.find(x, s);
  if (!node || !sol.winning[*node]) {
    throw Error(ErrorKind::NotWinning,
                "state " + std::to_string(x) + " with automaton state " + std::to_string(s) + " is not winning");
  }
  return sol.strategy[*node];
}

}  // namespace adsyn::synthesis
