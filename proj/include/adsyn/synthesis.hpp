#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "adsyn/adaptive.hpp"
#include "adsyn/common.hpp"
#include "adsyn/logic.hpp"
#include "adsyn/systems.hpp"

namespace adsyn::synthesis {

using NodeSet = std::vector<char>;

struct GamePair {
  NodeSet fin;
  NodeSet inf;
};

/// Turn-based game: the controller picks an input, the environment picks any
/// successor. `graph` carries the arena; labels on it are unused.
struct RabinGame {
  systems::TransitionSystem graph;
  std::vector<GamePair> pairs;

  std::size_t size() const { return graph.num_states(); }
};

inline constexpr InputId kNoInput = static_cast<InputId>(-1);

struct GameSolution {
  NodeSet winning;
  std::vector<InputId> strategy;  // kNoInput outside the winning region

  std::size_t num_winning() const;
};

/// Winning region and memoryless strategy for the controller. Requires a
/// non-blocking arena (InvalidModel otherwise).
GameSolution solve_rabin(const RabinGame& g);

/// Independent check of a solution: strategy defined exactly on the winning
/// set, winning set closed under the strategy, and no strongly connected set
/// of the strategy-induced graph violates every pair. Returns a description
/// of the first problem found.
std::optional<std::string> verify_strategy(const RabinGame& g, const GameSolution& sol);

struct ProductNode {
  StateId x = 0;
  StateId s = 0;
  friend bool operator==(const ProductNode&, const ProductNode&) = default;
};

/// Reachable part of the product of a transition system and a DRA. Node
/// (x, s) holds the automaton state before O(x) is read; (x, s) --u--> (x', s')
/// with x' ∈ β(x, u) and s' = α(s, O(x)). Plays start at (x, s0).
class ProductAutomaton {
 public:
  const RabinGame& game() const { return game_; }
  const std::vector<ProductNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  std::optional<StateId> find(StateId x, StateId s) const;
  /// Node id of (x, s0) for every system state x.
  const std::vector<StateId>& initial() const { return initial_; }
  std::size_t num_dra_states() const { return num_dra_states_; }

  friend ProductAutomaton build_product(const systems::TransitionSystem& t, const logic::Dra& r);

 private:
  RabinGame game_{systems::TransitionSystem(0, 0, {}), {}};
  std::vector<ProductNode> nodes_;
  std::unordered_map<std::uint64_t, StateId> index_;
  std::vector<StateId> initial_;
  std::size_t num_dra_states_ = 0;
};

/// Throws AlphabetMismatch if t uses a proposition r does not know.
ProductAutomaton build_product(const systems::TransitionSystem& t, const logic::Dra& r);
ProductAutomaton build_product(const adaptive::Ats& ats, const logic::Dra& r);

/// System states x whose play (x, s0) is winning.
std::vector<StateId> winning_initial(const ProductAutomaton& product, const GameSolution& sol);

/// PTS states x0 with ((x0, Θ), s0) winning in the product over `ats`.
std::vector<StateId> project_initial(const ProductAutomaton& product, const GameSolution& sol,
                                     const adaptive::Ats& ats);

/// Strategy input at (x, s); throws NotWinning outside the winning region.
InputId execute_strategy(const ProductAutomaton& product, const GameSolution& sol, StateId x, StateId s);

/// Memoryless adaptive strategy (x, ϑ, s) -> u, keyed by PTS state, estimator
/// set and automaton state; defined exactly on the winning region.
class AdaptiveController {
 public:
  struct Entry {
    StateId x;
    ParamSet params;
    StateId s;
    InputId u;
  };

  AdaptiveController() = default;
  explicit AdaptiveController(std::vector<Entry> entries);

  static AdaptiveController from_solution(const ProductAutomaton& product, const GameSolution& sol,
                                          const adaptive::Ats& ats);

  std::optional<InputId> lookup(StateId x, ParamSet v, StateId s) const;
  bool is_winning(StateId x, ParamSet v, StateId s) const { return lookup(x, v, s).has_value(); }
  /// Throws NotWinning when (x, v, s) is outside the winning region.
  InputId act(StateId x, ParamSet v, StateId s) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  static std::uint64_t key_hash(StateId x, ParamSet v, StateId s);
  std::vector<Entry> entries_;
  std::unordered_multimap<std::uint64_t, std::size_t> index_;
};

// Strategy file: [ { "x": name, "theta_set": [names], "dra_state": k, "input": name } ]
void write_controller_json(std::ostream& out, const AdaptiveController& c, const systems::Pts& p);
AdaptiveController read_controller_json(std::istream& in, const systems::Pts& p);

/// Strategy-induced subgraph restricted to the winning region.
void write_strategy_dot(std::ostream& out, const ProductAutomaton& product, const GameSolution& sol,
                        const std::vector<std::string>& state_names,
                        const std::vector<std::string>& input_names);

/// ATS construction, product, game solution and projection in one call.
struct AdaptiveSynthesis {
  adaptive::Ats ats;
  ProductAutomaton product;
  GameSolution solution;
  AdaptiveController controller;
  std::vector<StateId> x0_max;
  double ats_seconds = 0;
  double solve_seconds = 0;
};
AdaptiveSynthesis synthesize_adaptive(const systems::Pts& p, const logic::Dra& r);

}  // namespace adsyn::synthesis
