#include <deque>

#include "adsyn/synthesis.hpp"

namespace adsyn::synthesis {

namespace {

std::uint64_t pack(StateId x, StateId s) { return (static_cast<std::uint64_t>(x) << 32) | s; }

}  // namespace

std::optional<StateId> ProductAutomaton::find(StateId x, StateId s) const {
  auto it = index_.find(pack(x, s));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ProductAutomaton build_product(const systems::TransitionSystem& t, const logic::Dra& r) {
  const systems::LabelMap relabel(t.props(), r.props());
  std::vector<Letter> letter(t.num_states());
  for (StateId x = 0; x < t.num_states(); ++x) letter[x] = relabel(t.label(x));

  ProductAutomaton p;
  p.num_dra_states_ = r.num_states();
  std::deque<StateId> frontier;
  auto intern = [&](StateId x, StateId s) {
    auto [it, inserted] = p.index_.emplace(pack(x, s), static_cast<StateId>(p.nodes_.size()));
    if (inserted) {
      p.nodes_.push_back({x, s});
      frontier.push_back(it->second);
    }
    return it->second;
  };
  for (StateId x = 0; x < t.num_states(); ++x) p.initial_.push_back(intern(x, r.initial()));

  std::vector<std::vector<StateId>> edges;
  while (!frontier.empty()) {
    const StateId id = frontier.front();
    frontier.pop_front();
    const auto [x, s] = p.nodes_[id];
    const StateId next_s = r.next(s, letter[x]);
    std::vector<std::vector<StateId>> out(t.num_inputs());
    for (InputId u = 0; u < t.num_inputs(); ++u) {
      for (StateId next_x : t.successors(x, u)) out[u].push_back(intern(next_x, next_s));
    }
    edges.resize(p.nodes_.size() * t.num_inputs());
    for (InputId u = 0; u < t.num_inputs(); ++u) {
      edges[static_cast<std::size_t>(id) * t.num_inputs() + u] = std::move(out[u]);
    }
  }

  const std::size_t n = p.nodes_.size();
  systems::TransitionSystem graph(n, t.num_inputs(), {});
  for (StateId id = 0; id < n; ++id) {
    for (InputId u = 0; u < t.num_inputs(); ++u) {
      for (StateId next : edges[static_cast<std::size_t>(id) * t.num_inputs() + u]) graph.add_transition(id, u, next);
    }
  }
  std::vector<GamePair> pairs(r.pairs().size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pairs[i].fin.assign(n, 0);
    pairs[i].inf.assign(n, 0);
    for (StateId id = 0; id < n; ++id) {
      pairs[i].fin[id] = r.in_fin(i, p.nodes_[id].s);
      pairs[i].inf[id] = r.in_inf(i, p.nodes_[id].s);
    }
  }
  p.game_ = RabinGame{std::move(graph), std::move(pairs)};
  return p;
}

ProductAutomaton build_product(const adaptive::Ats& ats, const logic::Dra& r) {
  return build_product(ats.system(), r);
}

}  // namespace adsyn::synthesis
