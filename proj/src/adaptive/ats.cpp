#include <algorithm>
#include <deque>
#include <ostream>

#include <json.hpp>

#include "adsyn/adaptive.hpp"
#include "adsyn/estimation.hpp"

namespace adsyn::adaptive {

Ats::Ats(systems::TransitionSystem system, std::vector<AtsNode> nodes, std::size_t num_params,
         std::vector<std::string> param_names)
    : system_(std::move(system)),
      nodes_(std::move(nodes)),
      num_params_(num_params),
      param_names_(std::move(param_names)) {
  index_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], static_cast<StateId>(i));
}

std::optional<StateId> Ats::find(const AtsNode& n) const {
  auto it = index_.find(n);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string node_label(const AtsNode& n, const std::vector<std::string>& state_names,
                       const std::vector<std::string>& param_names) {
  std::vector<std::string> params;
  for (ParamId th : n.params.ids()) params.push_back(param_names[th]);
  return state_names[n.x] + "," + join_braced(params);
}

std::vector<AtsNode> ats_successors(const systems::Pts& p, const AtsNode& node, InputId u) {
  std::vector<StateId> reachable;
  for (ParamId th : node.params.ids()) {
    auto succ = p.successors(node.x, u, th);
    reachable.insert(reachable.end(), succ.begin(), succ.end());
  }
  std::sort(reachable.begin(), reachable.end());
  reachable.erase(std::unique(reachable.begin(), reachable.end()), reachable.end());

  std::vector<AtsNode> out;
  out.reserve(reachable.size());
  for (StateId next : reachable) {
    out.push_back({next, estimation::consistent_params(p, node.params, node.x, u, next)});
  }
  return out;
}

Ats build_ats(const systems::Pts& p) {
  if (!p.is_nonblocking()) throw Error(ErrorKind::InvalidModel, "build_ats needs a non-blocking PTS");

  std::vector<AtsNode> nodes;
  std::unordered_map<AtsNode, StateId, AtsNodeHash> index;
  std::deque<StateId> frontier;
  auto intern = [&](const AtsNode& n) {
    auto [it, inserted] = index.emplace(n, static_cast<StateId>(nodes.size()));
    if (inserted) {
      nodes.push_back(n);
      frontier.push_back(it->second);
    }
    return it->second;
  };

  const ParamSet all = p.all_params();
  for (StateId x = 0; x < p.num_states(); ++x) intern({x, all});
  for (StateId x = 0; x < p.num_states(); ++x) {
    for (ParamId th = 0; th < p.num_params(); ++th) intern({x, ParamSet::single(th)});
  }

  // edges[node * |U| + u] = successor node ids
  std::vector<std::vector<StateId>> edges;
  while (!frontier.empty()) {
    const StateId id = frontier.front();
    frontier.pop_front();
    const AtsNode node = nodes[id];
    edges.resize(nodes.size() * p.num_inputs());
    for (InputId u = 0; u < p.num_inputs(); ++u) {
      std::vector<StateId> succ;
      for (const AtsNode& next : ats_successors(p, node, u)) succ.push_back(intern(next));
      edges[static_cast<std::size_t>(id) * p.num_inputs() + u] = std::move(succ);
    }
  }

  systems::TransitionSystem ts(nodes.size(), p.num_inputs(), p.props());
  for (StateId i = 0; i < nodes.size(); ++i) {
    ts.set_label(i, p.label(nodes[i].x));
    for (InputId u = 0; u < p.num_inputs(); ++u) {
      for (StateId next : edges[static_cast<std::size_t>(i) * p.num_inputs() + u]) ts.add_transition(i, u, next);
    }
  }
  ts.set_input_names(p.input_names());
  std::vector<std::string> names;
  names.reserve(nodes.size());
  for (const AtsNode& n : nodes) names.push_back(node_label(n, p.state_names(), p.param_names()));
  ts.set_state_names(std::move(names));
  if (p.sink()) ts.set_sink(index.at({*p.sink(), all}));
  return Ats(std::move(ts), std::move(nodes), p.num_params(), p.param_names());
}

void write_ats_dot(std::ostream& out, const Ats& ats) { systems::write_ts_dot(out, ats.system()); }

void write_ats_json(std::ostream& out, const Ats& ats) {
  using nlohmann::json;
  const auto& ts = ats.system();
  json doc;
  json states = json::array();
  for (StateId i = 0; i < ats.size(); ++i) {
    const AtsNode& n = ats.nodes()[i];
    std::vector<std::string> params;
    for (ParamId th : n.params.ids()) params.push_back(ats.param_names()[th]);
    states.push_back({{"id", i}, {"name", ts.state_names()[i]}, {"x", n.x}, {"theta_set", params}});
  }
  doc["states"] = std::move(states);
  doc["inputs"] = ts.input_names();
  doc["params"] = ats.param_names();
  doc["props"] = ts.props();
  json labels = json::object();
  for (StateId i = 0; i < ats.size(); ++i) {
    labels[ts.state_names()[i]] = systems::names_from_letter(ts.label(i), ts.props());
  }
  doc["labels"] = std::move(labels);
  json transitions = json::array();
  for (StateId i = 0; i < ats.size(); ++i) {
    for (InputId u = 0; u < ts.num_inputs(); ++u) {
      auto succ = ts.successors(i, u);
      transitions.push_back({{"x", i},
                             {"u", ts.input_names()[u]},
                             {"successors", std::vector<StateId>(succ.begin(), succ.end())}});
    }
  }
  doc["transitions"] = std::move(transitions);
  out << doc.dump(1) << "\n";
}

}  // namespace adsyn::adaptive
