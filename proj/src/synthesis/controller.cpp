#include <algorithm>
#include <chrono>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "adsyn/synthesis.hpp"

namespace adsyn::synthesis {

using nlohmann::json;

AdaptiveController::AdaptiveController(std::vector<Entry> entries) : entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (lookup(e.x, e.params, e.s)) {
      throw Error(ErrorKind::InvalidModel, "duplicate strategy entry for state " + std::to_string(e.x));
    }
    index_.emplace(key_hash(e.x, e.params, e.s), i);
  }
}

std::uint64_t AdaptiveController::key_hash(StateId x, ParamSet v, StateId s) {
  std::uint64_t h = v.bits() * 0x9E3779B97F4A7C15ULL;
  h ^= (static_cast<std::uint64_t>(x) << 20) ^ s;
  return h * 0xBF58476D1CE4E5B9ULL;
}

std::optional<InputId> AdaptiveController::lookup(StateId x, ParamSet v, StateId s) const {
  auto [lo, hi] = index_.equal_range(key_hash(x, v, s));
  for (auto it = lo; it != hi; ++it) {
    const auto& e = entries_[it->second];
    if (e.x == x && e.params == v && e.s == s) return e.u;
  }
  return std::nullopt;
}

InputId AdaptiveController::act(StateId x, ParamSet v, StateId s) const {
  auto u = lookup(x, v, s);
  if (!u) {
    throw Error(ErrorKind::NotWinning, "state " + std::to_string(x) + " with estimate " +
                                           std::to_string(v.size()) + " parameter(s) and automaton state " +
                                           std::to_string(s) + " is outside the winning region");
  }
  return *u;
}

AdaptiveController AdaptiveController::from_solution(const ProductAutomaton& product, const GameSolution& sol,
                                                     const adaptive::Ats& ats) {
  std::vector<Entry> entries;
  for (StateId id = 0; id < product.size(); ++id) {
    if (!sol.winning[id]) continue;
    const auto& pn = product.nodes()[id];
    const auto& an = ats.nodes()[pn.x];
    entries.push_back({an.x, an.params, pn.s, sol.strategy[id]});
  }
  return AdaptiveController(std::move(entries));
}

void write_controller_json(std::ostream& out, const AdaptiveController& c, const systems::Pts& p) {
  json doc = json::array();
  for (const auto& e : c.entries()) {
    std::vector<std::string> params;
    for (ParamId th : e.params.ids()) params.push_back(p.param_names()[th]);
    doc.push_back({{"x", p.state_names()[e.x]},
                   {"theta_set", params},
                   {"dra_state", e.s},
                   {"input", p.input_names()[e.u]}});
  }
  out << doc.dump(1) << "\n";
}

AdaptiveController read_controller_json(std::istream& in, const systems::Pts& p) {
  auto index = [](const std::vector<std::string>& names, const char* what) {
    std::map<std::string, std::uint32_t> out;
    for (std::size_t i = 0; i < names.size(); ++i) out.emplace(names[i], static_cast<std::uint32_t>(i));
    return [out = std::move(out), what](const std::string& name) {
      auto it = out.find(name);
      if (it == out.end()) throw Error(ErrorKind::DanglingState, std::string("unknown ") + what + " '" + name + "'");
      return it->second;
    };
  };
  const auto state = index(p.state_names(), "state");
  const auto input = index(p.input_names(), "input");
  const auto param = index(p.param_names(), "parameter");
  try {
    json doc;
    in >> doc;
    std::vector<AdaptiveController::Entry> entries;
    for (const auto& rec : doc) {
      ParamSet v;
      for (const auto& name : rec.at("theta_set")) v.insert(param(name.get<std::string>()));
      if (v.empty()) throw Error(ErrorKind::Parse, "empty theta_set in strategy record");
      entries.push_back({state(rec.at("x").get<std::string>()), v, rec.at("dra_state").get<StateId>(),
                         input(rec.at("input").get<std::string>())});
    }
    return AdaptiveController(std::move(entries));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

void write_strategy_dot(std::ostream& out, const ProductAutomaton& product, const GameSolution& sol,
                        const std::vector<std::string>& state_names,
                        const std::vector<std::string>& input_names) {
  out << "digraph strategy {\n";
  for (StateId id = 0; id < product.size(); ++id) {
    if (!sol.winning[id]) continue;
    const auto& n = product.nodes()[id];
    out << "  n" << id << " [label=\"" << state_names[n.x] << ",s" << n.s << "\"];\n";
  }
  for (StateId id = 0; id < product.size(); ++id) {
    if (!sol.winning[id]) continue;
    const InputId u = sol.strategy[id];
    for (StateId next : product.game().graph.successors(id, u)) {
      out << "  n" << id << " -> n" << next << " [label=\"" << input_names[u] << "\"];\n";
    }
  }
  out << "}\n";
}

AdaptiveSynthesis synthesize_adaptive(const systems::Pts& p, const logic::Dra& r) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  adaptive::Ats ats = adaptive::build_ats(p);
  const auto t1 = clock::now();
  ProductAutomaton product = build_product(ats, r);
  GameSolution solution = solve_rabin(product.game());
  const auto t2 = clock::now();
  AdaptiveController controller = AdaptiveController::from_solution(product, solution, ats);
  std::vector<StateId> x0 = project_initial(product, solution, ats);
  AdaptiveSynthesis out{std::move(ats), std::move(product), std::move(solution), std::move(controller),
                        std::move(x0)};
  out.ats_seconds = std::chrono::duration<double>(t1 - t0).count();
  out.solve_seconds = std::chrono::duration<double>(t2 - t1).count();
  return out;
}

}  // namespace adsyn::synthesis
