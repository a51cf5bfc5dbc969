#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "adsyn/systems.hpp"

namespace adsyn::systems {

using nlohmann::json;

namespace {

std::map<std::string, std::uint32_t> index_names(const std::vector<std::string>& names, const char* what) {
  std::map<std::string, std::uint32_t> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!out.emplace(names[i], static_cast<std::uint32_t>(i)).second) {
      throw Error(ErrorKind::InvalidModel, std::string("duplicate ") + what + " '" + names[i] + "'");
    }
  }
  return out;
}

std::uint32_t lookup(const std::map<std::string, std::uint32_t>& index, const std::string& name,
                     const char* what) {
  auto it = index.find(name);
  if (it == index.end()) {
    throw Error(ErrorKind::DanglingState, std::string("unknown ") + what + " '" + name + "'");
  }
  return it->second;
}

}  // namespace

Pts read_pts_json(std::istream& in, const PtsReadOptions& options) {
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  try {
    auto states = doc.at("states").get<std::vector<std::string>>();
    auto inputs = doc.at("inputs").get<std::vector<std::string>>();
    auto params = doc.at("params").get<std::vector<std::string>>();
    auto props = doc.value("props", std::vector<std::string>{});
    if (states.empty()) throw Error(ErrorKind::InvalidModel, "no states");
    if (inputs.empty()) throw Error(ErrorKind::InvalidModel, "no inputs");

    const auto state_ix = index_names(states, "state");
    const auto input_ix = index_names(inputs, "input");
    const auto param_ix = index_names(params, "parameter");
    index_names(props, "proposition");

    Pts p(states.size(), inputs.size(), params.size(), props);
    p.set_state_names(states);
    p.set_input_names(inputs);
    p.set_param_names(params);
    if (doc.contains("labels")) {
      for (const auto& [state, names] : doc.at("labels").items()) {
        p.set_label(lookup(state_ix, state, "state"),
                    letter_from_names(names.get<std::vector<std::string>>(), props));
      }
    }
    if (doc.contains("sink") && !doc.at("sink").is_null()) {
      p.set_sink(lookup(state_ix, doc.at("sink").get<std::string>(), "state"));
    }
    for (const auto& rec : doc.at("transitions")) {
      const StateId x = lookup(state_ix, rec.at("x").get<std::string>(), "state");
      const InputId u = lookup(input_ix, rec.at("u").get<std::string>(), "input");
      const ParamId th = lookup(param_ix, rec.at("theta").get<std::string>(), "parameter");
      for (const auto& next : rec.at("successors")) {
        p.add_transition(x, u, th, lookup(state_ix, next.get<std::string>(), "state"));
      }
    }
    if (options.complete) {
      Letter sink_labels = letter_from_names(doc.value("sink_labels", std::vector<std::string>{}), props);
      return make_nonblocking(p, sink_labels);
    }
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

void write_pts_json(std::ostream& out, const Pts& p) {
  json doc;
  doc["states"] = p.state_names();
  doc["inputs"] = p.input_names();
  doc["params"] = p.param_names();
  doc["props"] = p.props();
  json labels = json::object();
  for (StateId x = 0; x < p.num_states(); ++x) {
    labels[p.state_names()[x]] = names_from_letter(p.label(x), p.props());
  }
  doc["labels"] = std::move(labels);
  if (p.sink()) {
    doc["sink"] = p.state_names()[*p.sink()];
    doc["sink_labels"] = names_from_letter(p.label(*p.sink()), p.props());
  }
  json transitions = json::array();
  for (StateId x = 0; x < p.num_states(); ++x) {
    for (InputId u = 0; u < p.num_inputs(); ++u) {
      for (ParamId th = 0; th < p.num_params(); ++th) {
        auto succ = p.successors(x, u, th);
        if (succ.empty()) continue;
        json names = json::array();
        for (StateId n : succ) names.push_back(p.state_names()[n]);
        transitions.push_back({{"x", p.state_names()[x]},
                               {"u", p.input_names()[u]},
                               {"theta", p.param_names()[th]},
                               {"successors", std::move(names)}});
      }
    }
  }
  doc["transitions"] = std::move(transitions);
  out << doc.dump(1) << "\n";
}

}  // namespace adsyn::systems
