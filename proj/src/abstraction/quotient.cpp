#include <istream>
#include <ostream>

#include <json.hpp>

#include "adsyn/abstraction.hpp"

namespace adsyn::abstraction {

using nlohmann::json;

namespace {

Rational number(const json& j) {
  if (j.is_string()) return parse_decimal(j.get<std::string>());
  if (j.is_number()) return parse_decimal(j.dump());
  throw Error(ErrorKind::Parse, "expected a number, got " + j.dump());
}

Interval interval(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Parse, "expected [lo, hi], got " + j.dump());
  return Interval(number(j[0]), number(j[1]));
}

json to_json(const Interval& i) { return json::array({to_decimal_string(i.lo), to_decimal_string(i.hi)}); }

// Truth of a predicate on the interior of a cell; nullopt if the threshold
// splits the interior.
std::optional<bool> label_on(const Predicate& p, const Interval& cell) {
  if (p.op == Predicate::Op::Le) {
    if (cell.hi <= p.threshold) return true;
    if (cell.lo >= p.threshold) return false;
  } else {
    if (cell.lo >= p.threshold) return true;
    if (cell.hi <= p.threshold) return false;
  }
  return std::nullopt;
}

}  // namespace

void AbstractionConfig::validate() const {
  system.validate();
  if (x_cells == 0) throw Error(ErrorKind::InvalidModel, "state partition needs at least one cell");
  if (theta_cells.size() != system.theta_domain.size()) {
    throw Error(ErrorKind::InvalidModel, "one parameter cell count per parameter dimension");
  }
  std::size_t total = 1;
  for (std::size_t n : theta_cells) {
    if (n == 0) throw Error(ErrorKind::InvalidModel, "parameter partition needs at least one cell per dimension");
    total *= n;
  }
  if (total > kMaxParams) {
    throw Error(ErrorKind::InvalidModel, "at most " + std::to_string(kMaxParams) + " parameter cells");
  }
  if (inputs.empty()) throw Error(ErrorKind::InvalidModel, "no inputs");
  for (const auto& u : inputs) {
    if (!system.input_domain.contains(u)) {
      throw Error(ErrorKind::InvalidModel, "input " + to_decimal_string(u) + " outside the input domain");
    }
  }
  for (const auto& name : sink_labels) {
    bool known = false;
    for (const auto& p : predicates) known = known || p.name == name;
    if (!known) throw Error(ErrorKind::InvalidModel, "unknown sink label '" + name + "'");
  }
}

AbstractionConfig read_abstraction_config(std::istream& in) {
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  try {
    AbstractionConfig cfg;
    cfg.system.x_domain = interval(doc.at("x_domain"));
    cfg.system.theta_domain.clear();
    for (const auto& t : doc.at("theta_domain")) cfg.system.theta_domain.push_back(interval(t));
    cfg.system.disturbance = interval(doc.at("disturbance"));
    cfg.system.input_domain = interval(doc.at("input_domain"));
    const auto& part = doc.at("partition");
    cfg.x_cells = part.at("x").get<std::size_t>();
    cfg.theta_cells = part.at("theta").get<std::vector<std::size_t>>();
    const auto& inputs = doc.at("inputs");
    if (inputs.is_object()) {
      cfg.inputs = quantize(cfg.system.input_domain, inputs.at("count").get<std::size_t>());
    } else {
      for (const auto& u : inputs) cfg.inputs.push_back(number(u));
    }
    for (const auto& p : doc.value("predicates", json::array())) {
      Predicate pred;
      pred.name = p.at("name").get<std::string>();
      const auto op = p.at("op").get<std::string>();
      if (op == "<=") {
        pred.op = Predicate::Op::Le;
      } else if (op == ">=") {
        pred.op = Predicate::Op::Ge;
      } else {
        throw Error(ErrorKind::Parse, "predicate op must be <= or >=, got '" + op + "'");
      }
      pred.threshold = number(p.at("threshold"));
      cfg.predicates.push_back(std::move(pred));
    }
    cfg.sink_labels = doc.value("sink_labels", std::vector<std::string>{});
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

void write_abstraction_config(std::ostream& out, const AbstractionConfig& cfg) {
  json doc;
  doc["x_domain"] = to_json(cfg.system.x_domain);
  json theta = json::array();
  for (const auto& t : cfg.system.theta_domain) theta.push_back(to_json(t));
  doc["theta_domain"] = std::move(theta);
  doc["disturbance"] = to_json(cfg.system.disturbance);
  doc["input_domain"] = to_json(cfg.system.input_domain);
  doc["partition"] = {{"x", cfg.x_cells}, {"theta", cfg.theta_cells}};
  json inputs = json::array();
  for (const auto& u : cfg.inputs) inputs.push_back(to_decimal_string(u));
  doc["inputs"] = std::move(inputs);
  json preds = json::array();
  for (const auto& p : cfg.predicates) {
    preds.push_back({{"name", p.name},
                     {"op", p.op == Predicate::Op::Le ? "<=" : ">="},
                     {"threshold", to_decimal_string(p.threshold)}});
  }
  doc["predicates"] = std::move(preds);
  doc["sink_labels"] = cfg.sink_labels;
  out << doc.dump(1) << "\n";
}

std::optional<StateId> ScalarAbstraction::cell_of(const Rational& x) const {
  for (StateId c = 0; c < x_cells.size(); ++c) {
    if (x_cells[c].contains(x)) return c;
  }
  return std::nullopt;
}

std::optional<ParamId> ScalarAbstraction::theta_cell_of(const std::vector<Rational>& theta) const {
  for (ParamId c = 0; c < theta_cells.size(); ++c) {
    if (box_contains(theta_cells[c], theta)) return c;
  }
  return std::nullopt;
}

std::optional<InputId> ScalarAbstraction::input_index(const Rational& u) const {
  for (InputId i = 0; i < inputs.size(); ++i) {
    if (inputs[i] == u) return i;
  }
  return std::nullopt;
}

ScalarAbstraction build_quotient_pts(const AbstractionConfig& cfg) {
  cfg.validate();
  const auto& sys = cfg.system;
  auto x_cells = grid_partition(sys.x_domain, cfg.x_cells);
  auto theta_cells = grid_partition(sys.theta_domain, cfg.theta_cells);

  std::vector<std::string> props;
  for (const auto& p : cfg.predicates) props.push_back(p.name);
  const auto sink = static_cast<StateId>(x_cells.size());

  systems::Pts pts(x_cells.size() + 1, cfg.inputs.size(), theta_cells.size(), props);
  std::vector<std::string> state_names;
  for (StateId c = 0; c < x_cells.size(); ++c) {
    Letter label = 0;
    for (std::size_t i = 0; i < cfg.predicates.size(); ++i) {
      auto holds = label_on(cfg.predicates[i], x_cells[c]);
      if (!holds) {
        throw Error(ErrorKind::NotObservationPreserving,
                    "cell " + to_string(x_cells[c]) + " straddles predicate " + cfg.predicates[i].name);
      }
      if (*holds) label |= Letter{1} << i;
    }
    pts.set_label(c, label);
    state_names.push_back("x" + to_string(x_cells[c]));
  }
  state_names.push_back("sink");
  pts.set_label(sink, systems::letter_from_names(cfg.sink_labels, props));
  pts.set_sink(sink);

  for (StateId c = 0; c < x_cells.size(); ++c) {
    for (InputId u = 0; u < cfg.inputs.size(); ++u) {
      for (ParamId th = 0; th < theta_cells.size(); ++th) {
        const Interval post = post_box(sys, x_cells[c], theta_cells[th], cfg.inputs[u]);
        for (StateId next = 0; next < x_cells.size(); ++next) {
          if (post.intersects(x_cells[next])) pts.add_transition(c, u, th, next);
        }
        if (!sys.x_domain.contains(post)) pts.add_transition(c, u, th, sink);
      }
    }
  }
  for (InputId u = 0; u < cfg.inputs.size(); ++u) {
    for (ParamId th = 0; th < theta_cells.size(); ++th) pts.add_transition(sink, u, th, sink);
  }

  pts.set_state_names(std::move(state_names));
  std::vector<std::string> input_names;
  for (const auto& u : cfg.inputs) input_names.push_back(to_decimal_string(u));
  pts.set_input_names(std::move(input_names));
  std::vector<std::string> param_names;
  for (const auto& b : theta_cells) param_names.push_back("theta" + to_string(b));
  pts.set_param_names(std::move(param_names));

  return ScalarAbstraction{std::move(pts), std::move(x_cells), std::move(theta_cells), cfg.inputs, sink};
}

}  // namespace adsyn::abstraction
