#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "adsyn/estimation.hpp"
#include "adsyn/simulation.hpp"

namespace adsyn::simulation {

using abstraction::Rational;

FinitePlant::FinitePlant(const systems::Pts& p, ParamId theta_star, StateId x0)
    : p_(p), theta_(theta_star), x_(x0) {
  if (theta_star >= p.num_params()) throw Error(ErrorKind::InvalidArgument, "unknown parameter");
  if (x0 >= p.num_states()) throw Error(ErrorKind::InvalidArgument, "unknown initial state");
}

Outcome FinitePlant::sample(InputId u, std::mt19937_64& rng) const {
  auto succ = p_.successors(x_, u, theta_);
  std::uniform_int_distribution<std::size_t> pick(0, succ.size() - 1);
  const std::size_t i = pick(rng);
  Outcome o;
  o.cell = o.next_state = succ[i];
  o.disturbance = std::to_string(i);
  return o;
}

std::vector<Outcome> FinitePlant::extremes(InputId u) const {
  std::vector<Outcome> out;
  auto succ = p_.successors(x_, u, theta_);
  for (std::size_t i = 0; i < succ.size(); ++i) {
    Outcome o;
    o.cell = o.next_state = succ[i];
    o.disturbance = std::to_string(i);
    out.push_back(std::move(o));
  }
  return out;
}

ScalarPlant::ScalarPlant(const abstraction::ScalarAbstraction& abs, const abstraction::ScalarParametricAffine& sys,
                         std::vector<Rational> theta_star, Rational x0)
    : abs_(abs), sys_(sys), theta_(std::move(theta_star)), x_(std::move(x0)) {
  auto cell = abs.theta_cell_of(theta_);
  if (!cell) throw Error(ErrorKind::InvalidArgument, "ground-truth parameter outside the parameter domain");
  theta_cell_ = *cell;
  if (!abs.cell_of(x_)) throw Error(ErrorKind::InvalidArgument, "initial state outside the state domain");
}

std::string ScalarPlant::state_text() const {
  std::ostringstream out;
  out << std::setprecision(12) << x_.convert_to<double>();
  return out.str();
}

StateId ScalarPlant::cell() const {
  auto c = abs_.cell_of(x_);
  return c ? *c : abs_.sink;
}

Outcome ScalarPlant::outcome(InputId u, const Rational& d) const {
  Outcome o;
  o.next_x = sys_.step(x_, theta_, abs_.inputs[u], d);
  auto c = abs_.cell_of(o.next_x);
  o.cell = c ? *c : abs_.sink;
  o.disturbance = abstraction::to_decimal_string(d);
  const Rational to_lo = o.next_x - sys_.x_domain.lo;
  const Rational to_hi = sys_.x_domain.hi - o.next_x;
  o.margin = std::min(to_lo, to_hi).convert_to<double>();
  return o;
}

Outcome ScalarPlant::sample(InputId u, std::mt19937_64& rng) const {
  constexpr std::int64_t kSteps = 2'000'000;
  std::uniform_int_distribution<std::int64_t> pick(0, kSteps);
  const Rational d = sys_.disturbance.lo + sys_.disturbance.width() * Rational(pick(rng)) / Rational(kSteps);
  return outcome(u, d);
}

std::vector<Outcome> ScalarPlant::extremes(InputId u) const {
  const auto& dist = sys_.disturbance;
  return {outcome(u, dist.lo), outcome(u, (dist.lo + dist.hi) / 2), outcome(u, dist.hi)};
}

Trace simulate(Plant& plant, const synthesis::AdaptiveController& controller, const logic::Dra& dra,
               const SimulationConfig& cfg) {
  const systems::Pts& model = plant.model();
  const systems::LabelMap relabel(model.props(), dra.props());
  std::mt19937_64 rng(cfg.seed);

  Trace trace;
  trace.props = model.props();
  trace.param_names = model.param_names();
  trace.input_names = model.input_names();

  ParamSet v = model.all_params();
  StateId s = dra.initial();
  auto require_winning = [&](std::size_t k, StateId cell) {
    if (!controller.is_winning(cell, v, s)) {
      throw Error(ErrorKind::WinningRegionExit, "step " + std::to_string(k) + ": " + model.state_names()[cell] +
                                                    " with automaton state " + std::to_string(s) +
                                                    " is outside the winning region");
    }
  };

  for (std::size_t k = 0; k < cfg.horizon; ++k) {
    const StateId cell = plant.cell();
    require_winning(k, cell);
    const InputId u = controller.act(cell, v, s);
    const StateId next_s = dra.next(s, relabel(model.label(cell)));

    Outcome o;
    if (cfg.mode == DisturbanceMode::Uniform) {
      o = plant.sample(u, rng);
    } else {
      // Prefer outcomes that leave the winning region, then the one closest
      // to the domain boundary.
      auto options = plant.extremes(u);
      auto score = [&](const Outcome& c) {
        const ParamSet next_v = estimation::consistent_params(model, v, cell, u, c.cell);
        const bool winning = !next_v.empty() && controller.is_winning(c.cell, next_v, next_s);
        return std::make_pair(winning, c.margin);
      };
      o = *std::min_element(options.begin(), options.end(),
                            [&](const Outcome& a, const Outcome& b) { return score(a) < score(b); });
    }

    trace.steps.push_back({k, plant.state_text(), cell, v, s, u, o.disturbance, model.label(cell)});
    v = estimation::estimate_step(model, v, cell, u, o.cell);
    s = next_s;
    plant.commit(o);
  }
  const StateId cell = plant.cell();
  trace.steps.push_back({cfg.horizon, plant.state_text(), cell, v, s, std::nullopt, "", model.label(cell)});
  require_winning(cfg.horizon, cell);
  return trace;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "k,x,cell,theta_set,dra_state,u,d,labels\n";
  auto quote = [](const std::string& s) { return "\"" + s + "\""; };
  for (const auto& st : trace.steps) {
    std::vector<std::string> params;
    for (ParamId th : st.theta_set.ids()) params.push_back(std::to_string(th));
    out << st.k << ',' << quote(st.x) << ',' << st.cell << ',' << quote(join_braced(params, " ")) << ','
        << st.dra_state << ',' << (st.u ? quote(trace.input_names[*st.u]) : "") << ',' << quote(st.d) << ','
        << quote(join_braced(systems::names_from_letter(st.labels, trace.props), " ")) << '\n';
  }
}

}  // namespace adsyn::simulation
