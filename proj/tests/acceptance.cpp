// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. All limits and tolerances are fixed below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "adsyn/adaptive.hpp"
#include "adsyn/estimation.hpp"
#include "adsyn/frontend.hpp"
#include "adsyn/simulation.hpp"
#include "oracles.hpp"

using namespace adsyn;
namespace ab = adsyn::abstraction;

namespace {

constexpr double kScalarBudgetSeconds = 300;
constexpr std::size_t kCountBandLo = 10'000;
constexpr std::size_t kCountBandHi = 100'000;
constexpr std::size_t kScalarRuns = 1000;
constexpr std::size_t kScalarHorizon = 100;
constexpr double kSimulationBudgetSeconds = 30;
constexpr std::size_t kGridHorizon = 500;
constexpr std::size_t kEstimatorHistory = 4;
constexpr std::size_t kGames = 500;
constexpr std::size_t kGameNodes = 8;
constexpr std::size_t kGameInputs = 2;
constexpr double kGameBudgetSeconds = 60;
constexpr std::size_t kLassoLen = 3;
constexpr std::size_t kConcreteSteps = 1000;
constexpr std::size_t kPostCells = 100;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("[%s] %2d %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", seconds);
  return buf;
}

struct ScalarRun {
  frontend::ScalarCaseStudy cs = frontend::gen_scalar_safety();
  std::optional<ab::ScalarAbstraction> abs_;
  std::optional<logic::Dra> dra_;
  std::optional<synthesis::AdaptiveSynthesis> syn;
  const ab::ScalarAbstraction& abs() const { return *abs_; }
  const logic::Dra& dra() const { return *dra_; }
  double seconds = 0;
};

void scalar_criteria(ScalarRun& run) {
  auto t0 = Clock::now();
  run.abs_.emplace(ab::build_quotient_pts(run.cs.config));
  const auto& props = run.abs().pts.props();
  run.dra_.emplace(logic::compile_to_dra(logic::parse_ltl(run.cs.spec, props), props));
  run.syn.emplace(synthesis::synthesize_adaptive(run.abs().pts, run.dra()));
  run.seconds = since(t0);
  const auto& syn = *run.syn;

  std::vector<StateId> cells;
  for (StateId x : syn.x0_max)
    if (x != run.abs().sink) cells.push_back(x);
  const std::string region = frontend::describe_cells(cells, run.abs().x_cells);
  const bool verified = !synthesis::verify_strategy(syn.product.game(), syn.solution).has_value();
  report(1, cells == std::vector<StateId>{2, 3, 4, 5, 6, 7} && verified && run.seconds <= kScalarBudgetSeconds,
         "scalar winning region " + region + " (want [-0.6,0.6]), strategy " + (verified ? "verified" : "REJECTED") +
             ", " + fmt(run.seconds) + " (limit " + fmt(kScalarBudgetSeconds) + ")");

  std::size_t on_cells = 0;
  for (const auto& n : syn.ats.nodes()) on_cells += n.x != run.abs().sink;
  const std::size_t winning = syn.solution.num_winning();
  auto in_band = [](std::size_t v) { return v >= kCountBandLo && v < kCountBandHi; };
  report(2, in_band(on_cells) && in_band(winning),
         "ATS nodes " + std::to_string(on_cells) + " on state cells (" + std::to_string(syn.ats.size()) +
             " with the sink), winning product nodes " + std::to_string(winning) + " (reference 14146 / 14008, band [" +
             std::to_string(kCountBandLo) + "," + std::to_string(kCountBandHi) + "))");

  auto robust = synthesis::build_product(systems::robustify(run.abs().pts), run.dra());
  auto rsol = synthesis::solve_rabin(robust.game());
  auto rwin = synthesis::winning_initial(robust, rsol);
  report(3, rwin.empty(), "robust winning region " + frontend::describe_cells(rwin, run.abs().x_cells) + " (want empty)");
}

void scalar_simulation(const ScalarRun& run) {
  const auto& syn = *run.syn;
  const auto f = logic::parse_ltl(run.cs.spec, run.abs().pts.props());
  std::size_t violations = 0, growth = 0, lost = 0, errors = 0;
  auto t0 = Clock::now();
  for (std::size_t seed = 0; seed < kScalarRuns; ++seed) {
    simulation::ScalarPlant plant(run.abs(), run.cs.config.system, run.cs.theta_star, run.cs.x0);
    try {
      auto trace = simulation::simulate(plant, syn.controller, run.dra(), {.horizon = kScalarHorizon, .seed = seed});
      violations += simulation::check_trace(trace, f).safety_violations.size();
      ParamSet prev = run.abs().pts.all_params();
      for (const auto& st : trace.steps) {
        growth += !st.theta_set.subset_of(prev);
        lost += !st.theta_set.contains(plant.true_param());
        prev = st.theta_set;
      }
    } catch (const Error&) {
      ++errors;
    }
  }
  const double secs = since(t0);
  report(4, violations == 0 && growth == 0 && lost == 0 && errors == 0 && secs <= kSimulationBudgetSeconds,
         std::to_string(kScalarRuns) + " runs x " + std::to_string(kScalarHorizon) + " steps: " +
             std::to_string(violations) + " safety violations, " + std::to_string(growth) + " estimate growths, " +
             std::to_string(lost) + " steps without the true cell, " + std::to_string(errors) + " aborted, " +
             fmt(secs) + " (limit " + fmt(kSimulationBudgetSeconds) + ")");
}

// Safe cells outside the band that cannot reach both A and B without
// entering the band.
std::vector<StateId> band_dependent_cells(const frontend::GridWorldConfig& cfg, const systems::Pts& p) {
  std::set<StateId> band(cfg.band.begin(), cfg.band.end()), bad(cfg.unsafe.begin(), cfg.unsafe.end());
  const ParamId still = 2;
  auto reaches = [&](StateId from, const std::vector<StateId>& targets) {
    std::set<StateId> goal(targets.begin(), targets.end()), seen{from};
    std::vector<StateId> stack{from};
    while (!stack.empty()) {
      StateId x = stack.back();
      stack.pop_back();
      if (goal.count(x)) return true;
      for (InputId u = 0; u < 4; ++u)
        for (StateId n : p.successors(x, u, still)) {
          if (n >= cfg.width * cfg.height || band.count(n) || bad.count(n) || !seen.insert(n).second) continue;
          stack.push_back(n);
        }
    }
    return false;
  };
  std::vector<StateId> out;
  for (StateId x = 0; x < cfg.width * cfg.height; ++x) {
    if (band.count(x) || bad.count(x)) continue;
    if (!reaches(x, cfg.region_a) || !reaches(x, cfg.region_b)) out.push_back(x);
  }
  return out;
}

void grid_criterion() {
  auto cfg = frontend::GridWorldConfig::default_layout();
  auto p = frontend::gen_gridworld(cfg);
  auto f = logic::parse_ltl(frontend::kGridSpec, p.props());
  auto dra = logic::compile_to_dra(f, p.props());
  auto syn = synthesis::synthesize_adaptive(p, dra);
  auto robust = synthesis::build_product(systems::robustify(p), dra);
  auto rwin = synthesis::winning_initial(robust, synthesis::solve_rabin(robust.game()));

  auto dependent = band_dependent_cells(cfg, p);
  std::size_t robust_dependent = 0;
  for (StateId x : dependent) robust_dependent += std::binary_search(rwin.begin(), rwin.end(), x);

  std::size_t unsafe_steps = 0, worst_gap = 0, aborted = 0;
  bool all_visit = true;
  for (ParamId th = 0; th < p.num_params(); ++th) {
    simulation::FinitePlant plant(p, th, cfg.cell(0, 0));
    try {
      auto trace = simulation::simulate(plant, syn.controller, dra, {.horizon = kGridHorizon, .seed = th});
      auto rep = simulation::check_trace(trace, f);
      unsafe_steps += rep.safety_violations.size();
      for (const auto& r : rep.recurrence) {
        worst_gap = std::max(worst_gap, r.max_gap);
        all_visit = all_visit && r.visits > 0;
      }
    } catch (const Error&) {
      ++aborted;
    }
  }
  const bool ok = !syn.x0_max.empty() && !dependent.empty() && robust_dependent == 0 && unsafe_steps == 0 &&
                  aborted == 0 && all_visit && worst_gap < syn.product.size();
  report(5, ok,
         "grid: adaptive winning cells " + std::to_string(syn.x0_max.size()) + ", robust winning " +
             std::to_string(robust_dependent) + " of " + std::to_string(dependent.size()) +
             " band-dependent cells; 5 drifts x " + std::to_string(kGridHorizon) + " steps: " +
             std::to_string(unsafe_steps) + " unsafe steps, max A/B gap " + std::to_string(worst_gap) +
             " (< product size " + std::to_string(syn.product.size()) + ")");
}

void estimator_criterion() {
  auto s = sweep::estimator_sweep(kEstimatorHistory);
  auto p = fixture::fig2_pts();
  const ParamSet both(0b11);
  std::vector<StateId> xs{0, 1, 2};
  std::vector<InputId> us{0, 0};
  const bool figure = estimation::estimate_step(p, both, 0, 0, 1) == both &&
                      estimation::estimate_step(p, both, 1, 0, 1) == ParamSet::single(0) &&
                      estimation::estimate_batch(p, xs, us) == ParamSet::single(1) &&
                      estimation::estimate_step(p, both, 1, 1, 1) == both;
  const bool ok = s.batch_mismatches == 0 && s.fold_mismatches == 0 && s.growth == 0 && s.unsound == 0 &&
                  s.histories == 4665 && figure;
  report(6, ok,
         "estimator: " + std::to_string(s.histories) + " histories x " + std::to_string(s.systems) +
             " PTS cases, mismatches batch/fold " + std::to_string(s.batch_mismatches) + "/" +
             std::to_string(s.fold_mismatches) + ", growth " + std::to_string(s.growth) + ", unsound " +
             std::to_string(s.unsound) + ", example transitions " + (figure ? "match" : "DIFFER"));
}

void ats_criterion() {
  auto p = fixture::fig2_pts();
  auto ats = adaptive::build_ats(p);
  using Edge = std::tuple<std::string, std::string, std::string>;
  std::set<Edge> got;
  for (StateId n = 0; n < ats.size(); ++n)
    for (InputId u = 0; u < 2; ++u)
      for (StateId m : ats.system().successors(n, u)) {
        got.insert({adaptive::node_label(ats.nodes()[n], p.state_names(), p.param_names()), p.input_names()[u],
                    adaptive::node_label(ats.nodes()[m], p.state_names(), p.param_names())});
      }
  const std::string a = "x1,{theta1,theta2}", b = "x2,{theta1,theta2}", c = "x3,{theta1,theta2}";
  const std::string a1 = "x1,{theta1}", b1 = "x2,{theta1}", c1 = "x3,{theta1}";
  const std::string a2 = "x1,{theta2}", b2 = "x2,{theta2}", c2 = "x3,{theta2}";
  const std::set<Edge> want{
      {a, "u1", b},   {a, "u2", c},   {b, "u2", b},   {b, "u1", b1},  {b, "u1", c2},  {c, "u1", c},
      {c, "u2", c2},  {c, "u2", a1},  {a1, "u1", b1}, {a1, "u2", c1}, {b1, "u1", b1}, {b1, "u2", b1},
      {c1, "u1", c1}, {c1, "u2", a1}, {a2, "u1", b2}, {a2, "u2", c2}, {b2, "u1", c2}, {b2, "u2", b2},
      {c2, "u1", c2}, {c2, "u2", c2},
  };
  report(7, ats.size() == 9 && got == want,
         "example ATS: " + std::to_string(ats.size()) + " nodes, " + std::to_string(got.size()) + " edges (want 9, " +
             std::to_string(want.size()) + "), edge sets " + (got == want ? "equal" : "DIFFER"));
}

void game_criterion() {
  std::mt19937_64 rng(20240501);
  std::size_t mismatches = 0, rejected = 0, largest = 0;
  auto t0 = Clock::now();
  for (std::size_t i = 0; i < kGames; ++i) {
    auto g = fixture::random_game(rng, kGameNodes, kGameInputs);
    largest = std::max(largest, g.size());
    auto sol = synthesis::solve_rabin(g);
    mismatches += sol.winning != oracle::rabin_winning(g);
    rejected += synthesis::verify_strategy(g, sol).has_value();
  }
  const double secs = since(t0);
  report(8, mismatches == 0 && rejected == 0 && secs <= kGameBudgetSeconds,
         std::to_string(kGames) + " random games (up to " + std::to_string(largest) + " nodes): " +
             std::to_string(mismatches) + " mismatches with strategy enumeration, " + std::to_string(rejected) +
             " strategies rejected, " + fmt(secs) + " (limit " + fmt(kGameBudgetSeconds) + ")");
}

void logic_criterion() {
  using logic::LtlFormula;
  auto fig1 = fixture::fig1_dra();
  const bool verdicts = logic::accepts(fig1, {{2}, {3}}) && !logic::accepts(fig1, {{}, {1}}) &&
                        !logic::accepts(fig1, {{1}, {0, 2}});

  const std::vector<std::string> props{"a", "b", "c"};
  const std::size_t letters = 8;
  std::vector<std::vector<Letter>> prefixes{{}}, cycles;
  {
    std::vector<std::vector<Letter>> layer{{}};
    for (std::size_t len = 1; len <= kLassoLen; ++len) {
      std::vector<std::vector<Letter>> next;
      for (const auto& w : layer)
        for (Letter a = 0; a < letters; ++a) {
          next.push_back(w);
          next.back().push_back(a);
        }
      prefixes.insert(prefixes.end(), next.begin(), next.end());
      cycles.insert(cycles.end(), next.begin(), next.end());
      layer = std::move(next);
    }
  }

  // Conjunct k: class k / 6 (G, GF, F) over literal k % 6 (a, !a, b, !b, c, !c).
  std::vector<LtlFormula> conjuncts;
  for (int cls = 0; cls < 3; ++cls)
    for (std::size_t lit = 0; lit < 6; ++lit) {
      LtlFormula l = LtlFormula::atom(lit / 2);
      if (lit % 2) l = LtlFormula::negation(l);
      conjuncts.push_back(cls == 0   ? LtlFormula::globally(l)
                          : cls == 1 ? LtlFormula::globally(LtlFormula::finally(l))
                                     : LtlFormula::finally(l));
    }
  // Oracle truth of every conjunct on every lasso; a conjunction holds iff
  // all of its conjuncts do.
  const std::size_t np = prefixes.size(), nc = cycles.size();
  std::vector<std::uint32_t> truth(np * nc, 0);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      for (std::size_t k = 0; k < conjuncts.size(); ++k)
        if (oracle::ltl_holds(conjuncts[k], prefixes[i], cycles[j])) truth[i * nc + j] |= 1U << k;

  std::vector<std::uint32_t> choices{0};
  for (std::size_t i = 0; i < 6; ++i) {
    choices.push_back(1U << i);
    for (std::size_t j = i + 1; j < 6; ++j) choices.push_back((1U << i) | (1U << j));
  }

  std::size_t formulas = 0, mismatches = 0;
  std::uint64_t lassos = 0;
  for (auto g : choices)
    for (auto gf : choices)
      for (auto fin : choices) {
        const std::uint32_t mask = g | gf << 6 | fin << 12;
        if (mask == 0) continue;
        std::optional<LtlFormula> f;
        for (std::size_t k = 0; k < conjuncts.size(); ++k)
          if ((mask >> k) & 1U) f = f ? LtlFormula::conjunction(*f, conjuncts[k]) : conjuncts[k];
        auto dra = logic::compile_to_dra(*f, props);
        logic::AcceptanceChecker check(dra);
        std::vector<char> from(dra.num_states() * nc);
        for (StateId s = 0; s < dra.num_states(); ++s)
          for (std::size_t j = 0; j < nc; ++j) from[s * nc + j] = check.accepts_from(s, cycles[j]);
        for (std::size_t i = 0; i < np; ++i) {
          const char* row = &from[dra.run(dra.initial(), prefixes[i]) * nc];
          const std::uint32_t* t = &truth[i * nc];
          for (std::size_t j = 0; j < nc; ++j) mismatches += row[j] != ((t[j] & mask) == mask);
        }
        ++formulas;
        lassos += np * nc;
      }
  report(9, verdicts && mismatches == 0 && formulas == 10647,
         std::string("Example 2 verdicts ") + (verdicts ? "match" : "DIFFER") + "; " + std::to_string(formulas) +
             " fragment formulas x " + std::to_string(np * nc) + " lassos (" + std::to_string(lassos) +
             " checks): " + std::to_string(mismatches) + " disagreements with the semantic evaluator");
}

void abstraction_criterion(const ScalarRun& run) {
  const auto& sys = run.cs.config.system;
  const auto& abs = run.abs();
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> grain(0, 1'000'000);
  auto draw = [&](const ab::Interval& i) { return i.lo + i.width() * ab::Rational(grain(rng)) / 1'000'000; };

  std::size_t misses = 0;
  for (std::size_t i = 0; i < kConcreteSteps; ++i) {
    ab::Rational x = draw(sys.x_domain);
    std::vector<ab::Rational> th;
    for (const auto& d : sys.theta_domain) th.push_back(draw(d));
    InputId u = static_cast<InputId>(rng() % abs.inputs.size());
    ab::Rational next = sys.step(x, th, abs.inputs[u], draw(sys.disturbance));
    StateId target = abs.cell_of(next).value_or(abs.sink);
    auto succ = abs.pts.successors(*abs.cell_of(x), u, *abs.theta_cell_of(th));
    misses += std::find(succ.begin(), succ.end(), target) == succ.end();
  }

  std::size_t unequal = 0;
  for (std::size_t i = 0; i < kPostCells; ++i) {
    const auto& qx = abs.x_cells[rng() % abs.x_cells.size()];
    const auto& qt = abs.theta_cells[rng() % abs.theta_cells.size()];
    const auto& u = abs.inputs[rng() % abs.inputs.size()];
    unequal += !(ab::post_box(sys, qx, qt, u) == oracle::post_corners(sys, qx, qt, u));
  }
  report(10, misses == 0 && unequal == 0,
         std::to_string(kConcreteSteps) + " concrete steps: " + std::to_string(misses) + " outside predicted cells; " +
             std::to_string(kPostCells) + " cells: " + std::to_string(unequal) + " post hulls differ from corners");
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  ScalarRun run;
  bool scalar_ready = false;
  guarded(1, [&] {
    scalar_criteria(run);
    scalar_ready = true;
  });
  if (scalar_ready) {
    guarded(4, [&] { scalar_simulation(run); });
  } else {
    report(2, false, "skipped: scalar pipeline failed");
    report(3, false, "skipped: scalar pipeline failed");
    report(4, false, "skipped: scalar pipeline failed");
  }
  guarded(5, grid_criterion);
  guarded(6, estimator_criterion);
  guarded(7, ats_criterion);
  guarded(8, game_criterion);
  guarded(9, logic_criterion);
  if (scalar_ready) {
    guarded(10, [&] { abstraction_criterion(run); });
  } else {
    report(10, false, "skipped: scalar pipeline failed");
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
