#include <doctest.h>

#include <random>
#include <sstream>

#include "adsyn/frontend.hpp"
#include "adsyn/simulation.hpp"
#include "oracles.hpp"

using namespace adsyn;
using namespace adsyn::simulation;

namespace {

struct Scalar {
  frontend::ScalarCaseStudy cs = frontend::gen_scalar_safety();
  abstraction::ScalarAbstraction abs = abstraction::build_quotient_pts(cs.config);
  logic::Dra dra = logic::compile_to_dra(logic::parse_ltl(cs.spec, abs.pts.props()), abs.pts.props());
  synthesis::AdaptiveSynthesis syn = synthesis::synthesize_adaptive(abs.pts, dra);
};

const Scalar& scalar() {
  static const Scalar s;
  return s;
}

std::vector<Letter> letters(std::size_t n, std::initializer_list<std::size_t> with_a) {
  std::vector<Letter> out(n, 0);
  for (auto k : with_a) out[k] = 1;
  return out;
}

}  // namespace

TEST_CASE("check_trace: recurrence gaps") {
  std::vector<std::string> props{"A", "unsafe"};
  auto f = logic::parse_ltl("GF A & G !unsafe", props);
  auto report = check_trace(letters(70, {3, 33, 62}), f, props);
  REQUIRE(report.recurrence.size() == 1);
  CHECK(report.recurrence[0].target == "A");
  CHECK(report.recurrence[0].visits == 3);
  CHECK(report.recurrence[0].max_gap == 30);
  CHECK(report.safety_violations.empty());
  CHECK(report.ok(30));
  CHECK_FALSE(report.ok(29));

  auto late = check_trace(letters(100, {3, 33, 62}), f, props);
  CHECK(late.recurrence[0].max_gap == 37);
  auto never = check_trace(letters(10, {}), f, props);
  CHECK(never.recurrence[0].visits == 0);
  CHECK(never.recurrence[0].max_gap == 10);
  CHECK_FALSE(never.ok(100));
}

TEST_CASE("check_trace: safety and reach") {
  std::vector<std::string> props{"A", "unsafe"};
  auto f = logic::parse_ltl("G !unsafe & F A", props);
  std::vector<Letter> safe(20, 0);
  auto ok = check_trace(safe, f, props);
  CHECK(ok.safety_violations.empty());
  CHECK(ok.unmet_reach.size() == 1);
  CHECK_FALSE(ok.ok(100));

  auto bad = safe;
  bad[7] = 2;
  bad[9] = 1;
  auto report = check_trace(bad, f, props);
  CHECK(report.safety_violations == std::vector<std::size_t>{7});
  CHECK(report.unmet_reach.empty());
  CHECK_FALSE(report.ok(100));
}

TEST_CASE("deterministic single-parameter plant replays the strategy") {
  std::mt19937_64 rng(6);
  std::size_t runs = 0;
  for (int i = 0; i < 50 && runs < 10; ++i) {
    auto p = fixture::random_pts(rng, 6, 2, 1, 1);
    auto dra = logic::compile_to_dra(logic::parse_ltl("GF a", {"a"}), {"a"});
    auto syn = synthesis::synthesize_adaptive(p, dra);
    if (syn.x0_max.empty()) continue;
    ++runs;
    StateId x0 = syn.x0_max.front();
    FinitePlant plant(p, 0, x0);
    auto trace = simulate(plant, syn.controller, dra, {.horizon = 40, .seed = 3});
    REQUIRE(trace.steps.size() == 41);
    StateId x = x0, s = dra.initial();
    for (const auto& st : trace.steps) {
      CHECK(st.cell == x);
      CHECK(st.dra_state == s);
      CHECK(st.theta_set == ParamSet(1));
      if (!st.u) break;
      InputId u = *syn.controller.lookup(x, ParamSet(1), s);
      CHECK(*st.u == u);
      s = dra.next(s, p.label(x));
      x = p.successors(x, u, 0)[0];
    }
    CHECK(check_trace(trace, logic::parse_ltl("GF a", {"a"})).recurrence[0].visits > 0);
  }
  CHECK(runs == 10);
}

TEST_CASE("scalar runs stay safe and keep the true parameter cell") {
  const auto& s = scalar();
  REQUIRE_FALSE(s.syn.x0_max.empty());
  auto f = logic::parse_ltl(s.cs.spec, s.abs.pts.props());
  for (auto mode : {DisturbanceMode::Uniform, DisturbanceMode::Adversarial}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      ScalarPlant plant(s.abs, s.cs.config.system, s.cs.theta_star, s.cs.x0);
      auto trace = simulate(plant, s.syn.controller, s.dra, {.horizon = 100, .seed = seed, .mode = mode});
      REQUIRE(trace.steps.size() == 101);
      ParamSet prev = s.abs.pts.all_params();
      for (const auto& st : trace.steps) {
        CHECK(st.cell < 10);
        CHECK(st.theta_set.subset_of(prev));
        CHECK(st.theta_set.contains(plant.true_param()));
        prev = st.theta_set;
      }
      CHECK(check_trace(trace, f).safety_violations.empty());
      auto x = plant.x();
      CHECK(x >= -1);
      CHECK(x <= 1);
    }
  }
}

TEST_CASE("uniform runs are reproducible from the seed") {
  const auto& s = scalar();
  auto run = [&](std::uint64_t seed) {
    ScalarPlant plant(s.abs, s.cs.config.system, s.cs.theta_star, s.cs.x0);
    std::ostringstream out;
    write_trace_csv(out, simulate(plant, s.syn.controller, s.dra, {.horizon = 30, .seed = seed}));
    return out.str();
  };
  CHECK(run(4) == run(4));
  CHECK(run(4) != run(5));
  auto csv = run(1);
  CHECK(csv.rfind("k,x,cell,theta_set,dra_state,u,d,labels\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 32);
}

TEST_CASE("starting outside the winning region is a hard failure") {
  const auto& s = scalar();
  ScalarPlant plant(s.abs, s.cs.config.system, s.cs.theta_star, abstraction::parse_decimal("0.95"));
  try {
    simulate(plant, s.syn.controller, s.dra, {});
    FAIL("expected WinningRegionExit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WinningRegionExit);
  }
}

TEST_CASE("finite plants under every drift on the grid") {
  auto cfg = frontend::GridWorldConfig::default_layout();
  auto p = frontend::gen_gridworld(cfg);
  auto dra = logic::compile_to_dra(logic::parse_ltl(frontend::kGridSpec, p.props()), p.props());
  auto syn = synthesis::synthesize_adaptive(p, dra);
  auto f = logic::parse_ltl(frontend::kGridSpec, p.props());
  for (ParamId th = 0; th < p.num_params(); ++th) {
    FinitePlant plant(p, th, cfg.cell(0, 0));
    auto trace = simulate(plant, syn.controller, dra, {.horizon = 200, .seed = th, .mode = DisturbanceMode::Adversarial});
    auto report = check_trace(trace, f);
    CHECK(report.ok(syn.product.size()));
    for (const auto& st : trace.steps) CHECK(st.theta_set.contains(th));
  }
}
