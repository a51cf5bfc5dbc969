#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "adsyn/frontend.hpp"
#include "adsyn/logic.hpp"
#include "oracles.hpp"

using namespace adsyn;
using namespace adsyn::frontend;
namespace fs = std::filesystem;

namespace {

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

struct Cli {
  int code = 0;
  std::string out, err;
};

Cli cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Cli r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("adsyn_test_" + std::to_string(getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<StateId> succ(const systems::Pts& p, StateId x, InputId u, ParamId th) {
  auto s = p.successors(x, u, th);
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("grid drift inside the band") {
  auto cfg = GridWorldConfig::default_layout();
  auto p = gen_gridworld(cfg);
  CHECK(p.num_states() == 151);
  CHECK(p.param_names() == std::vector<std::string>{"+2", "+1", "0", "-1", "-2"});
  const InputId left = 0, right = 1, up = 2;
  // +2 overrides a move to the right
  CHECK(succ(p, cfg.cell(4, 7), right, 0) == std::vector<StateId>{cfg.cell(4, 6)});
  // -2 while moving up: one up, two right
  CHECK(succ(p, cfg.cell(4, 7), up, 4) == std::vector<StateId>{cfg.cell(5, 9)});
  // outside the band the drift has no effect
  CHECK(succ(p, cfg.cell(2, 7), right, 0) == std::vector<StateId>{cfg.cell(2, 8)});
  // off the grid goes to the unsafe sink
  REQUIRE(p.sink().has_value());
  CHECK(succ(p, cfg.cell(0, 0), left, 2) == std::vector<StateId>{*p.sink()});
  CHECK(p.label(*p.sink()) == 4);
  CHECK(p.label(cfg.cell(0, 0)) == 1);
  CHECK(p.label(cfg.cell(9, 14)) == 2);
  CHECK(p.label(cfg.cell(4, 0)) == 4);
  CHECK(p.label(cfg.cell(4, 7)) == 0);
}

TEST_CASE("zero drift is the plain four-connected grid") {
  auto cfg = GridWorldConfig::default_layout();
  cfg.boundary = GridWorldConfig::Boundary::Clamp;
  auto p = gen_gridworld(cfg);
  CHECK_FALSE(p.sink().has_value());
  for (std::size_t row = 0; row < cfg.height; ++row)
    for (std::size_t col = 0; col < cfg.width; ++col) {
      StateId x = cfg.cell(row, col);
      CHECK(succ(p, x, 0, 2) == std::vector<StateId>{cfg.cell(row, col == 0 ? 0 : col - 1)});
      CHECK(succ(p, x, 1, 2) == std::vector<StateId>{cfg.cell(row, std::min(col + 1, cfg.width - 1))});
      CHECK(succ(p, x, 2, 2) == std::vector<StateId>{cfg.cell(std::min(row + 1, cfg.height - 1), col)});
      CHECK(succ(p, x, 3, 2) == std::vector<StateId>{cfg.cell(row == 0 ? 0 : row - 1, col)});
    }
}

TEST_CASE("drift can be keyed on the successor cell") {
  auto cfg = GridWorldConfig::default_layout();
  cfg.drift_on = GridWorldConfig::DriftCell::Successor;
  auto p = gen_gridworld(cfg);
  CHECK(succ(p, cfg.cell(3, 7), 2, 0) == std::vector<StateId>{cfg.cell(4, 5)});
  CHECK(succ(p, cfg.cell(5, 7), 2, 0) == std::vector<StateId>{cfg.cell(6, 7)});
}

TEST_CASE("grid configs are validated and round-trip") {
  auto cfg = GridWorldConfig::default_layout();
  cfg.validate();
  std::ostringstream out;
  write_grid_config(out, cfg);
  std::istringstream in(out.str());
  auto back = read_grid_config(in);
  std::ostringstream again;
  write_grid_config(again, back);
  CHECK(out.str() == again.str());

  auto bad = cfg;
  bad.region_a.push_back(bad.unsafe.front());
  CHECK(error_of([&] { bad.validate(); }) == ErrorKind::InvalidModel);
  bad = cfg;
  bad.region_b.push_back(bad.region_a.front());
  CHECK(error_of([&] { bad.validate(); }) == ErrorKind::InvalidModel);
  bad = cfg;
  bad.band.push_back(500);
  CHECK(error_of([&] { bad.validate(); }) == ErrorKind::InvalidModel);
  std::istringstream weird(R"({"width": 2, "height": 2, "drifts": [0], "boundary": "wrap"})");
  CHECK(error_of([&] { read_grid_config(weird); }) == ErrorKind::Parse);
}

TEST_CASE("scalar case study setup") {
  auto cs = gen_scalar_safety();
  auto& cfg = cs.config;
  CHECK(cfg.x_cells == 10);
  CHECK(cfg.theta_cells == std::vector<std::size_t>{2, 2, 4});
  CHECK(abstraction::grid_partition(cfg.system.theta_domain, cfg.theta_cells).size() == 16);
  REQUIRE(cfg.inputs.size() == 11);
  CHECK(cfg.inputs.front() == -1);
  CHECK(cfg.inputs[1] == abstraction::parse_decimal("-0.8"));
  CHECK(cfg.inputs.back() == 1);
  CHECK(cfg.system.x_domain == abstraction::Interval(-1, 1));
  CHECK(cs.spec == "G x_le_1 & G x_ge_m1");
}

TEST_CASE("describe_cells") {
  auto cells = abstraction::grid_partition(abstraction::Interval(-1, 1), 10);
  CHECK(describe_cells({2, 3, 4, 5, 6, 7}, cells) == "[-0.6,0.6]");
  CHECK(describe_cells({}, cells) == "empty");
  CHECK(describe_cells({0, 9, 10}, cells) == "[-1,-0.8] u [0.8,1]");
}

TEST_CASE("sha256 and manifests") {
  TempDir dir;
  std::ofstream(dir / "abc.txt") << "abc";
  CHECK(sha256_file(dir / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  std::ofstream(dir / "stats.json") << "{}";
  auto hashes = hash_artifacts(dir.path);
  CHECK(hashes.size() == 1);
  CHECK(hashes.count("abc.txt") == 1);

  RunManifest m{{"casestudy", "grid"}, {"in.json"}, "GF A", {7}, "{}", dir.path.string(), hashes};
  std::ostringstream out;
  write_manifest(out, m);
  std::istringstream in(out.str());
  auto back = read_manifest(in);
  CHECK(back.command == m.command);
  CHECK(back.seeds == m.seeds);
  CHECK(back.artifacts == m.artifacts);
  CHECK(back.spec == "GF A");
}

TEST_CASE("cli: compile-spec") {
  auto r = cli({"compile-spec", "G !unsafe & GF A & GF B"});
  CHECK(r.code == 0);
  auto dra = logic::parse_dra(r.out);
  CHECK(dra.pairs().size() == 1);
  CHECK(dra.props() == std::vector<std::string>{"unsafe", "A", "B"});

  CHECK(cli({"compile-spec", "a U b"}).code == 2);
  CHECK(cli({"compile-spec", "a & (b"}).code == 2);
  CHECK(cli({"compile-spec", "a", "--props", "b"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli: model pipeline on the two-parameter example") {
  TempDir dir;
  {
    std::ofstream model(dir / "fig2.json");
    systems::Pts p(3, 2, 2, {"goal"});
    auto f = fixture::fig2_pts();
    for (StateId x = 0; x < 3; ++x)
      for (InputId u = 0; u < 2; ++u)
        for (ParamId th = 0; th < 2; ++th)
          for (StateId n : f.successors(x, u, th)) p.add_transition(x, u, th, n);
    p.set_label(2, 1);
    p.set_state_names(f.state_names());
    p.set_input_names(f.input_names());
    p.set_param_names(f.param_names());
    systems::write_pts_json(model, p);
  }
  auto ats = cli({"build-ats", dir / "fig2.json", "-o", dir / "ats.json", "--stats", dir / "ats_stats.json",
                  "--emit-dot", dir / "ats.dot"});
  CHECK(ats.code == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "ats_stats.json")).at("ats_nodes") == 9);
  CHECK(fs::exists(dir / "ats.dot"));
  CHECK(slurp(dir / "ats.json").find("x2,{theta1}") != std::string::npos);

  auto syn = cli({"synthesize", dir / "fig2.json", "--spec", "GF goal", "-o", dir / "strategy.json", "--winning",
                  dir / "winning.json"});
  CHECK(syn.code == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "winning.json")).at("x0_max") == nlohmann::json::array({"x1", "x3"}));

  auto sim = cli({"simulate", dir / "strategy.json", "--model", dir / "fig2.json", "--spec", "GF goal", "--theta-star",
                  "theta2", "--x0", "x1", "--horizon", "20", "-o", dir / "trace.csv"});
  CHECK(sim.code == 0);
  auto csv = slurp(dir / "trace.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);

  auto lost = cli({"simulate", dir / "strategy.json", "--model", dir / "fig2.json", "--spec", "GF goal",
                   "--theta-star", "theta1", "--x0", "x2"});
  CHECK(lost.code == 3);

  CHECK(cli({"synthesize", dir / "missing.json", "--spec", "GF goal"}).code == 2);
  CHECK(cli({"synthesize", dir / "fig2.json", "--spec", "GF other"}).code == 2);
}

TEST_CASE("cli: abstraction and robust synthesis of the scalar system") {
  TempDir dir;
  {
    std::ofstream cfg(dir / "config.json");
    abstraction::write_abstraction_config(cfg, gen_scalar_safety().config);
  }
  CHECK(cli({"abstract", dir / "config.json", "-o", dir / "quotient.json"}).code == 0);
  std::ifstream in(dir / "quotient.json");
  auto p = systems::read_pts_json(in);
  CHECK(p.num_states() == 11);
  CHECK(p.num_params() == 16);

  auto robust = cli({"synthesize", dir / "quotient.json", "--spec", "G x_le_1 & G x_ge_m1", "--robust", "--winning",
                     dir / "winning.json"});
  CHECK(robust.code == 1);
  CHECK(nlohmann::json::parse(slurp(dir / "winning.json")).at("x0_max").empty());

  auto adaptive = cli({"synthesize", dir / "quotient.json", "--spec", "G x_le_1 & G x_ge_m1", "-o",
                       dir / "strategy.json", "--winning", dir / "adaptive.json"});
  REQUIRE(adaptive.code == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "adaptive.json")).at("x0_max").size() == 6);

  auto sim = cli({"simulate", dir / "strategy.json", "--config", dir / "config.json", "--spec",
                  "G x_le_1 & G x_ge_m1", "--theta-star", "0.45,1.11,-0.18", "--x0", "0", "--seed", "3",
                  "--horizon", "50", "--mode", "adversarial", "-o", dir / "trace.csv"});
  CHECK(sim.code == 0);
  auto trace = slurp(dir / "trace.csv");
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 52);
}

TEST_CASE("cli: grid case study and manifest replay") {
  TempDir dir;
  auto r = cli({"casestudy", "grid", "--out", dir / "grid", "--horizon", "120", "--seed", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("robust winning cells: 0") != std::string::npos);
  for (const char* f : {"grid.json", "grid.pts.json", "spec.dra", "strategy.json", "trace_+2.csv", "stats.json",
                        "manifest.json"}) {
    CHECK_MESSAGE(fs::exists(dir / ("grid/" + std::string(f))), f);
  }
  auto stats = nlohmann::json::parse(slurp(dir / "grid/stats.json"));
  CHECK(stats.at("ats_nodes").get<int>() > 0);
  CHECK(stats.at("winning_nodes").get<int>() > 0);
  CHECK(stats.contains("x0_max_cells"));

  CHECK(cli({"verify-manifest", dir / "grid/manifest.json"}).code == 0);
  auto manifest = slurp(dir / "grid/manifest.json");
  auto at = manifest.find(sha256_file(dir / "grid/trace_0.csv"));
  REQUIRE(at != std::string::npos);
  manifest.replace(at, 4, "0000");
  std::ofstream(dir / "grid/manifest.json") << manifest;
  CHECK(cli({"verify-manifest", dir / "grid/manifest.json"}).code == 1);
}
