#include <chrono>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adsyn/adaptive.hpp"
#include "adsyn/frontend.hpp"
#include "adsyn/logic.hpp"
#include "adsyn/simulation.hpp"
#include "adsyn/synthesis.hpp"

namespace adsyn::frontend {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Synthesis found no winning initial state, or a trace check failed.
struct Infeasible {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  body(out);
}

// "-" or empty means the given stream.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(fallback);
  } else {
    write_file(path, body);
  }
}

std::uint32_t find_name(const std::vector<std::string>& names, const std::string& name, const char* what) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<std::uint32_t>(i);
  }
  throw Error(ErrorKind::InvalidArgument, std::string("unknown ") + what + " '" + name + "'");
}

std::vector<abstraction::Rational> parse_vector(const std::string& text) {
  std::vector<abstraction::Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(abstraction::parse_decimal(item));
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct SpecSource {
  std::string dra_path;
  std::string formula;

  void add_options(CLI::App* cmd) {
    auto* d = cmd->add_option("--dra", dra_path, "automaton file");
    auto* s = cmd->add_option("--spec", formula, "LTL formula in the supported fragment");
    d->excludes(s);
  }

  logic::Dra load(const std::vector<std::string>& model_props) const {
    if (!dra_path.empty()) return logic::parse_dra(read_file(dra_path));
    if (formula.empty()) throw Error(ErrorKind::InvalidArgument, "one of --dra or --spec is required");
    return logic::compile_to_dra(logic::parse_ltl(formula, model_props), model_props);
  }
};

json solution_stats(const synthesis::AdaptiveSynthesis& syn, const systems::Pts& p) {
  std::size_t on_states = 0;
  for (const auto& n : syn.ats.nodes()) on_states += !p.sink() || n.x != *p.sink();
  std::vector<std::string> x0;
  for (StateId x : syn.x0_max) x0.push_back(p.state_names()[x]);
  return {{"ats_nodes", syn.ats.size()},
          {"ats_nodes_without_sink", on_states},
          {"product_nodes", syn.product.size()},
          {"winning_nodes", syn.solution.num_winning()},
          {"x0_max_cells", syn.x0_max.size()},
          {"x0_max", x0},
          {"ats_seconds", syn.ats_seconds},
          {"solve_seconds", syn.solve_seconds}};
}

std::vector<StateId> robust_initial(const systems::Pts& p, const logic::Dra& dra) {
  const auto robust = synthesis::build_product(systems::robustify(p), dra);
  return synthesis::winning_initial(robust, synthesis::solve_rabin(robust.game()));
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  void compile_spec();
  void abstract();
  void build_ats();
  void synthesize();
  void simulate();
  void casestudy_scalar();
  void casestudy_grid();
  void verify_manifest();

  void finish_manifest(const fs::path& dir, RunManifest m);

  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::string> args_;

  std::string input_;
  std::string output_;
  std::string dot_;
  std::string stats_;
  std::string winning_;
  std::vector<std::string> props_;
  SpecSource spec_;
  bool robust_ = false;
  std::string model_;
  std::string config_;
  std::string theta_star_;
  std::string x0_;
  std::uint64_t seed_ = 1;
  std::size_t horizon_ = 100;
  std::size_t grid_horizon_ = 500;
  std::size_t runs_ = 1;
  std::string mode_ = "uniform";
  std::string out_dir_;
};

int Cli::run(const std::vector<std::string>& args) {
  args_ = args;
  CLI::App app{"Adaptive controller synthesis for systems with unknown constant parameters", "adsyn"};
  app.require_subcommand(1);
  std::function<void()> action;

  auto* compile = app.add_subcommand("compile-spec", "compile an LTL formula to a Rabin automaton");
  compile->add_option("formula", input_, "formula")->required();
  compile->add_option("--props", props_, "proposition order (default: order of appearance)")->delimiter(',');
  compile->add_option("-o,--output", output_, "automaton file (default: stdout)");
  compile->add_option("--emit-dot", dot_, "write the automaton as DOT");
  compile->callback([&] { action = [this] { compile_spec(); }; });

  auto* abs = app.add_subcommand("abstract", "build the quotient PTS of a scalar affine system");
  abs->add_option("config", input_, "abstraction config (JSON)")->required()->check(CLI::ExistingFile);
  abs->add_option("-o,--output", output_, "PTS model file (default: stdout)");
  abs->callback([&] { action = [this] { abstract(); }; });

  auto* ats = app.add_subcommand("build-ats", "build the adaptive transition system of a PTS");
  ats->add_option("model", input_, "PTS model file")->required()->check(CLI::ExistingFile);
  ats->add_option("-o,--output", output_, "ATS JSON file");
  ats->add_option("--stats", stats_, "statistics JSON file");
  ats->add_option("--emit-dot", dot_, "write the ATS as DOT");
  ats->callback([&] { action = [this] { build_ats(); }; });

  auto* syn = app.add_subcommand("synthesize", "synthesize an adaptive (or robust) strategy");
  syn->add_option("model", input_, "PTS model file")->required()->check(CLI::ExistingFile);
  spec_.add_options(syn);
  syn->add_flag("--robust", robust_, "ignore parameter learning (union over all parameters)");
  syn->add_option("-o,--output", output_, "strategy JSON file");
  syn->add_option("--winning", winning_, "winning initial states JSON file");
  syn->add_option("--stats", stats_, "statistics JSON file");
  syn->add_option("--emit-dot", dot_, "write the strategy-induced graph as DOT");
  syn->callback([&] { action = [this] { synthesize(); }; });

  auto* sim = app.add_subcommand("simulate", "run a strategy in closed loop");
  sim->add_option("strategy", input_, "strategy JSON file")->required()->check(CLI::ExistingFile);
  auto* model_opt = sim->add_option("--model", model_, "finite PTS plant");
  auto* config_opt = sim->add_option("--config", config_, "abstraction config of a scalar affine plant");
  model_opt->excludes(config_opt);
  spec_.add_options(sim);
  sim->add_option("--theta-star", theta_star_, "ground truth: parameter name, or comma-separated values")
      ->required();
  sim->add_option("--x0", x0_, "initial state name or value");
  sim->add_option("--seed", seed_, "random seed");
  sim->add_option("--horizon", horizon_, "number of steps");
  sim->add_option("--mode", mode_, "disturbance mode")->check(CLI::IsMember({"uniform", "adversarial"}));
  sim->add_option("-o,--output", output_, "trace CSV (default: stdout)");
  sim->callback([&] { action = [this] { simulate(); }; });

  auto* cs = app.add_subcommand("casestudy", "end-to-end case studies");
  cs->require_subcommand(1);
  auto* scalar = cs->add_subcommand("scalar", "scalar affine system with three unknown parameters");
  auto* grid = cs->add_subcommand("grid", "grid robot with unknown drift");
  for (auto* c : {scalar, grid}) {
    c->add_option("--out", out_dir_, "output directory");
    c->add_option("--seed", seed_, "random seed");
    c->add_option("--emit-dot", dot_, "write the specification automaton as DOT");
  }
  scalar->add_option("--horizon", horizon_, "steps per run");
  scalar->add_option("--runs", runs_, "number of simulation runs");
  scalar->add_option("--theta-star", theta_star_, "ground truth, comma-separated");
  scalar->add_option("--mode", mode_, "disturbance mode")->check(CLI::IsMember({"uniform", "adversarial"}));
  scalar->callback([&] { action = [this] { casestudy_scalar(); }; });
  grid->add_option("--config", config_, "grid layout JSON")->check(CLI::ExistingFile);
  grid->add_option("--horizon", grid_horizon_, "steps per run");
  grid->add_option("--x0", x0_, "start cell name (default r0c0)");
  grid->callback([&] { action = [this] { casestudy_grid(); }; });

  auto* verify = app.add_subcommand("verify-manifest", "re-run a recorded case study and compare artifact hashes");
  verify->add_option("manifest", input_, "manifest.json")->required()->check(CLI::ExistingFile);
  verify->callback([&] { action = [this] { verify_manifest(); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out_ << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err_ << "adsyn: " << e.what() << "\n";
    return 2;
  }

  try {
    action();
    return 0;
  } catch (const Infeasible& e) {
    err_ << "adsyn: " << e.message << "\n";
    return 1;
  } catch (const Error& e) {
    err_ << "adsyn: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::EmptyEstimate:
      case ErrorKind::NotWinning:
      case ErrorKind::WinningRegionExit:
        return 3;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    err_ << "adsyn: " << e.what() << "\n";
    return 3;
  }
}

void Cli::compile_spec() {
  const auto props = props_.empty() ? logic::infer_propositions(input_) : props_;
  const logic::Dra dra = logic::compile_to_dra(logic::parse_ltl(input_, props), props);
  emit(output_, out_, [&](std::ostream& o) { logic::write_dra(o, dra); });
  if (!dot_.empty()) write_file(dot_, [&](std::ostream& o) { logic::write_dra_dot(o, dra); });
}

void Cli::abstract() {
  std::istringstream in(read_file(input_));
  const auto cfg = abstraction::read_abstraction_config(in);
  const auto abs = abstraction::build_quotient_pts(cfg);
  emit(output_, out_, [&](std::ostream& o) { systems::write_pts_json(o, abs.pts); });
}

void Cli::build_ats() {
  std::istringstream in(read_file(input_));
  const systems::Pts p = systems::read_pts_json(in);
  const auto t0 = std::chrono::steady_clock::now();
  const adaptive::Ats ats = adaptive::build_ats(p);
  const double elapsed = seconds_since(t0);
  out_ << "ats_nodes " << ats.size() << "\n";
  if (!output_.empty()) write_file(output_, [&](std::ostream& o) { adaptive::write_ats_json(o, ats); });
  if (!dot_.empty()) write_file(dot_, [&](std::ostream& o) { adaptive::write_ats_dot(o, ats); });
  if (!stats_.empty()) {
    write_file(stats_, [&](std::ostream& o) {
      o << json{{"ats_nodes", ats.size()}, {"ats_seconds", elapsed}}.dump(1) << "\n";
    });
  }
}

void Cli::synthesize() {
  std::istringstream in(read_file(input_));
  const systems::Pts p = systems::read_pts_json(in);
  const logic::Dra dra = spec_.load(p.props());

  std::vector<std::string> x0_names;
  json stats;
  if (robust_) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto product = synthesis::build_product(systems::robustify(p), dra);
    const auto sol = synthesis::solve_rabin(product.game());
    const auto x0 = synthesis::winning_initial(product, sol);
    for (StateId x : x0) x0_names.push_back(p.state_names()[x]);
    stats = {{"product_nodes", product.size()},   {"winning_nodes", sol.num_winning()},
             {"x0_max_cells", x0.size()},         {"x0_max", x0_names},
             {"solve_seconds", seconds_since(t0)}};
    std::vector<synthesis::AdaptiveController::Entry> entries;
    for (StateId id = 0; id < product.size(); ++id) {
      if (!sol.winning[id]) continue;
      const auto& n = product.nodes()[id];
      entries.push_back({n.x, p.all_params(), n.s, sol.strategy[id]});
    }
    if (!output_.empty()) {
      write_file(output_, [&](std::ostream& o) {
        synthesis::write_controller_json(o, synthesis::AdaptiveController(std::move(entries)), p);
      });
    }
    if (!dot_.empty()) {
      write_file(dot_, [&](std::ostream& o) {
        synthesis::write_strategy_dot(o, product, sol, p.state_names(), p.input_names());
      });
    }
  } else {
    const auto syn = synthesis::synthesize_adaptive(p, dra);
    for (StateId x : syn.x0_max) x0_names.push_back(p.state_names()[x]);
    stats = solution_stats(syn, p);
    if (!output_.empty()) {
      write_file(output_, [&](std::ostream& o) { synthesis::write_controller_json(o, syn.controller, p); });
    }
    if (!dot_.empty()) {
      write_file(dot_, [&](std::ostream& o) {
        synthesis::write_strategy_dot(o, syn.product, syn.solution, syn.ats.system().state_names(),
                                      p.input_names());
      });
    }
  }
  out_ << stats.dump(1) << "\n";
  if (!stats_.empty()) write_file(stats_, [&](std::ostream& o) { o << stats.dump(1) << "\n"; });
  if (!winning_.empty()) {
    write_file(winning_, [&](std::ostream& o) { o << json{{"x0_max", x0_names}}.dump(1) << "\n"; });
  }
  if (x0_names.empty()) throw Infeasible{"winning region is empty"};
}

void Cli::simulate() {
  simulation::SimulationConfig sc{horizon_, seed_,
                                  mode_ == "uniform" ? simulation::DisturbanceMode::Uniform
                                                     : simulation::DisturbanceMode::Adversarial};
  std::unique_ptr<systems::Pts> finite;
  std::unique_ptr<abstraction::AbstractionConfig> cfg;
  std::unique_ptr<abstraction::ScalarAbstraction> abs;
  std::unique_ptr<simulation::Plant> plant;
  if (!config_.empty()) {
    std::istringstream in(read_file(config_));
    cfg = std::make_unique<abstraction::AbstractionConfig>(abstraction::read_abstraction_config(in));
    abs = std::make_unique<abstraction::ScalarAbstraction>(abstraction::build_quotient_pts(*cfg));
    const auto x0 = x0_.empty() ? abstraction::Rational(0) : abstraction::parse_decimal(x0_);
    plant = std::make_unique<simulation::ScalarPlant>(*abs, cfg->system, parse_vector(theta_star_), x0);
  } else if (!model_.empty()) {
    std::istringstream in(read_file(model_));
    finite = std::make_unique<systems::Pts>(systems::read_pts_json(in));
    const ParamId th = find_name(finite->param_names(), theta_star_, "parameter");
    const StateId x0 = x0_.empty() ? 0 : find_name(finite->state_names(), x0_, "state");
    plant = std::make_unique<simulation::FinitePlant>(*finite, th, x0);
  } else {
    throw Error(ErrorKind::InvalidArgument, "one of --model or --config is required");
  }
  const systems::Pts& model = plant->model();
  std::istringstream strategy_in(read_file(input_));
  const auto controller = synthesis::read_controller_json(strategy_in, model);
  const logic::Dra dra = spec_.load(model.props());

  const auto trace = simulation::simulate(*plant, controller, dra, sc);
  emit(output_, out_, [&](std::ostream& o) { simulation::write_trace_csv(o, trace); });
  if (!spec_.formula.empty()) {
    const auto report = simulation::check_trace(trace, logic::parse_ltl(spec_.formula, model.props()));
    for (const auto& r : report.recurrence) {
      err_ << "recurrence " << r.target << ": " << r.visits << " visits, max gap " << r.max_gap << "\n";
    }
    if (!report.safety_violations.empty()) {
      throw Infeasible{"safety violated at step " + std::to_string(report.safety_violations.front())};
    }
  }
}

void Cli::finish_manifest(const fs::path& dir, RunManifest m) {
  m.command = args_;
  m.output_dir = dir.string();
  m.artifacts = hash_artifacts(dir);
  write_file(dir / "manifest.json", [&](std::ostream& o) { write_manifest(o, m); });
}

void Cli::casestudy_scalar() {
  const fs::path dir = out_dir_.empty() ? fs::path("adsyn-scalar") : fs::path(out_dir_);
  fs::create_directories(dir);
  ScalarCaseStudy cs = gen_scalar_safety();
  if (!theta_star_.empty()) cs.theta_star = parse_vector(theta_star_);

  std::ostringstream cfg_text;
  abstraction::write_abstraction_config(cfg_text, cs.config);
  write_file(dir / "config.json", [&](std::ostream& o) { o << cfg_text.str(); });

  auto t0 = std::chrono::steady_clock::now();
  const auto abs = abstraction::build_quotient_pts(cs.config);
  const double abstraction_seconds = seconds_since(t0);
  write_file(dir / "quotient.pts.json", [&](std::ostream& o) { systems::write_pts_json(o, abs.pts); });

  const logic::Dra dra = logic::compile_to_dra(logic::parse_ltl(cs.spec, abs.pts.props()), abs.pts.props());
  write_file(dir / "spec.dra", [&](std::ostream& o) { logic::write_dra(o, dra); });
  if (!dot_.empty()) write_file(dot_, [&](std::ostream& o) { logic::write_dra_dot(o, dra); });

  const auto syn = synthesis::synthesize_adaptive(abs.pts, dra);
  write_file(dir / "strategy.json", [&](std::ostream& o) { synthesis::write_controller_json(o, syn.controller, abs.pts); });
  const auto robust = robust_initial(abs.pts, dra);

  json stats = solution_stats(syn, abs.pts);
  stats["abstraction_seconds"] = abstraction_seconds;
  stats["robust_x0_max_cells"] = robust.size();

  out_ << "quotient: " << abs.x_cells.size() << " state cells, " << abs.theta_cells.size() << " parameter cells, "
       << abs.inputs.size() << " inputs\n";
  out_ << "ATS nodes: " << syn.ats.size() << " (" << stats["ats_nodes_without_sink"].get<std::size_t>()
       << " on state cells)\n";
  out_ << "winning nodes: " << syn.solution.num_winning() << "\n";
  out_ << "winning region: " << describe_cells(syn.x0_max, abs.x_cells) << "\n";
  out_ << "robust winning region: " << describe_cells(robust, abs.x_cells) << "\n";

  std::vector<std::uint64_t> seeds;
  std::size_t violations = 0;
  t0 = std::chrono::steady_clock::now();
  const auto spec_formula = logic::parse_ltl(cs.spec, abs.pts.props());
  if (syn.x0_max.empty()) throw Infeasible{"winning region is empty"};
  for (std::size_t run = 0; run < runs_; ++run) {
    const std::uint64_t seed = seed_ + run;
    seeds.push_back(seed);
    simulation::ScalarPlant plant(abs, cs.config.system, cs.theta_star, cs.x0);
    simulation::SimulationConfig sc{horizon_, seed,
                                    mode_ == "uniform" ? simulation::DisturbanceMode::Uniform
                                                       : simulation::DisturbanceMode::Adversarial};
    const auto trace = simulation::simulate(plant, syn.controller, dra, sc);
    violations += simulation::check_trace(trace, spec_formula).safety_violations.size();
    if (run == 0) write_file(dir / "trace.csv", [&](std::ostream& o) { simulation::write_trace_csv(o, trace); });
  }
  stats["simulation_runs"] = runs_;
  stats["safety_violations"] = violations;
  stats["simulation_seconds"] = seconds_since(t0);
  out_ << "simulation: " << runs_ << " run(s) of " << horizon_ << " steps, " << violations << " safety violation(s)\n";
  write_file(dir / "stats.json", [&](std::ostream& o) { o << stats.dump(1) << "\n"; });

  RunManifest m;
  m.spec = cs.spec;
  m.seeds = seeds;
  m.config = json::parse(cfg_text.str()).dump();
  finish_manifest(dir, std::move(m));
  if (violations > 0) throw Infeasible{"safety violated in simulation"};
}

void Cli::casestudy_grid() {
  const fs::path dir = out_dir_.empty() ? fs::path("adsyn-grid") : fs::path(out_dir_);
  fs::create_directories(dir);
  GridWorldConfig cfg = GridWorldConfig::default_layout();
  std::vector<std::string> inputs;
  if (!config_.empty()) {
    std::istringstream in(read_file(config_));
    cfg = read_grid_config(in);
    inputs.push_back(config_);
  }
  const std::size_t horizon = grid_horizon_;
  std::ostringstream cfg_text;
  write_grid_config(cfg_text, cfg);
  write_file(dir / "grid.json", [&](std::ostream& o) { o << cfg_text.str(); });

  const systems::Pts p = gen_gridworld(cfg);
  write_file(dir / "grid.pts.json", [&](std::ostream& o) { systems::write_pts_json(o, p); });
  const auto formula = logic::parse_ltl(kGridSpec, p.props());
  const logic::Dra dra = logic::compile_to_dra(formula, p.props());
  write_file(dir / "spec.dra", [&](std::ostream& o) { logic::write_dra(o, dra); });
  if (!dot_.empty()) write_file(dot_, [&](std::ostream& o) { logic::write_dra_dot(o, dra); });

  const auto syn = synthesis::synthesize_adaptive(p, dra);
  write_file(dir / "strategy.json", [&](std::ostream& o) { synthesis::write_controller_json(o, syn.controller, p); });
  const auto robust = robust_initial(p, dra);
  json stats = solution_stats(syn, p);
  stats["robust_x0_max_cells"] = robust.size();
  out_ << "ATS nodes: " << syn.ats.size() << ", product nodes: " << syn.product.size()
       << ", winning nodes: " << syn.solution.num_winning() << "\n";
  out_ << "adaptive winning cells: " << syn.x0_max.size() << ", robust winning cells: " << robust.size() << "\n";
  if (syn.x0_max.empty()) {
    write_file(dir / "stats.json", [&](std::ostream& o) { o << stats.dump(1) << "\n"; });
    throw Infeasible{"winning region is empty"};
  }

  const StateId x0 = x0_.empty() ? 0 : find_name(p.state_names(), x0_, "state");
  bool ok = true;
  json runs = json::array();
  for (ParamId th = 0; th < p.num_params(); ++th) {
    simulation::FinitePlant plant(p, th, x0);
    const auto trace = simulation::simulate(plant, syn.controller, dra, {horizon, seed_});
    const auto report = simulation::check_trace(trace, formula);
    const bool run_ok = report.ok(syn.product.size());
    ok = ok && run_ok;
    out_ << "drift " << p.param_names()[th] << ": " << report.safety_violations.size() << " unsafe step(s)";
    json gaps = json::object();
    for (const auto& r : report.recurrence) {
      out_ << ", " << r.target << " max gap " << r.max_gap;
      gaps[r.target] = r.max_gap;
    }
    out_ << (run_ok ? "" : "  FAILED") << "\n";
    runs.push_back({{"theta", p.param_names()[th]}, {"unsafe_steps", report.safety_violations.size()}, {"max_gap", gaps}});
    write_file(dir / ("trace_" + p.param_names()[th] + ".csv"),
               [&](std::ostream& o) { simulation::write_trace_csv(o, trace); });
  }
  stats["runs"] = runs;
  write_file(dir / "stats.json", [&](std::ostream& o) { o << stats.dump(1) << "\n"; });

  RunManifest m;
  m.inputs = inputs;
  m.spec = kGridSpec;
  m.seeds = {seed_};
  m.config = json::parse(cfg_text.str()).dump();
  finish_manifest(dir, std::move(m));
  if (!ok) throw Infeasible{"a closed-loop run failed its trace check"};
}

void Cli::verify_manifest() {
  std::istringstream in(read_file(input_));
  const RunManifest m = read_manifest(in);

  std::mt19937_64 rng(std::random_device{}());
  const fs::path tmp = fs::temp_directory_path() / ("adsyn-verify-" + std::to_string(rng()));
  std::vector<std::string> command = m.command;
  bool replaced = false;
  for (std::size_t i = 0; i < command.size(); ++i) {
    if (command[i] == "--out" && i + 1 < command.size()) {
      command[i + 1] = tmp.string();
      replaced = true;
    } else if (command[i].rfind("--out=", 0) == 0) {
      command[i] = "--out=" + tmp.string();
      replaced = true;
    }
  }
  if (!replaced) {
    command.push_back("--out");
    command.push_back(tmp.string());
  }

  std::ostringstream quiet;
  const int status = run_cli(command, quiet, err_);
  std::map<std::string, std::string> fresh;
  if (fs::exists(tmp)) fresh = hash_artifacts(tmp);
  fs::remove_all(tmp);
  if (status != 0 && status != 1) throw Error(ErrorKind::InvalidArgument, "re-run failed with status " + std::to_string(status));

  bool same = fresh.size() == m.artifacts.size();
  for (const auto& [name, hash] : m.artifacts) {
    auto it = fresh.find(name);
    const bool match = it != fresh.end() && it->second == hash;
    same = same && match;
    out_ << (match ? "ok       " : "MISMATCH ") << name << "\n";
  }
  for (const auto& [name, hash] : fresh) {
    if (!m.artifacts.count(name)) out_ << "EXTRA    " << name << "\n";
  }
  if (!same) throw Infeasible{"artifacts differ from the manifest"};
  out_ << "all " << m.artifacts.size() << " artifacts reproduced\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  return cli.run(args);
}

}  // namespace adsyn::frontend
