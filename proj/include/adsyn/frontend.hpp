#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "adsyn/abstraction.hpp"
#include "adsyn/systems.hpp"

namespace adsyn::frontend {

/// Grid robot with a horizontal drift θ applied inside a band of cells.
/// Cell id = row * width + col; row 0 is the bottom row and "up" increases
/// the row. A positive drift pushes the robot left.
struct GridWorldConfig {
  enum class Boundary { Sink, Clamp };
  enum class DriftCell { Current, Successor };

  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<StateId> band;
  std::vector<StateId> unsafe;
  std::vector<StateId> region_a;
  std::vector<StateId> region_b;
  std::vector<int> drifts;
  Boundary boundary = Boundary::Sink;
  DriftCell drift_on = DriftCell::Current;

  StateId cell(std::size_t row, std::size_t col) const { return static_cast<StateId>(row * width + col); }
  void validate() const;

  /// 15×10 layout: the band is rows 4–5 × cols 6–8, the rest of rows 4–5 is
  /// unsafe, A is the 2×2 bottom-left corner, B the 2×2 top-right corner.
  static GridWorldConfig default_layout();
};

// Grid config file (JSON): { "width", "height", "band": [[row, col]...],
//   "unsafe": [...], "A": [...], "B": [...], "drifts": [2, 1, ...],
//   "boundary": "sink" | "clamp", "drift_on": "current" | "successor" }
GridWorldConfig read_grid_config(std::istream& in);
void write_grid_config(std::ostream& out, const GridWorldConfig& cfg);

/// Inputs left, right, up, down; parameters are the drifts; labels A, B,
/// unsafe. Moves leaving the grid go to a sink labelled unsafe (Sink policy)
/// or stay on the border (Clamp).
systems::Pts gen_gridworld(const GridWorldConfig& cfg);

inline constexpr const char* kGridSpec = "GF A & GF B & G !unsafe";

struct ScalarCaseStudy {
  abstraction::AbstractionConfig config;
  std::string spec;
  std::vector<abstraction::Rational> theta_star;
  abstraction::Rational x0;
};

/// x⁺ = (1+θ1)x + θ2u + θ3 + d on X = [−1,1] with 10 cells, Θ split 2×2×4,
/// D = [−0.1,0.1], U quantized to 11 points, spec G x ≤ 1 ∧ G x ≥ −1.
ScalarCaseStudy gen_scalar_safety();

/// Contiguous runs of the given cells printed as intervals, e.g. "[-0.6,0.6]".
std::string describe_cells(const std::vector<StateId>& cells, const std::vector<abstraction::Interval>& x_cells);

std::string sha256_file(const std::filesystem::path& path);

/// Record of one CLI run that wrote artifacts into `output_dir`.
struct RunManifest {
  std::vector<std::string> command;  // argv without the program name
  std::vector<std::string> inputs;
  std::string spec;
  std::vector<std::uint64_t> seeds;
  std::string config;  // JSON text of the model/partition configuration, if any
  std::string output_dir;
  std::map<std::string, std::string> artifacts;  // file name -> SHA-256 hex
};

void write_manifest(std::ostream& out, const RunManifest& m);
RunManifest read_manifest(std::istream& in);
/// Hashes every regular file in `dir` except the manifest and stats files
/// (stats carry wall-clock times).
std::map<std::string, std::string> hash_artifacts(const std::filesystem::path& dir);

/// Runs the command-line interface; returns the process exit status:
/// 0 success, 1 synthesis infeasible or failed check, 2 input error,
/// 3 internal failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adsyn::frontend
