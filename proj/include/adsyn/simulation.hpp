#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "adsyn/abstraction.hpp"
#include "adsyn/logic.hpp"
#include "adsyn/synthesis.hpp"
#include "adsyn/systems.hpp"

namespace adsyn::simulation {

/// One possible result of applying an input to the plant.
struct Outcome {
  StateId cell = 0;              // successor state of the finite model
  StateId next_state = 0;        // finite plants: concrete successor
  abstraction::Rational next_x;  // scalar plants: concrete successor
  std::string disturbance;
  double margin = 0;  // distance of the successor to the domain boundary
};

/// Ground-truth system driven by the controller. The finite model (a PTS, or
/// the quotient of an infinite system) is what the controller and estimator see.
class Plant {
 public:
  virtual ~Plant() = default;

  virtual const systems::Pts& model() const = 0;
  virtual StateId cell() const = 0;
  virtual std::string state_text() const = 0;
  /// Model parameter that contains the hidden ground truth.
  virtual ParamId true_param() const = 0;

  virtual Outcome sample(InputId u, std::mt19937_64& rng) const = 0;
  /// Representative outcomes for the adversarial disturbance mode.
  virtual std::vector<Outcome> extremes(InputId u) const = 0;
  virtual void commit(const Outcome& o) = 0;
};

/// Finite PTS plant with a hidden parameter; successors are the
/// non-deterministic choices of γ(x, u, θ*).
class FinitePlant : public Plant {
 public:
  FinitePlant(const systems::Pts& p, ParamId theta_star, StateId x0);

  const systems::Pts& model() const override { return p_; }
  StateId cell() const override { return x_; }
  std::string state_text() const override { return p_.state_names()[x_]; }
  ParamId true_param() const override { return theta_; }
  Outcome sample(InputId u, std::mt19937_64& rng) const override;
  std::vector<Outcome> extremes(InputId u) const override;
  void commit(const Outcome& o) override { x_ = o.next_state; }

 private:
  const systems::Pts& p_;
  ParamId theta_;
  StateId x_;
};

/// The scalar affine system in exact arithmetic, observed through its
/// quotient. Uniform disturbances are drawn from a 2·10^6-step grid on D.
class ScalarPlant : public Plant {
 public:
  ScalarPlant(const abstraction::ScalarAbstraction& abs, const abstraction::ScalarParametricAffine& sys,
              std::vector<abstraction::Rational> theta_star, abstraction::Rational x0);

  const systems::Pts& model() const override { return abs_.pts; }
  StateId cell() const override;
  /// Rounded to 12 significant digits; the state itself stays exact.
  std::string state_text() const override;
  ParamId true_param() const override { return theta_cell_; }
  Outcome sample(InputId u, std::mt19937_64& rng) const override;
  std::vector<Outcome> extremes(InputId u) const override;
  void commit(const Outcome& o) override { x_ = o.next_x; }

  const abstraction::Rational& x() const { return x_; }

 private:
  Outcome outcome(InputId u, const abstraction::Rational& d) const;

  const abstraction::ScalarAbstraction& abs_;
  const abstraction::ScalarParametricAffine& sys_;
  std::vector<abstraction::Rational> theta_;
  ParamId theta_cell_;
  abstraction::Rational x_;
};

enum class DisturbanceMode { Uniform, Adversarial };

struct SimulationConfig {
  std::size_t horizon = 100;
  std::uint64_t seed = 0;
  DisturbanceMode mode = DisturbanceMode::Uniform;
};

struct TraceStep {
  std::size_t k = 0;
  std::string x;
  StateId cell = 0;
  ParamSet theta_set;
  StateId dra_state = 0;
  std::optional<InputId> u;  // absent on the final row
  std::string d;
  Letter labels = 0;
};

struct Trace {
  std::vector<TraceStep> steps;
  std::vector<std::string> props;
  std::vector<std::string> param_names;
  std::vector<std::string> input_names;
};

/// Closed loop: at each step the controller is queried with (cell, ϑ, s), the
/// plant moves, ϑ is refined on the model and s reads the label of the cell
/// just left. Throws WinningRegionExit if (cell, ϑ, s) is ever losing.
Trace simulate(Plant& plant, const synthesis::AdaptiveController& controller, const logic::Dra& dra,
               const SimulationConfig& cfg);

// CSV columns: k,x,cell,theta_set,dra_state,u,d,labels
void write_trace_csv(std::ostream& out, const Trace& trace);

struct RecurrenceReport {
  std::string target;
  std::size_t visits = 0;
  /// Longest stretch without a visit: the first visit index, the gaps between
  /// consecutive visits, and the tail after the last one.
  std::size_t max_gap = 0;
};

struct TraceReport {
  std::vector<std::size_t> safety_violations;  // step indices
  std::vector<RecurrenceReport> recurrence;
  std::vector<std::string> unmet_reach;
  bool ok(std::size_t allowed_gap) const;
};

/// Finite-horizon monitor for fragment formulas (see logic::split_fragment).
/// `labels[k]` is the letter seen at step k over `props`.
TraceReport check_trace(const std::vector<Letter>& labels, const logic::LtlFormula& f,
                        const std::vector<std::string>& props);
TraceReport check_trace(const Trace& trace, const logic::LtlFormula& f);

}  // namespace adsyn::simulation
