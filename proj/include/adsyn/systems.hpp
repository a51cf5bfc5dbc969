#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adsyn/common.hpp"

namespace adsyn::systems {

/// Finite non-deterministic transition system (X, U, β, Π, O) over dense ids.
/// Successor sets are kept sorted and duplicate-free.
class TransitionSystem {
 public:
  TransitionSystem(std::size_t num_states, std::size_t num_inputs, std::vector<std::string> props);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_inputs() const { return num_inputs_; }
  const std::vector<std::string>& props() const { return props_; }

  void add_transition(StateId x, InputId u, StateId next);
  std::span<const StateId> successors(StateId x, InputId u) const {
    return succ_[static_cast<std::size_t>(x) * num_inputs_ + u];
  }

  void set_label(StateId x, Letter labels);
  Letter label(StateId x) const { return labels_[x]; }

  bool is_nonblocking() const;

  std::optional<StateId> sink() const { return sink_; }
  void set_sink(std::optional<StateId> sink) { sink_ = sink; }

  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& input_names() const { return input_names_; }
  void set_state_names(std::vector<std::string> names);
  void set_input_names(std::vector<std::string> names);

 private:
  std::size_t num_states_;
  std::size_t num_inputs_;
  std::vector<std::string> props_;
  std::vector<std::vector<StateId>> succ_;
  std::vector<Letter> labels_;
  std::optional<StateId> sink_;
  std::vector<std::string> state_names_;
  std::vector<std::string> input_names_;
};

/// Parametric transition system (X, U, Θ, γ, Π, O).
class Pts {
 public:
  Pts(std::size_t num_states, std::size_t num_inputs, std::size_t num_params,
      std::vector<std::string> props);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_inputs() const { return num_inputs_; }
  std::size_t num_params() const { return num_params_; }
  const std::vector<std::string>& props() const { return props_; }
  ParamSet all_params() const { return ParamSet::full(num_params_); }

  void add_transition(StateId x, InputId u, ParamId theta, StateId next);
  std::span<const StateId> successors(StateId x, InputId u, ParamId theta) const {
    return gamma_[index(x, u, theta)];
  }
  bool has_transition(StateId x, InputId u, ParamId theta, StateId next) const;

  void set_label(StateId x, Letter labels);
  Letter label(StateId x) const { return labels_[x]; }

  bool is_nonblocking() const;

  std::optional<StateId> sink() const { return sink_; }
  void set_sink(std::optional<StateId> sink) { sink_ = sink; }

  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& input_names() const { return input_names_; }
  const std::vector<std::string>& param_names() const { return param_names_; }
  void set_state_names(std::vector<std::string> names);
  void set_input_names(std::vector<std::string> names);
  void set_param_names(std::vector<std::string> names);

  /// The θ-slice as a plain transition system.
  TransitionSystem slice(ParamId theta) const;

 private:
  std::size_t index(StateId x, InputId u, ParamId theta) const {
    return (static_cast<std::size_t>(x) * num_inputs_ + u) * num_params_ + theta;
  }

  std::size_t num_states_;
  std::size_t num_inputs_;
  std::size_t num_params_;
  std::vector<std::string> props_;
  std::vector<std::vector<StateId>> gamma_;
  std::vector<Letter> labels_;
  std::optional<StateId> sink_;
  std::vector<std::string> state_names_;
  std::vector<std::string> input_names_;
  std::vector<std::string> param_names_;
};

/// Finite discrete-time dynamics x+ = F(x, u, θ, d) with Boolean outputs.
/// `update` returns nullopt when the successor leaves the state domain.
struct DynamicsSpec {
  std::size_t num_states = 0;
  std::size_t num_inputs = 0;
  std::size_t num_params = 0;
  std::size_t num_disturbances = 0;
  std::function<std::optional<StateId>(StateId, InputId, ParamId, std::size_t)> update;
  std::vector<std::pair<std::string, std::function<bool(StateId)>>> outputs;
  /// Propositions that hold at the out-of-domain sink (names from `outputs`).
  std::vector<std::string> sink_labels;
  std::vector<std::string> state_names;
  std::vector<std::string> input_names;
  std::vector<std::string> param_names;
};

Pts embed(const DynamicsSpec& dyn);

/// Completes blocking (x, u[, θ]) with a sink state that self-loops under every
/// input and carries `sink_labels`. An existing sink is reused; a system that
/// is already non-blocking is returned unchanged.
TransitionSystem make_nonblocking(const TransitionSystem& t, Letter sink_labels = 0);
Pts make_nonblocking(const Pts& p, Letter sink_labels = 0);

struct Partition {
  std::vector<std::vector<StateId>> cells;

  /// Throws InvalidModel unless cells are non-empty, disjoint and cover [0, n).
  void validate(std::size_t num_states) const;
  std::vector<std::size_t> cell_index(std::size_t num_states) const;
};

TransitionSystem quotient(const TransitionSystem& t, const Partition& q);

/// Parameter-oblivious flattening: β(x,u) = ⋃_θ γ(x,u,θ).
TransitionSystem robustify(const Pts& p);

/// Maps a label of one proposition list into another by name. Throws
/// AlphabetMismatch if a source proposition has no counterpart.
class LabelMap {
 public:
  LabelMap(const std::vector<std::string>& from, const std::vector<std::string>& to);
  Letter operator()(Letter a) const;

 private:
  std::vector<int> target_bit_;
};

Letter letter_from_names(const std::vector<std::string>& names, const std::vector<std::string>& props);
std::vector<std::string> names_from_letter(Letter a, const std::vector<std::string>& props);

// PTS model file (JSON):
//   { "states": [...], "inputs": [...], "params": [...], "props": [...],
//     "labels": { state: [props] }, "sink": state?, "sink_labels": [props]?,
//     "transitions": [ { "x", "u", "theta", "successors": [...] } ] }
// Omitted (x, u, θ) records are blocking; `complete` routes them to a sink.
struct PtsReadOptions {
  bool complete = true;
};
Pts read_pts_json(std::istream& in, const PtsReadOptions& options = {});
void write_pts_json(std::ostream& out, const Pts& p);

void write_ts_dot(std::ostream& out, const TransitionSystem& t);

}  // namespace adsyn::systems
