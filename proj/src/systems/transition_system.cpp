#include <algorithm>
#include <ostream>

#include "adsyn/systems.hpp"

namespace adsyn::systems {

namespace {

std::vector<std::string> numbered(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

void insert_sorted(std::vector<StateId>& v, StateId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

void check_names(const std::vector<std::string>& names, std::size_t n, const char* what) {
  if (names.size() != n) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " name count " +
                                                std::to_string(names.size()) + " != " + std::to_string(n));
  }
}

}  // namespace

TransitionSystem::TransitionSystem(std::size_t num_states, std::size_t num_inputs,
                                   std::vector<std::string> props)
    : num_states_(num_states),
      num_inputs_(num_inputs),
      props_(std::move(props)),
      succ_(num_states * num_inputs),
      labels_(num_states, 0),
      state_names_(numbered("x", num_states)),
      input_names_(numbered("u", num_inputs)) {
  if (props_.size() > 64) throw Error(ErrorKind::InvalidArgument, "at most 64 propositions");
}

void TransitionSystem::add_transition(StateId x, InputId u, StateId next) {
  if (x >= num_states_ || next >= num_states_ || u >= num_inputs_) {
    throw Error(ErrorKind::InvalidArgument, "transition out of range");
  }
  insert_sorted(succ_[static_cast<std::size_t>(x) * num_inputs_ + u], next);
}

void TransitionSystem::set_label(StateId x, Letter labels) { labels_.at(x) = labels; }

bool TransitionSystem::is_nonblocking() const {
  return std::none_of(succ_.begin(), succ_.end(), [](const auto& s) { return s.empty(); });
}

void TransitionSystem::set_state_names(std::vector<std::string> names) {
  check_names(names, num_states_, "state");
  state_names_ = std::move(names);
}

void TransitionSystem::set_input_names(std::vector<std::string> names) {
  check_names(names, num_inputs_, "input");
  input_names_ = std::move(names);
}

Pts::Pts(std::size_t num_states, std::size_t num_inputs, std::size_t num_params,
         std::vector<std::string> props)
    : num_states_(num_states),
      num_inputs_(num_inputs),
      num_params_(num_params),
      props_(std::move(props)),
      gamma_(num_states * num_inputs * num_params),
      labels_(num_states, 0),
      state_names_(numbered("x", num_states)),
      input_names_(numbered("u", num_inputs)),
      param_names_(numbered("theta", num_params)) {
  if (num_params == 0) throw Error(ErrorKind::InvalidModel, "parameter set is empty");
  if (num_params > kMaxParams) {
    throw Error(ErrorKind::InvalidModel, "at most " + std::to_string(kMaxParams) + " parameters");
  }
  if (props_.size() > 64) throw Error(ErrorKind::InvalidArgument, "at most 64 propositions");
}

void Pts::add_transition(StateId x, InputId u, ParamId theta, StateId next) {
  if (x >= num_states_ || next >= num_states_ || u >= num_inputs_ || theta >= num_params_) {
    throw Error(ErrorKind::InvalidArgument, "transition out of range");
  }
  insert_sorted(gamma_[index(x, u, theta)], next);
}

bool Pts::has_transition(StateId x, InputId u, ParamId theta, StateId next) const {
  const auto& s = gamma_[index(x, u, theta)];
  return std::binary_search(s.begin(), s.end(), next);
}

void Pts::set_label(StateId x, Letter labels) { labels_.at(x) = labels; }

bool Pts::is_nonblocking() const {
  return std::none_of(gamma_.begin(), gamma_.end(), [](const auto& s) { return s.empty(); });
}

void Pts::set_state_names(std::vector<std::string> names) {
  check_names(names, num_states_, "state");
  state_names_ = std::move(names);
}

void Pts::set_input_names(std::vector<std::string> names) {
  check_names(names, num_inputs_, "input");
  input_names_ = std::move(names);
}

void Pts::set_param_names(std::vector<std::string> names) {
  check_names(names, num_params_, "parameter");
  param_names_ = std::move(names);
}

TransitionSystem Pts::slice(ParamId theta) const {
  TransitionSystem t(num_states_, num_inputs_, props_);
  for (StateId x = 0; x < num_states_; ++x) {
    t.set_label(x, labels_[x]);
    for (InputId u = 0; u < num_inputs_; ++u) {
      for (StateId n : successors(x, u, theta)) t.add_transition(x, u, n);
    }
  }
  t.set_state_names(state_names_);
  t.set_input_names(input_names_);
  t.set_sink(sink_);
  return t;
}

void write_ts_dot(std::ostream& out, const TransitionSystem& t) {
  out << "digraph ts {\n";
  for (StateId x = 0; x < t.num_states(); ++x) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < t.props().size(); ++i) {
      if ((t.label(x) >> i) & 1U) labels.push_back(t.props()[i]);
    }
    out << "  n" << x << " [label=\"" << t.state_names()[x];
    if (!labels.empty()) out << "\\n" << join_braced(labels);
    out << "\"];\n";
  }
  for (StateId x = 0; x < t.num_states(); ++x) {
    for (InputId u = 0; u < t.num_inputs(); ++u) {
      for (StateId n : t.successors(x, u)) {
        out << "  n" << x << " -> n" << n << " [label=\"" << t.input_names()[u] << "\"];\n";
      }
    }
  }
  out << "}\n";
}

}  // namespace adsyn::systems
