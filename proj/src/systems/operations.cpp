#include <algorithm>

#include "adsyn/systems.hpp"

namespace adsyn::systems {

void Partition::validate(std::size_t num_states) const {
  std::vector<bool> seen(num_states, false);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].empty()) throw Error(ErrorKind::InvalidModel, "cell " + std::to_string(c) + " is empty");
    for (StateId x : cells[c]) {
      if (x >= num_states) throw Error(ErrorKind::InvalidModel, "cell member out of range");
      if (seen[x]) {
        throw Error(ErrorKind::InvalidModel, "state " + std::to_string(x) + " appears in two cells");
      }
      seen[x] = true;
    }
  }
  auto missing = std::find(seen.begin(), seen.end(), false);
  if (missing != seen.end()) {
    throw Error(ErrorKind::InvalidModel,
                "state " + std::to_string(missing - seen.begin()) + " is not covered");
  }
}

std::vector<std::size_t> Partition::cell_index(std::size_t num_states) const {
  validate(num_states);
  std::vector<std::size_t> out(num_states);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (StateId x : cells[c]) out[x] = c;
  }
  return out;
}

TransitionSystem quotient(const TransitionSystem& t, const Partition& q) {
  const auto cell_of = q.cell_index(t.num_states());
  for (std::size_t c = 0; c < q.cells.size(); ++c) {
    const StateId first = q.cells[c].front();
    for (StateId x : q.cells[c]) {
      if (t.label(x) != t.label(first)) {
        throw Error(ErrorKind::NotObservationPreserving,
                    "cell " + std::to_string(c) + " mixes labels of " + t.state_names()[first] +
                        " and " + t.state_names()[x]);
      }
    }
  }

  TransitionSystem out(q.cells.size(), t.num_inputs(), t.props());
  std::vector<std::string> names;
  for (std::size_t c = 0; c < q.cells.size(); ++c) {
    out.set_label(static_cast<StateId>(c), t.label(q.cells[c].front()));
    std::vector<std::string> members;
    for (StateId x : q.cells[c]) members.push_back(t.state_names()[x]);
    names.push_back(join_braced(members));
    for (StateId x : q.cells[c]) {
      for (InputId u = 0; u < t.num_inputs(); ++u) {
        for (StateId next : t.successors(x, u)) {
          out.add_transition(static_cast<StateId>(c), u, static_cast<StateId>(cell_of[next]));
        }
      }
    }
  }
  out.set_state_names(std::move(names));
  out.set_input_names(t.input_names());
  if (t.sink()) out.set_sink(static_cast<StateId>(cell_of[*t.sink()]));
  return out;
}

TransitionSystem robustify(const Pts& p) {
  TransitionSystem out(p.num_states(), p.num_inputs(), p.props());
  for (StateId x = 0; x < p.num_states(); ++x) {
    out.set_label(x, p.label(x));
    for (InputId u = 0; u < p.num_inputs(); ++u) {
      for (ParamId th = 0; th < p.num_params(); ++th) {
        for (StateId next : p.successors(x, u, th)) out.add_transition(x, u, next);
      }
    }
  }
  out.set_state_names(p.state_names());
  out.set_input_names(p.input_names());
  out.set_sink(p.sink());
  return out;
}

LabelMap::LabelMap(const std::vector<std::string>& from, const std::vector<std::string>& to) {
  for (const auto& name : from) {
    auto it = std::find(to.begin(), to.end(), name);
    if (it == to.end()) {
      throw Error(ErrorKind::AlphabetMismatch, "proposition '" + name + "' is not in the automaton alphabet");
    }
    target_bit_.push_back(static_cast<int>(it - to.begin()));
  }
}

Letter LabelMap::operator()(Letter a) const {
  Letter out = 0;
  for (std::size_t i = 0; i < target_bit_.size(); ++i) {
    if ((a >> i) & 1U) out |= Letter{1} << target_bit_[i];
  }
  return out;
}

Letter letter_from_names(const std::vector<std::string>& names, const std::vector<std::string>& props) {
  Letter out = 0;
  for (const auto& name : names) {
    auto it = std::find(props.begin(), props.end(), name);
    if (it == props.end()) throw Error(ErrorKind::InvalidModel, "unknown proposition '" + name + "'");
    out |= Letter{1} << (it - props.begin());
  }
  return out;
}

std::vector<std::string> names_from_letter(Letter a, const std::vector<std::string>& props) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < props.size(); ++i) {
    if ((a >> i) & 1U) out.push_back(props[i]);
  }
  return out;
}

}  // namespace adsyn::systems
