#include "adsyn/systems.hpp"

namespace adsyn::systems {

Pts embed(const DynamicsSpec& dyn) {
  if (dyn.num_params == 0) throw Error(ErrorKind::InvalidModel, "parameter domain is empty");
  if (dyn.num_disturbances == 0) throw Error(ErrorKind::InvalidModel, "disturbance domain is empty");
  if (!dyn.update) throw Error(ErrorKind::InvalidModel, "missing update map");

  std::vector<std::string> props;
  for (const auto& [name, _] : dyn.outputs) props.push_back(name);
  const Letter sink_labels = letter_from_names(dyn.sink_labels, props);

  // Out-of-domain successors go to one extra state appended after X.
  bool needs_sink = false;
  std::vector<std::vector<StateId>> image(dyn.num_states * dyn.num_inputs * dyn.num_params);
  for (StateId x = 0; x < dyn.num_states; ++x) {
    for (InputId u = 0; u < dyn.num_inputs; ++u) {
      for (ParamId th = 0; th < dyn.num_params; ++th) {
        auto& out = image[(static_cast<std::size_t>(x) * dyn.num_inputs + u) * dyn.num_params + th];
        for (std::size_t d = 0; d < dyn.num_disturbances; ++d) {
          auto next = dyn.update(x, u, th, d);
          if (next && *next >= dyn.num_states) {
            throw Error(ErrorKind::InvalidModel, "update map returned state " + std::to_string(*next));
          }
          if (!next) needs_sink = true;
          out.push_back(next ? *next : static_cast<StateId>(dyn.num_states));
        }
      }
    }
  }

  const std::size_t n = dyn.num_states + (needs_sink ? 1 : 0);
  Pts p(n, dyn.num_inputs, dyn.num_params, props);
  for (StateId x = 0; x < dyn.num_states; ++x) {
    Letter label = 0;
    for (std::size_t i = 0; i < dyn.outputs.size(); ++i) {
      if (dyn.outputs[i].second(x)) label |= Letter{1} << i;
    }
    p.set_label(x, label);
    for (InputId u = 0; u < dyn.num_inputs; ++u) {
      for (ParamId th = 0; th < dyn.num_params; ++th) {
        for (StateId next : image[(static_cast<std::size_t>(x) * dyn.num_inputs + u) * dyn.num_params + th]) {
          p.add_transition(x, u, th, next);
        }
      }
    }
  }
  std::vector<std::string> state_names = dyn.state_names;
  if (needs_sink) {
    const auto sink = static_cast<StateId>(dyn.num_states);
    p.set_label(sink, sink_labels);
    for (InputId u = 0; u < dyn.num_inputs; ++u) {
      for (ParamId th = 0; th < dyn.num_params; ++th) p.add_transition(sink, u, th, sink);
    }
    p.set_sink(sink);
    if (!state_names.empty()) state_names.push_back("sink");
  }
  if (!state_names.empty()) p.set_state_names(std::move(state_names));
  if (!dyn.input_names.empty()) p.set_input_names(dyn.input_names);
  if (!dyn.param_names.empty()) p.set_param_names(dyn.param_names);
  return p;
}

TransitionSystem make_nonblocking(const TransitionSystem& t, Letter sink_labels) {
  if (t.is_nonblocking()) return t;
  const bool reuse = t.sink().has_value();
  const std::size_t n = t.num_states() + (reuse ? 0 : 1);
  const StateId sink = reuse ? *t.sink() : static_cast<StateId>(t.num_states());

  TransitionSystem out(n, t.num_inputs(), t.props());
  for (StateId x = 0; x < t.num_states(); ++x) {
    out.set_label(x, t.label(x));
    for (InputId u = 0; u < t.num_inputs(); ++u) {
      auto succ = t.successors(x, u);
      if (succ.empty()) out.add_transition(x, u, sink);
      for (StateId next : succ) out.add_transition(x, u, next);
    }
  }
  if (!reuse) {
    out.set_label(sink, sink_labels);
    for (InputId u = 0; u < t.num_inputs(); ++u) out.add_transition(sink, u, sink);
  }
  std::vector<std::string> names = t.state_names();
  if (!reuse) names.push_back("sink");
  out.set_state_names(std::move(names));
  out.set_input_names(t.input_names());
  out.set_sink(sink);
  return out;
}

Pts make_nonblocking(const Pts& p, Letter sink_labels) {
  if (p.is_nonblocking()) return p;
  const bool reuse = p.sink().has_value();
  const std::size_t n = p.num_states() + (reuse ? 0 : 1);
  const StateId sink = reuse ? *p.sink() : static_cast<StateId>(p.num_states());

  Pts out(n, p.num_inputs(), p.num_params(), p.props());
  for (StateId x = 0; x < p.num_states(); ++x) {
    out.set_label(x, p.label(x));
    for (InputId u = 0; u < p.num_inputs(); ++u) {
      for (ParamId th = 0; th < p.num_params(); ++th) {
        auto succ = p.successors(x, u, th);
        if (succ.empty()) out.add_transition(x, u, th, sink);
        for (StateId next : succ) out.add_transition(x, u, th, next);
      }
    }
  }
  if (!reuse) {
    out.set_label(sink, sink_labels);
    for (InputId u = 0; u < p.num_inputs(); ++u) {
      for (ParamId th = 0; th < p.num_params(); ++th) out.add_transition(sink, u, th, sink);
    }
  }
  std::vector<std::string> names = p.state_names();
  if (!reuse) names.push_back("sink");
  out.set_state_names(std::move(names));
  out.set_input_names(p.input_names());
  out.set_param_names(p.param_names());
  out.set_sink(sink);
  return out;
}

}  // namespace adsyn::systems
