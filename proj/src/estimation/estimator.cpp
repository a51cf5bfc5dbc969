#include "adsyn/estimation.hpp"

namespace adsyn::estimation {

ParamSet consistent_params(const systems::Pts& p, ParamSet v, StateId x, InputId u, StateId next) {
  ParamSet out;
  for (ParamId th : v.ids()) {
    if (p.has_transition(x, u, th, next)) out.insert(th);
  }
  return out;
}

ParamSet estimate_step(const systems::Pts& p, ParamSet v, StateId x, InputId u, StateId next) {
  if (v.empty()) throw Error(ErrorKind::InvalidArgument, "estimate_step on an empty set");
  ParamSet out = consistent_params(p, v, x, u, next);
  if (out.empty()) {
    throw Error(ErrorKind::EmptyEstimate, "no parameter explains " + p.state_names()[x] + " --" +
                                              p.input_names()[u] + "--> " + p.state_names()[next]);
  }
  return out;
}

ParamSet estimate_batch(const systems::Pts& p, std::span<const StateId> states,
                        std::span<const InputId> inputs) {
  if (states.size() != inputs.size() + 1) {
    throw Error(ErrorKind::InvalidArgument, "history needs exactly one more state than inputs");
  }
  ParamSet out;
  for (ParamId th = 0; th < p.num_params(); ++th) {
    bool consistent = true;
    for (std::size_t i = 0; i < inputs.size() && consistent; ++i) {
      consistent = p.has_transition(states[i], inputs[i], th, states[i + 1]);
    }
    if (consistent) out.insert(th);
  }
  if (out.empty()) {
    throw Error(ErrorKind::EmptyEstimate, "observed history is inconsistent with every parameter");
  }
  return out;
}

}  // namespace adsyn::estimation
