#pragma once

#include <span>

#include "adsyn/common.hpp"
#include "adsyn/systems.hpp"

namespace adsyn::estimation {

/// All parameters consistent with the observed history:
/// { θ | x_{i+1} ∈ γ(x_i, u_i, θ) for every i }. Requires
/// states.size() == inputs.size() + 1. Throws EmptyEstimate if no parameter
/// explains the history.
ParamSet estimate_batch(const systems::Pts& p, std::span<const StateId> states,
                        std::span<const InputId> inputs);

/// One recursive update: { θ ∈ v | next ∈ γ(x, u, θ) }. Throws EmptyEstimate
/// when the result is empty.
ParamSet estimate_step(const systems::Pts& p, ParamSet v, StateId x, InputId u, StateId next);

/// Same as estimate_step but returns the (possibly empty) set without throwing.
ParamSet consistent_params(const systems::Pts& p, ParamSet v, StateId x, InputId u, StateId next);

}  // namespace adsyn::estimation
