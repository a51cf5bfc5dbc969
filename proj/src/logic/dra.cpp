#include <limits>

#include "adsyn/logic.hpp"

namespace adsyn::logic {

Dra::Dra(std::vector<std::string> props, std::size_t num_states, StateId initial,
         std::vector<StateId> delta, std::vector<RabinPair> pairs)
    : props_(std::move(props)),
      num_states_(num_states),
      initial_(initial),
      delta_(std::move(delta)),
      pairs_(std::move(pairs)) {
  if (props_.size() > kMaxProps) {
    throw Error(ErrorKind::InvalidArgument,
                "at most " + std::to_string(kMaxProps) + " propositions are supported");
  }
  if (num_states_ == 0) throw Error(ErrorKind::InvalidModel, "automaton has no states");
  if (initial_ >= num_states_) {
    throw Error(ErrorKind::DanglingState, "initial state " + std::to_string(initial_));
  }
  if (delta_.size() != num_states_ * num_letters()) {
    throw Error(ErrorKind::NonTotal, "transition table has " + std::to_string(delta_.size()) +
                                         " entries, expected " +
                                         std::to_string(num_states_ * num_letters()));
  }
  for (StateId t : delta_) {
    if (t >= num_states_) throw Error(ErrorKind::DanglingState, "transition target " + std::to_string(t));
  }
  if (pairs_.empty()) throw Error(ErrorKind::InvalidModel, "acceptance condition has no pairs");
  for (const auto& pair : pairs_) {
    std::vector<bool> fin(num_states_, false), inf(num_states_, false);
    for (StateId s : pair.fin) {
      if (s >= num_states_) throw Error(ErrorKind::DanglingState, "pair state " + std::to_string(s));
      fin[s] = true;
    }
    for (StateId s : pair.inf) {
      if (s >= num_states_) throw Error(ErrorKind::DanglingState, "pair state " + std::to_string(s));
      inf[s] = true;
    }
    fin_mask_.push_back(std::move(fin));
    inf_mask_.push_back(std::move(inf));
  }
}

StateId Dra::run(StateId from, std::span<const Letter> word) const {
  StateId s = from;
  for (Letter a : word) s = next(s, a);
  return s;
}

AcceptanceChecker::AcceptanceChecker(const Dra& dra) : dra_(dra) {}

bool AcceptanceChecker::accepts(const LassoWord& w) {
  StateId s = dra_.run(dra_.initial(), w.prefix);
  bool result = accepts_from(s, w.cycle);
  steps_ += w.prefix.size();
  return result;
}

bool AcceptanceChecker::accepts_from(StateId from, std::span<const Letter> cycle) {
  if (cycle.empty()) throw Error(ErrorKind::InvalidArgument, "lasso cycle must be non-empty");
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  const std::size_t period = cycle.size();
  first_seen_.assign(dra_.num_states() * period, kUnseen);
  trail_.clear();

  // Walk (state, cycle position) pairs until one repeats; the states between
  // the two occurrences are exactly Inf(run).
  StateId s = from;
  std::size_t pos = 0;
  std::size_t step = 0;
  while (first_seen_[s * period + pos] == kUnseen) {
    first_seen_[s * period + pos] = static_cast<std::uint32_t>(step);
    trail_.push_back(s);
    s = dra_.next(s, cycle[pos]);
    pos = (pos + 1) % period;
    ++step;
  }
  steps_ = step;
  const std::size_t loop_start = first_seen_[s * period + pos];

  for (std::size_t i = 0; i < dra_.pairs().size(); ++i) {
    bool hits_fin = false, hits_inf = false;
    for (std::size_t k = loop_start; k < trail_.size(); ++k) {
      hits_fin = hits_fin || dra_.in_fin(i, trail_[k]);
      hits_inf = hits_inf || dra_.in_inf(i, trail_[k]);
    }
    if (!hits_fin && hits_inf) return true;
  }
  return false;
}

bool accepts(const Dra& dra, const LassoWord& w) {
  AcceptanceChecker checker(dra);
  return checker.accepts(w);
}

}  // namespace adsyn::logic
