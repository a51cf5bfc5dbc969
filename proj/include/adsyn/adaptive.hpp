#pragma once

#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "adsyn/common.hpp"
#include "adsyn/systems.hpp"

namespace adsyn::adaptive {

/// A state of the adaptive transition system: a PTS state paired with the
/// set of parameters still consistent with the history that led there.
struct AtsNode {
  StateId x = 0;
  ParamSet params;

  friend bool operator==(const AtsNode&, const AtsNode&) = default;
  friend auto operator<=>(const AtsNode&, const AtsNode&) = default;
};

struct AtsNodeHash {
  std::size_t operator()(const AtsNode& n) const noexcept {
    std::uint64_t h = n.params.bits() * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(n.x) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// Reachable part of X × (2^Θ \ ∅), stored as an ordinary transition system
/// whose state i is nodes()[i]. Node ids follow FIFO discovery order from the
/// seeds (x, Θ) for every x, then (x, {θ}) for every x and θ; node x is (x, Θ).
class Ats {
 public:
  Ats(systems::TransitionSystem system, std::vector<AtsNode> nodes, std::size_t num_params,
      std::vector<std::string> param_names);

  const systems::TransitionSystem& system() const { return system_; }
  const std::vector<AtsNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t num_params() const { return num_params_; }
  const std::vector<std::string>& param_names() const { return param_names_; }
  std::optional<StateId> find(const AtsNode& n) const;

 private:
  systems::TransitionSystem system_;
  std::vector<AtsNode> nodes_;
  std::unordered_map<AtsNode, StateId, AtsNodeHash> index_;
  std::size_t num_params_;
  std::vector<std::string> param_names_;
};

/// "x,{theta...}" as used in DOT and JSON exports.
std::string node_label(const AtsNode& n, const std::vector<std::string>& state_names,
                       const std::vector<std::string>& param_names);

/// Successors of (x, ϑ) under u: every x' reachable under some θ ∈ ϑ, paired
/// with { θ ∈ ϑ | x' ∈ γ(x, u, θ) }. Sorted by x'.
std::vector<AtsNode> ats_successors(const systems::Pts& p, const AtsNode& node, InputId u);

/// Worklist closure from the seeds. Requires a non-blocking PTS.
Ats build_ats(const systems::Pts& p);

void write_ats_dot(std::ostream& out, const Ats& ats);
void write_ats_json(std::ostream& out, const Ats& ats);

}  // namespace adsyn::adaptive
