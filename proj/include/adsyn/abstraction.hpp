#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "adsyn/common.hpp"
#include "adsyn/systems.hpp"

namespace adsyn::abstraction {

using Rational = boost::multiprecision::mpq_rational;

/// Exact value of "-0.25", "3", "1.5e-2" or "1/3". Throws Parse.
Rational parse_decimal(std::string_view text);
/// Shortest exact decimal when one exists, "p/q" otherwise.
std::string to_decimal_string(const Rational& r);

/// Closed interval [lo, hi], lo ≤ hi.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational lo_, Rational hi_);

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  /// Closed-set intersection: touching at one endpoint counts.
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  Rational width() const { return hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& i);

using Box = std::vector<Interval>;

std::string to_string(const Box& b);
bool box_contains(const Box& b, const std::vector<Rational>& point);

/// x⁺ = (1 + θ1)·x + θ2·u + θ3 + d
struct ScalarParametricAffine {
  Interval x_domain;
  Box theta_domain;  // θ1, θ2, θ3
  Interval disturbance;
  Interval input_domain;

  void validate() const;
  Rational step(const Rational& x, const std::vector<Rational>& theta, const Rational& u,
                const Rational& d) const;
};

/// n closed cells of equal width; neighbours share endpoints. Throws
/// InvalidArgument for n = 0.
std::vector<Interval> grid_partition(const Interval& domain, std::size_t n);
/// Product grid, first dimension varying slowest.
std::vector<Box> grid_partition(const Box& domain, const std::vector<std::size_t>& counts);
/// n evenly spaced points from lo to hi inclusive (n = 1 gives lo).
std::vector<Rational> quantize(const Interval& range, std::size_t n);

/// Exact hull of the successors of qx under every θ ∈ qtheta and d ∈ D.
Interval post_box(const ScalarParametricAffine& sys, const Interval& qx, const Box& qtheta, const Rational& u);

/// Output predicate  x <= threshold  or  x >= threshold.
struct Predicate {
  enum class Op { Le, Ge };
  std::string name;
  Op op = Op::Le;
  Rational threshold;

  bool holds(const Rational& x) const { return op == Op::Le ? x <= threshold : x >= threshold; }
};

struct AbstractionConfig {
  ScalarParametricAffine system;
  std::size_t x_cells = 1;
  std::vector<std::size_t> theta_cells{1, 1, 1};
  std::vector<Rational> inputs;
  std::vector<Predicate> predicates;
  std::vector<std::string> sink_labels;

  void validate() const;
};

// Config file (JSON); numbers may be given as strings for exactness:
//   { "x_domain": [lo, hi], "theta_domain": [[lo, hi] x3], "disturbance": [lo, hi],
//     "input_domain": [lo, hi], "partition": { "x": n, "theta": [n1, n2, n3] },
//     "inputs": [u...] | { "count": n },
//     "predicates": [ { "name", "op": "<=" | ">=", "threshold" } ], "sink_labels": [names] }
AbstractionConfig read_abstraction_config(std::istream& in);
void write_abstraction_config(std::ostream& out, const AbstractionConfig& cfg);

struct ScalarAbstraction {
  systems::Pts pts;
  std::vector<Interval> x_cells;
  std::vector<Box> theta_cells;
  std::vector<Rational> inputs;
  StateId sink = 0;

  /// Cell of a concrete state; a shared endpoint goes to the lower cell.
  /// nullopt outside the state domain.
  std::optional<StateId> cell_of(const Rational& x) const;
  /// Parameter cell containing θ (lowest index on shared faces).
  std::optional<ParamId> theta_cell_of(const std::vector<Rational>& theta) const;
  std::optional<InputId> input_index(const Rational& u) const;
};

/// Quotient PTS over the grid cells plus an out-of-domain sink:
/// q' ∈ γ(q, u, qθ) iff Post(q, qθ, u) meets q'; sink iff Post leaves X.
/// Throws NotObservationPreserving when a cell straddles a predicate.
ScalarAbstraction build_quotient_pts(const AbstractionConfig& cfg);

}  // namespace adsyn::abstraction
