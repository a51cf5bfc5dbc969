#include <algorithm>

#include "adsyn/frontend.hpp"

namespace adsyn::frontend {

using abstraction::Interval;
using abstraction::parse_decimal;

ScalarCaseStudy gen_scalar_safety() {
  ScalarCaseStudy cs;
  auto& cfg = cs.config;
  cfg.system.x_domain = Interval(-1, 1);
  cfg.system.theta_domain = {Interval(parse_decimal("-0.5"), parse_decimal("0.5")), Interval(1, 2),
                             Interval(parse_decimal("-0.2"), parse_decimal("0.2"))};
  cfg.system.disturbance = Interval(parse_decimal("-0.1"), parse_decimal("0.1"));
  cfg.system.input_domain = Interval(-1, 1);
  cfg.x_cells = 10;
  cfg.theta_cells = {2, 2, 4};
  cfg.inputs = abstraction::quantize(cfg.system.input_domain, 11);
  cfg.predicates = {{"x_le_1", abstraction::Predicate::Op::Le, 1},
                    {"x_ge_m1", abstraction::Predicate::Op::Ge, -1}};
  cs.spec = "G x_le_1 & G x_ge_m1";
  cs.theta_star = {parse_decimal("0.45"), parse_decimal("1.11"), parse_decimal("-0.18")};
  cs.x0 = 0;
  return cs;
}

std::string describe_cells(const std::vector<StateId>& cells, const std::vector<abstraction::Interval>& x_cells) {
  std::vector<StateId> sorted;
  for (StateId c : cells) {
    if (c < x_cells.size()) sorted.push_back(c);
  }
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty()) return "empty";
  std::string out;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[j] + 1) ++j;
    if (!out.empty()) out += " u ";
    out += abstraction::to_string(Interval(x_cells[sorted[i]].lo, x_cells[sorted[j]].hi));
    i = j + 1;
  }
  return out;
}

}  // namespace adsyn::frontend
