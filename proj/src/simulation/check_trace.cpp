#include <algorithm>

#include "adsyn/simulation.hpp"

namespace adsyn::simulation {

bool TraceReport::ok(std::size_t allowed_gap) const {
  return safety_violations.empty() && unmet_reach.empty() &&
         std::all_of(recurrence.begin(), recurrence.end(),
                     [&](const RecurrenceReport& r) { return r.visits > 0 && r.max_gap <= allowed_gap; });
}

TraceReport check_trace(const std::vector<Letter>& labels, const logic::LtlFormula& f,
                        const std::vector<std::string>& props) {
  const logic::Fragment frag = logic::split_fragment(f, props);
  TraceReport report;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    for (const auto& b : frag.safety) {
      if (!logic::holds(b, labels[k])) {
        report.safety_violations.push_back(k);
        break;
      }
    }
  }
  for (const auto& c : frag.recurrence) {
    RecurrenceReport r{logic::to_string(c, props)};
    std::size_t last = 0;
    bool seen = false;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (!logic::holds(c, labels[k])) continue;
      r.max_gap = std::max(r.max_gap, seen ? k - last : k);
      last = k;
      seen = true;
      ++r.visits;
    }
    const std::size_t end = labels.empty() ? 0 : labels.size() - 1;
    r.max_gap = std::max(r.max_gap, seen ? end - last : labels.size());
    report.recurrence.push_back(std::move(r));
  }
  for (const auto& d : frag.reach) {
    const bool met = std::any_of(labels.begin(), labels.end(), [&](Letter a) { return logic::holds(d, a); });
    if (!met) report.unmet_reach.push_back(logic::to_string(d, props));
  }
  return report;
}

TraceReport check_trace(const Trace& trace, const logic::LtlFormula& f) {
  std::vector<Letter> labels;
  labels.reserve(trace.steps.size());
  for (const auto& st : trace.steps) labels.push_back(st.labels);
  return check_trace(labels, f, trace.props);
}

}  // namespace adsyn::simulation
