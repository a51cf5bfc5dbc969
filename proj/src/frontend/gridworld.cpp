#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "adsyn/frontend.hpp"

namespace adsyn::frontend {

using nlohmann::json;

namespace {

enum Move { kLeft, kRight, kUp, kDown };

std::set<StateId> as_set(const std::vector<StateId>& v) { return {v.begin(), v.end()}; }

}  // namespace

void GridWorldConfig::validate() const {
  if (width == 0 || height == 0) throw Error(ErrorKind::InvalidModel, "grid needs at least one cell");
  if (drifts.empty()) throw Error(ErrorKind::InvalidModel, "no drift values");
  if (drifts.size() > kMaxParams) throw Error(ErrorKind::InvalidModel, "too many drift values");
  const std::size_t n = width * height;
  for (const auto* region : {&band, &unsafe, &region_a, &region_b}) {
    for (StateId c : *region) {
      if (c >= n) throw Error(ErrorKind::InvalidModel, "cell " + std::to_string(c) + " outside the grid");
    }
  }
  const auto bad = as_set(unsafe);
  auto overlap = [&](const std::vector<StateId>& region, const char* name) {
    for (StateId c : region) {
      if (bad.count(c)) {
        throw Error(ErrorKind::InvalidModel,
                    std::string("region ") + name + " overlaps unsafe cell " + std::to_string(c));
      }
    }
  };
  overlap(region_a, "A");
  overlap(region_b, "B");
  overlap(band, "band");
  const auto a = as_set(region_a);
  for (StateId c : region_b) {
    if (a.count(c)) throw Error(ErrorKind::InvalidModel, "regions A and B overlap at cell " + std::to_string(c));
  }
}

GridWorldConfig GridWorldConfig::default_layout() {
  GridWorldConfig cfg;
  cfg.width = 15;
  cfg.height = 10;
  cfg.drifts = {2, 1, 0, -1, -2};
  for (std::size_t row = 4; row <= 5; ++row) {
    for (std::size_t col = 0; col < cfg.width; ++col) {
      if (col >= 6 && col <= 8) {
        cfg.band.push_back(cfg.cell(row, col));
      } else {
        cfg.unsafe.push_back(cfg.cell(row, col));
      }
    }
  }
  for (std::size_t row = 0; row < 2; ++row) {
    for (std::size_t col = 0; col < 2; ++col) {
      cfg.region_a.push_back(cfg.cell(row, col));
      cfg.region_b.push_back(cfg.cell(cfg.height - 1 - row, cfg.width - 1 - col));
    }
  }
  std::sort(cfg.region_b.begin(), cfg.region_b.end());
  return cfg;
}

systems::Pts gen_gridworld(const GridWorldConfig& cfg) {
  cfg.validate();
  const auto band = as_set(cfg.band);
  const auto w = static_cast<long>(cfg.width);
  const auto h = static_cast<long>(cfg.height);

  systems::DynamicsSpec dyn;
  dyn.num_states = cfg.width * cfg.height;
  dyn.num_inputs = 4;
  dyn.num_params = cfg.drifts.size();
  dyn.num_disturbances = 1;
  dyn.update = [&, w, h](StateId x, InputId u, ParamId th, std::size_t) -> std::optional<StateId> {
    long row = x / w;
    long col = x % w;
    static constexpr long kDx[] = {-1, 1, 0, 0};
    static constexpr long kDy[] = {0, 0, 1, -1};
    long next_row = row + kDy[u];
    long next_col = col + kDx[u];
    const bool drifting = cfg.drift_on == GridWorldConfig::DriftCell::Current
                              ? band.count(x) > 0
                              : next_row >= 0 && next_row < h && next_col >= 0 && next_col < w &&
                                    band.count(static_cast<StateId>(next_row * w + next_col)) > 0;
    if (drifting) next_col -= cfg.drifts[th];
    if (next_row < 0 || next_row >= h || next_col < 0 || next_col >= w) {
      if (cfg.boundary == GridWorldConfig::Boundary::Sink) return std::nullopt;
      next_row = std::clamp(next_row, 0L, h - 1);
      next_col = std::clamp(next_col, 0L, w - 1);
    }
    return static_cast<StateId>(next_row * w + next_col);
  };
  const auto a = as_set(cfg.region_a);
  const auto b = as_set(cfg.region_b);
  const auto bad = as_set(cfg.unsafe);
  dyn.outputs = {{"A", [a](StateId x) { return a.count(x) > 0; }},
                 {"B", [b](StateId x) { return b.count(x) > 0; }},
                 {"unsafe", [bad](StateId x) { return bad.count(x) > 0; }}};
  dyn.sink_labels = {"unsafe"};
  for (long row = 0; row < h; ++row) {
    for (long col = 0; col < w; ++col) dyn.state_names.push_back("r" + std::to_string(row) + "c" + std::to_string(col));
  }
  dyn.input_names = {"left", "right", "up", "down"};
  for (int d : cfg.drifts) dyn.param_names.push_back(d > 0 ? "+" + std::to_string(d) : std::to_string(d));
  return systems::embed(dyn);
}

GridWorldConfig read_grid_config(std::istream& in) {
  try {
    json doc;
    in >> doc;
    GridWorldConfig cfg;
    cfg.width = doc.at("width").get<std::size_t>();
    cfg.height = doc.at("height").get<std::size_t>();
    auto cells = [&](const char* key) {
      std::vector<StateId> out;
      for (const auto& rc : doc.value(key, json::array())) {
        const auto row = rc.at(0).get<std::size_t>();
        const auto col = rc.at(1).get<std::size_t>();
        if (row >= cfg.height || col >= cfg.width) {
          throw Error(ErrorKind::InvalidModel, std::string(key) + " cell " + rc.dump() + " outside the grid");
        }
        out.push_back(cfg.cell(row, col));
      }
      return out;
    };
    cfg.band = cells("band");
    cfg.unsafe = cells("unsafe");
    cfg.region_a = cells("A");
    cfg.region_b = cells("B");
    cfg.drifts = doc.at("drifts").get<std::vector<int>>();
    const auto boundary = doc.value("boundary", std::string("sink"));
    if (boundary != "sink" && boundary != "clamp") throw Error(ErrorKind::Parse, "boundary must be sink or clamp");
    cfg.boundary = boundary == "sink" ? GridWorldConfig::Boundary::Sink : GridWorldConfig::Boundary::Clamp;
    const auto drift_on = doc.value("drift_on", std::string("current"));
    if (drift_on != "current" && drift_on != "successor") {
      throw Error(ErrorKind::Parse, "drift_on must be current or successor");
    }
    cfg.drift_on = drift_on == "current" ? GridWorldConfig::DriftCell::Current : GridWorldConfig::DriftCell::Successor;
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

void write_grid_config(std::ostream& out, const GridWorldConfig& cfg) {
  auto cells = [&](const std::vector<StateId>& v) {
    json out = json::array();
    for (StateId c : v) out.push_back({c / cfg.width, c % cfg.width});
    return out;
  };
  json doc;
  doc["width"] = cfg.width;
  doc["height"] = cfg.height;
  doc["band"] = cells(cfg.band);
  doc["unsafe"] = cells(cfg.unsafe);
  doc["A"] = cells(cfg.region_a);
  doc["B"] = cells(cfg.region_b);
  doc["drifts"] = cfg.drifts;
  doc["boundary"] = cfg.boundary == GridWorldConfig::Boundary::Sink ? "sink" : "clamp";
  doc["drift_on"] = cfg.drift_on == GridWorldConfig::DriftCell::Current ? "current" : "successor";
  out << doc.dump(1) << "\n";
}

}  // namespace adsyn::frontend
