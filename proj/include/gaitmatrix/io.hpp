#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gaitmatrix/errors.hpp"
#include "gaitmatrix/estimator.hpp"
#include "gaitmatrix/gaitcontrol.hpp"
#include "gaitmatrix/planner.hpp"
#include "gaitmatrix/quasistatic.hpp"
#include "gaitmatrix/session.hpp"
#include "gaitmatrix/statecore.hpp"

namespace gaitmatrix::io {

using nlohmann::json;

constexpr const char* kMatrixSchema = "gaitmatrix/reward-matrix/v1";
constexpr const char* kBodySchema = "gaitmatrix/body/v1";
constexpr const char* kPlanSchema = "gaitmatrix/plan/v1";
constexpr const char* kCoverageSchema = "gaitmatrix/coverage/v1";
constexpr const char* kProjectSchema = "gaitmatrix/project/v1";

/// A reward matrix plus the state strings naming its indices.
struct MatrixDocument {
  statecore::RewardMatrix matrix;
  std::vector<std::string> states;

  int state_named(const std::string& token) const {
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i] == token) return static_cast<int>(i);
    }
    // fall back to a bare index
    try {
      std::size_t pos = 0;
      const int idx = std::stoi(token, &pos);
      if (pos == token.size() && idx >= 0 && idx < matrix.n()) return idx;
    } catch (...) {
    }
    throw InputError("unknown state '" + token + "'");
  }
};

inline std::vector<std::string> default_state_names(int n) {
  if (n == 4) {
    const statecore::StateSpace space = statecore::binary_pair_space();
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(statecore::state_string(i, space));
    return names;
  }
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

namespace detail {

inline json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

inline const json& field(const json& j, const char* key, const std::string& what) {
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(what + ": missing field '" + key + "'");
  return *it;
}

inline void expect_schema(const json& j, const char* schema, const std::string& what) {
  if (field(j, "schema", what).get<std::string>() != schema) {
    throw InputError(what + ": expected schema '" + schema + "'");
  }
}

}  // namespace detail

inline std::string write_matrix(const MatrixDocument& doc) {
  json j;
  j["schema"] = kMatrixSchema;
  j["n"] = doc.matrix.n();
  j["states"] = doc.states;
  j["rewards"] = doc.matrix.rewards_row_major();
  std::vector<bool> allowed;
  for (auto a : doc.matrix.allowed_row_major()) allowed.push_back(a != 0);
  j["allowed"] = allowed;
  return j.dump(2) + "\n";
}

inline MatrixDocument read_matrix(const std::string& text, bool strict = true) {
  const json j = detail::parse(text, "reward matrix");
  detail::expect_schema(j, kMatrixSchema, "reward matrix");
  const int n = detail::field(j, "n", "reward matrix").get<int>();
  const auto rewards = detail::field(j, "rewards", "reward matrix").get<std::vector<int>>();
  const auto allowed_bools = detail::field(j, "allowed", "reward matrix").get<std::vector<bool>>();
  auto states = detail::field(j, "states", "reward matrix").get<std::vector<std::string>>();
  if (static_cast<int>(states.size()) != n) {
    throw InputError("reward matrix: states list does not match n");
  }
  std::vector<std::uint8_t> allowed;
  allowed.reserve(allowed_bools.size());
  for (bool b : allowed_bools) allowed.push_back(b ? 1 : 0);
  statecore::RewardMatrix m(n, rewards, std::move(allowed));
  if (strict) {
    const auto violations = statecore::validate(m);
    if (!violations.empty()) {
      std::string msg = "reward matrix has " + std::to_string(violations.size()) + " violations:";
      for (const auto& v : violations) {
        msg += " [" + std::to_string(v.row) + "," + std::to_string(v.col) + "] " + v.message + ";";
      }
      throw InputError(msg);
    }
  }
  return MatrixDocument{std::move(m), std::move(states)};
}

inline json waveform_to_json(const gaitcontrol::ActuationWaveform& w) {
  json j;
  j["channel1"] = {{"strength", w.channel1.strength},
                   {"t_active_ms", w.channel1.t_active_ms},
                   {"t_cycle_ms", w.channel1.t_cycle_ms}};
  j["channel2"] = {{"strength", w.channel2.strength},
                   {"t_active_ms", w.channel2.t_active_ms},
                   {"t_cycle_ms", w.channel2.t_cycle_ms}};
  j["phase12_ms"] = w.phase12_ms;
  return j;
}

inline std::string write_body(const quasistatic::BodyModel& body, const quasistatic::SimConfig& cfg,
                              const std::string& label = "") {
  json j;
  j["schema"] = kBodySchema;
  if (!label.empty()) j["label"] = label;
  j["length_mm"] = body.length_mm;
  j["mass_g"] = body.mass_g;
  j["segment_count"] = body.segment_count;
  j["gravity_mps2"] = body.gravity_mps2;
  j["actuators"] = json::array();
  for (const auto& a : body.actuators) {
    j["actuators"].push_back({{"start_arc_mm", a.start_arc_mm},
                              {"end_arc_mm", a.end_arc_mm},
                              {"max_curvature_per_mm", a.max_curvature_per_mm},
                              {"activation", a.activation}});
  }
  j["pads"] = json::array();
  for (const auto& p : body.pads) {
    j["pads"].push_back({{"label", p.label()},
                         {"thresholds_rad", p.thresholds()},
                         {"friction_coefficients", p.friction_coefficients()}});
  }
  j["sim"] = {{"substeps", cfg.substeps},
              {"deadband_mm", cfg.deadband_mm},
              {"stick_tolerance", cfg.stick_tolerance},
              {"calibration_grid", cfg.calibration_grid}};
  return j.dump(2) + "\n";
}

struct BodyDocument {
  quasistatic::BodyModel body;
  quasistatic::SimConfig sim;
  std::string label;
};

inline BodyDocument read_body(const std::string& text) {
  const json j = detail::parse(text, "body config");
  detail::expect_schema(j, kBodySchema, "body config");
  try {
    std::vector<quasistatic::ActuatorSpan> actuators;
    for (const auto& a : detail::field(j, "actuators", "body config")) {
      quasistatic::ActuatorSpan span;
      span.start_arc_mm = a.at("start_arc_mm").get<double>();
      span.end_arc_mm = a.at("end_arc_mm").get<double>();
      span.max_curvature_per_mm = a.at("max_curvature_per_mm").get<double>();
      span.activation = a.value("activation", 0.0);
      actuators.push_back(span);
    }
    std::vector<statecore::MechanismSpec> pads;
    for (const auto& p : detail::field(j, "pads", "body config")) {
      pads.emplace_back(p.at("thresholds_rad").get<std::vector<double>>(),
                        p.at("friction_coefficients").get<std::vector<double>>(),
                        p.value("label", ""));
    }
    quasistatic::BodyModel body(detail::field(j, "length_mm", "body config").get<double>(),
                                detail::field(j, "mass_g", "body config").get<double>(),
                                detail::field(j, "segment_count", "body config").get<int>(),
                                std::move(actuators), std::move(pads),
                                j.value("gravity_mps2", 9.81));
    quasistatic::SimConfig cfg;
    if (j.contains("sim")) {
      const json& s = j["sim"];
      cfg.substeps = s.value("substeps", cfg.substeps);
      cfg.deadband_mm = s.value("deadband_mm", cfg.deadband_mm);
      cfg.stick_tolerance = s.value("stick_tolerance", cfg.stick_tolerance);
      cfg.calibration_grid = s.value("calibration_grid", cfg.calibration_grid);
    }
    cfg.check();
    return BodyDocument{std::move(body), cfg, j.value("label", "")};
  } catch (const json::exception& e) {
    throw InputError(std::string("body config: ") + e.what());
  }
}

inline std::string write_plan(const planner::PlanResult& plan,
                              const std::vector<std::string>& state_names) {
  json j;
  j["schema"] = kPlanSchema;
  j["best_reward"] = plan.best_reward;
  j["l_max"] = plan.l_max;
  j["explored"] = plan.explored;
  j["feasible"] = plan.feasible;
  j["cycles"] = json::array();
  for (const auto& cycle : plan.cycles) {
    json seq = json::array();
    for (int s : cycle.states) seq.push_back(state_names.at(static_cast<std::size_t>(s)));
    j["cycles"].push_back(std::move(seq));
  }
  return j.dump(2) + "\n";
}

inline std::string write_coverage(const estimator::CoverageReport& coverage,
                                  const std::vector<std::string>& state_names) {
  json j;
  j["schema"] = kCoverageSchema;
  j["n"] = coverage.n;
  j["deadband_mm"] = coverage.deadband_mm;
  j["counts"] = coverage.counts;
  j["observed_pairs"] = coverage.observed_pairs();
  j["total_pairs"] = coverage.total_pairs();
  j["masked"] = json::array();
  for (const auto& [from, to] : coverage.masked) {
    j["masked"].push_back({{"from", from},
                           {"to", to},
                           {"from_state", state_names.at(static_cast<std::size_t>(from))},
                           {"to_state", state_names.at(static_cast<std::size_t>(to))}});
  }
  return j.dump(2) + "\n";
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) {
    while (!cur.empty() && (cur.front() == ' ' || cur.front() == '\t')) cur.erase(cur.begin());
    while (!cur.empty() && (cur.back() == ' ' || cur.back() == '\r' || cur.back() == '\t')) {
      cur.pop_back();
    }
    out.push_back(cur);
  }
  return out;
}

}  // namespace detail

constexpr const char* kTrialCsvHeader = "from,to,displacement_mm,timestamp_s,tag";

inline std::string write_trials(const std::vector<estimator::TrialRecord>& trials,
                                const std::vector<std::string>& state_names) {
  std::string out = std::string(kTrialCsvHeader) + "\n";
  for (const auto& t : trials) {
    out += state_names.at(static_cast<std::size_t>(t.from_index)) + "," +
           state_names.at(static_cast<std::size_t>(t.to_index)) + "," +
           detail::format_double(t.displacement_mm) + "," +
           detail::format_double(t.timestamp_s) + "," + t.tag + "\n";
  }
  return out;
}

/// Parses the trial log CSV; states are accepted as indices or state
/// strings resolved against the matrix document's naming.
inline std::vector<estimator::TrialRecord> read_trials(const std::string& text,
                                                       const std::vector<std::string>& state_names,
                                                       int n) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw InputError("trial log is empty");
  {
    auto header = detail::split_csv_line(line);
    if (header.size() < 4 || header[0] != "from" || header[1] != "to" ||
        header[2] != "displacement_mm" || header[3] != "timestamp_s") {
      throw InputError("trial log header must be '" + std::string(kTrialCsvHeader) + "'");
    }
  }
  const auto resolve = [&](const std::string& token) -> int {
    for (std::size_t i = 0; i < state_names.size(); ++i) {
      if (state_names[i] == token) return static_cast<int>(i);
    }
    try {
      std::size_t pos = 0;
      const int idx = std::stoi(token, &pos);
      if (pos == token.size() && idx >= 0 && idx < n) return idx;
    } catch (...) {
    }
    throw InputError("trial log: unknown state '" + token + "'");
  };

  std::vector<estimator::TrialRecord> trials;
  std::size_t line_no = 1;
  while (std::getline(ss, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() < 4) {
      throw InputError("trial log line " + std::to_string(line_no) + ": expected 5 columns");
    }
    estimator::TrialRecord t;
    t.from_index = resolve(cells[0]);
    t.to_index = resolve(cells[1]);
    const auto number = [&](const std::string& cell) {
      try {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        if (pos == cell.size()) return v;
      } catch (...) {
      }
      throw InputError("trial log line " + std::to_string(line_no) + ": bad number '" + cell +
                       "'");
    };
    t.displacement_mm = number(cells[2]);
    t.timestamp_s = number(cells[3]);
    if (cells.size() >= 5) t.tag = cells[4];
    trials.push_back(std::move(t));
  }
  return trials;
}

constexpr const char* kTimelineCsvHeader = "t_ms,actuator,level";

inline std::string write_timeline(const gaitcontrol::CommandTimeline& timeline) {
  std::string out = std::string(kTimelineCsvHeader) + "\n";
  for (const auto& e : timeline.events) {
    out += detail::format_double(e.t_ms) + "," + std::to_string(e.actuator) + "," +
           detail::format_double(e.level) + "\n";
  }
  return out;
}

constexpr const char* kSessionCsvHeader =
    "t_ms,psi_left,psi_right,state,cursor,commanded_1,commanded_2";

inline std::string write_session(const session::SessionLog& log) {
  std::string out = std::string(kSessionCsvHeader) + "\n";
  for (const auto& r : log.rows) {
    out += detail::format_double(r.t_ms) + "," + detail::format_double(r.psi_left) + "," +
           detail::format_double(r.psi_right) + "," + std::to_string(r.state) + "," +
           std::to_string(r.cursor) + "," + detail::format_double(r.commanded_1) + "," +
           detail::format_double(r.commanded_2) + "\n";
  }
  return out;
}

/// simulate's raw per-transition table.
inline std::string write_displacements(const quasistatic::SimulatedMatrix& sim,
                                       const std::vector<std::string>& state_names) {
  const int n = sim.matrix.n();
  std::string out = "from,to,from_state,to_state,displacement_mm,reward,allowed\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = sim.displacement_mm[static_cast<std::size_t>(i) * n + j];
      out += std::to_string(i) + "," + std::to_string(j) + "," +
             state_names.at(static_cast<std::size_t>(i)) + "," +
             state_names.at(static_cast<std::size_t>(j)) + "," +
             (std::isnan(d) ? std::string("") : detail::format_double(d)) + "," +
             std::to_string(sim.matrix.reward(i, j)) + "," +
             (sim.matrix.allowed(i, j) ? "1" : "0") + "\n";
    }
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

}  // namespace gaitmatrix::io
