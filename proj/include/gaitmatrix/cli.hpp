#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaitmatrix/errors.hpp"
#include "gaitmatrix/io.hpp"
#include "gaitmatrix/svg.hpp"

namespace gaitmatrix::cli {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitSimulationError = 3;

namespace detail {

namespace fs = std::filesystem;

inline std::string out_path(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

/// Splits a cycle argument on commas outside parentheses, so both
/// "(00),(10)" and wide states like "(12,0)" tokenize correctly.
inline std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
  }
  return out;
}

struct PlanOptions {
  std::string matrix_path;
  std::string config_path;
  std::string out_dir = ".";
  int l_max = 4;
  std::string sense = "forward";
  bool with_mean = false;
  bool with_rate = false;
  double uniform_duration_s = 1.0;
  bool l_max_set = false;
  bool sense_set = false;
};

inline int run_plan(const PlanOptions& opt) {
  std::string matrix_path = opt.matrix_path;
  std::string body_path;
  std::string trials_path;
  int l_max = opt.l_max;
  std::string sense = opt.sense;
  double uniform_duration_s = opt.uniform_duration_s;
  std::string out_dir = opt.out_dir;

  if (!opt.config_path.empty()) {
    const auto j = nlohmann::json::parse(io::read_file(opt.config_path));
    if (j.value("schema", "") != io::kProjectSchema) {
      throw InputError("project config: expected schema '" + std::string(io::kProjectSchema) +
                       "'");
    }
    if (matrix_path.empty()) matrix_path = j.value("matrix", "");
    body_path = j.value("body", "");
    trials_path = j.value("trials", "");
    if (j.contains("planner")) {
      const auto& p = j["planner"];
      if (!opt.l_max_set) l_max = p.value("l_max", l_max);
      if (!opt.sense_set) sense = p.value("sense", sense);
      uniform_duration_s = p.value("uniform_duration_s", uniform_duration_s);
    }
    if (out_dir == "." && j.contains("outputs")) out_dir = j["outputs"].get<std::string>();
    // resolve relative paths against the config file's directory
    const fs::path base = fs::path(opt.config_path).parent_path();
    const auto resolve = [&](std::string& p) {
      if (!p.empty() && fs::path(p).is_relative()) p = (base / p).string();
    };
    resolve(matrix_path);
    resolve(body_path);
    resolve(trials_path);
  }

  int sources = 0;
  if (!matrix_path.empty()) ++sources;
  if (!body_path.empty()) ++sources;
  if (!trials_path.empty()) ++sources;
  if (sources != 1) {
    throw InputError("plan needs exactly one matrix source (matrix file, body to simulate, or "
                     "trials to learn); got " +
                     std::to_string(sources));
  }

  io::MatrixDocument doc{statecore::RewardMatrix(1), {}};
  if (!matrix_path.empty()) {
    doc = io::read_matrix(io::read_file(matrix_path));
  } else if (!body_path.empty()) {
    const auto body_doc = io::read_body(io::read_file(body_path));
    const auto sim = quasistatic::simulate_matrix(body_doc.body, body_doc.sim);
    const auto space = quasistatic::state_space(body_doc.body);
    std::vector<std::string> names;
    for (int i = 0; i < space.cardinality(); ++i) {
      names.push_back(statecore::state_string(i, space));
    }
    doc = io::MatrixDocument{sim.matrix, std::move(names)};
  } else {
    const auto names = io::default_state_names(4);
    const auto trials = io::read_trials(io::read_file(trials_path), names, 4);
    auto [m, coverage] = estimator::estimate_matrix(trials, 4, estimator::EstimatorConfig{});
    doc = io::MatrixDocument{std::move(m), names};
  }

  const planner::Sense plan_sense =
      sense == "backward" ? planner::Sense::kMinimize : planner::Sense::kMaximize;
  if (sense != "forward" && sense != "backward") {
    throw InputError("--sense must be forward or backward");
  }

  const planner::PlanResult plan = planner::optimal_cycle(doc.matrix, l_max, plan_sense);

  nlohmann::json extra;
  if (opt.with_mean) {
    const auto [cycle, mean] = planner::optimal_mean_cycle(doc.matrix);
    nlohmann::json jc = nlohmann::json::array();
    for (int s : cycle.states) jc.push_back(doc.states.at(static_cast<std::size_t>(s)));
    extra["mean_cycle"] = {{"cycle", jc},
                           {"mean_num", mean.num},
                           {"mean_den", mean.den},
                           {"mean", mean.value()}};
  }
  if (opt.with_rate) {
    const auto durations =
        planner::TransitionDurations::uniform(doc.matrix.n(), uniform_duration_s);
    const auto [cycle, rate] = planner::optimal_rate_cycle(doc.matrix, durations);
    nlohmann::json jc = nlohmann::json::array();
    for (int s : cycle.states) jc.push_back(doc.states.at(static_cast<std::size_t>(s)));
    extra["rate_cycle"] = {{"cycle", jc}, {"reward_per_second", rate}};
  }

  std::string plan_json = io::write_plan(plan, doc.states);
  if (!extra.empty()) {
    auto j = nlohmann::json::parse(plan_json);
    for (auto& [k, v] : extra.items()) j[k] = v;
    plan_json = j.dump(2) + "\n";
  }
  io::write_file(out_path(out_dir, "plan.json"), plan_json);

  if (!plan.feasible) {
    std::cerr << "no feasible cycle in the transition graph\n";
    return kExitInfeasible;
  }
  std::cout << "best reward " << plan.best_reward << " over " << plan.explored
            << " candidate cycles (l_max " << l_max << ", " << sense << ")\n";
  const auto& canonical = plan.cycles.front();
  std::cout << "canonical cycle:";
  for (int s : canonical.states) {
    std::cout << " " << s << ":" << doc.states.at(static_cast<std::size_t>(s));
  }
  std::cout << "\n" << "optima found: " << plan.cycles.size() << "\n";
  return kExitOk;
}

inline int run_simulate(const std::string& body_path, const std::string& out_dir) {
  const auto body_doc = io::read_body(io::read_file(body_path));
  const auto sim = quasistatic::simulate_matrix(body_doc.body, body_doc.sim);
  const auto space = quasistatic::state_space(body_doc.body);
  std::vector<std::string> names;
  for (int i = 0; i < space.cardinality(); ++i) {
    names.push_back(statecore::state_string(i, space));
  }
  io::write_file(out_path(out_dir, "reward_matrix.json"),
                 io::write_matrix(io::MatrixDocument{sim.matrix, names}));
  io::write_file(out_path(out_dir, "displacements.csv"), io::write_displacements(sim, names));

  std::cout << "simulated " << space.cardinality() << "-state matrix for '"
            << (body_doc.label.empty() ? body_path : body_doc.label) << "'\n";
  for (int i = 0; i < sim.matrix.n(); ++i) {
    std::cout << statecore::state_label(i, space) << " |";
    for (int j = 0; j < sim.matrix.n(); ++j) {
      if (sim.matrix.allowed(i, j)) {
        std::cout << " " << std::showpos << sim.matrix.reward(i, j) << std::noshowpos;
      } else {
        std::cout << "  x";
      }
    }
    std::cout << "\n";
  }
  if (!sim.unrealizable_states.empty()) {
    std::cout << "unrealizable states:";
    for (int s : sim.unrealizable_states) std::cout << " " << statecore::state_label(s, space);
    std::cout << "\n";
  }
  return kExitOk;
}

struct LearnOptions {
  std::string trials_path;
  std::string out_dir = ".";
  int states = 4;
  double deadband_mm = 0.1;
  double halflife_s = 0.0;  // 0 = uniform weighting
  int min_trials = 1;
  std::string aggregation = "median";
};

inline int run_learn(const LearnOptions& opt) {
  estimator::EstimatorConfig cfg;
  cfg.deadband_mm = opt.deadband_mm;
  cfg.min_trials = opt.min_trials;
  if (opt.halflife_s > 0.0) cfg.recency_halflife_s = opt.halflife_s;
  if (opt.aggregation == "majority") {
    cfg.aggregation = estimator::Aggregation::kMajority;
  } else if (opt.aggregation != "median") {
    throw InputError("--aggregation must be median or majority");
  }

  const auto names = io::default_state_names(opt.states);
  const auto trials = io::read_trials(io::read_file(opt.trials_path), names, opt.states);
  const auto [m, coverage] = estimator::estimate_matrix(trials, opt.states, cfg);

  io::write_file(out_path(opt.out_dir, "estimated_matrix.json"),
                 io::write_matrix(io::MatrixDocument{m, names}));
  io::write_file(out_path(opt.out_dir, "coverage.json"), io::write_coverage(coverage, names));
  std::cout << "estimated matrix from " << trials.size() << " trials (deadband "
            << cfg.deadband_mm << " mm); observed " << coverage.observed_pairs() << "/"
            << coverage.total_pairs() << " pairs, " << coverage.masked.size() << " masked\n";
  return kExitOk;
}

struct GaitOptions {
  std::string body_path;
  std::string cycle_text;
  std::string out_dir = ".";
  int cycles = 3;
  double leg_ms = 1000.0;
  int l_max = 4;
};

inline int run_gait(const GaitOptions& opt) {
  const auto body_doc = io::read_body(io::read_file(opt.body_path));
  const auto space = quasistatic::state_space(body_doc.body);
  std::vector<std::string> names;
  for (int i = 0; i < space.cardinality(); ++i) {
    names.push_back(statecore::state_string(i, space));
  }

  planner::ControlSequence cycle;
  cycle.periodic = true;
  if (!opt.cycle_text.empty()) {
    for (const auto& token : split_tokens(opt.cycle_text)) {
      cycle.states.push_back(statecore::parse_state(token, space));
    }
    if (cycle.states.size() < 2 || cycle.states.front() != cycle.states.back()) {
      throw InputError("--cycle must be a periodic sequence returning to its start");
    }
  } else {
    const auto sim = quasistatic::simulate_matrix(body_doc.body, body_doc.sim);
    const auto plan = planner::optimal_cycle(sim.matrix, opt.l_max);
    if (!plan.feasible || plan.best_reward <= 0) {
      std::cerr << "no forward-moving cycle for this body\n";
      return kExitInfeasible;
    }
    cycle = plan.cycles.front();
    std::cout << "planned cycle with reward " << plan.best_reward << "\n";
  }

  const auto log =
      session::run_closed_loop(body_doc.body, body_doc.sim, cycle, opt.cycles, opt.leg_ms);

  io::write_file(out_path(opt.out_dir, "session.csv"), io::write_session(log));

  // controller command events, one step per leg
  gaitcontrol::CommandTimeline timeline;
  const int substeps = body_doc.sim.substeps;
  for (std::size_t leg = 0; leg < log.leg_displacements_mm.size(); ++leg) {
    const auto& end_row = log.rows.at((leg + 1) * substeps);
    timeline.events.push_back({leg * opt.leg_ms, 0, end_row.commanded_1});
    timeline.events.push_back({leg * opt.leg_ms, 1, end_row.commanded_2});
  }
  timeline.horizon_ms = log.total_ms;
  io::write_file(out_path(opt.out_dir, "timeline.csv"), io::write_timeline(timeline));
  io::write_file(out_path(opt.out_dir, "session.svg"), svg::render_trajectory(log, names));

  std::cout << "ran " << opt.cycles << " cycle(s) of";
  for (int s : cycle.states) std::cout << " " << statecore::state_label(s, space);
  std::cout << "\ncumulative discretized reward " << std::showpos << log.cumulative_reward
            << std::noshowpos << ", net displacement "
            << log.rows.back().com_mm << " mm over " << log.total_ms << " ms\n";
  return kExitOk;
}

inline int run_validate(const std::string& path) {
  const std::string text = io::read_file(path);
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.contains("schema")) {
    std::cerr << "not a gaitmatrix document (missing schema field)\n";
    return kExitInputError;
  }
  const std::string schema = j["schema"].get<std::string>();
  if (schema == io::kMatrixSchema) {
    const auto doc = io::read_matrix(text, /*strict=*/false);
    const auto violations = statecore::validate(doc.matrix);
    if (violations.empty()) {
      std::cout << "ok: reward matrix, n=" << doc.matrix.n() << "\n";
      return kExitOk;
    }
    for (const auto& v : violations) {
      std::cout << "violation [" << v.row << "," << v.col << "]: " << v.message << "\n";
    }
    return kExitInputError;
  }
  if (schema == io::kBodySchema) {
    const auto body_doc = io::read_body(text);
    const auto issues = quasistatic::validate_body(body_doc.body, body_doc.sim);
    if (issues.empty()) {
      std::cout << "ok: body config, all states realizable\n";
      return kExitOk;
    }
    for (const auto& s : issues) std::cout << "issue: " << s << "\n";
    return kExitInputError;
  }
  std::cerr << "unknown schema '" << schema << "'\n";
  return kExitInputError;
}

}  // namespace detail

/// Entry point shared by the binary and the tests; returns the process exit
/// code.
inline int run(std::vector<std::string> args) {
  CLI::App app{"gait planning and quasi-static simulation for shape-changing soft robots"};
  app.require_subcommand(1);
  int seed = 0;
  app.add_option("--seed", seed, "seed for randomized utilities (reserved)");

  detail::PlanOptions plan_opt;
  auto* plan = app.add_subcommand("plan", "search optimal periodic control sequences");
  plan->add_option("matrix", plan_opt.matrix_path, "reward matrix JSON");
  plan->add_option("--config", plan_opt.config_path, "project config JSON");
  auto* lmax_opt = plan->add_option("--l-max", plan_opt.l_max, "max transitions per cycle");
  auto* sense_opt =
      plan->add_option("--sense", plan_opt.sense, "forward or backward locomotion");
  plan->add_flag("--mean", plan_opt.with_mean, "also compute the maximum-mean cycle");
  plan->add_flag("--rate", plan_opt.with_rate, "also compute the best reward-per-second cycle");
  plan->add_option("--uniform-duration-s", plan_opt.uniform_duration_s,
                   "transition duration for --rate");
  plan->add_option("--out-dir", plan_opt.out_dir, "artifact directory");

  std::string simulate_body, simulate_out = ".";
  auto* simulate = app.add_subcommand("simulate", "build a reward matrix from a body config");
  simulate->add_option("body", simulate_body, "body JSON")->required();
  simulate->add_option("--out-dir", simulate_out, "artifact directory");

  detail::LearnOptions learn_opt;
  auto* learn = app.add_subcommand("learn", "estimate a reward matrix from trial logs");
  learn->add_option("trials", learn_opt.trials_path, "trial CSV")->required();
  learn->add_option("--states", learn_opt.states, "state count");
  learn->add_option("--deadband-mm", learn_opt.deadband_mm, "discretization deadband");
  learn->add_option("--halflife-s", learn_opt.halflife_s, "recency half-life (0 = uniform)");
  learn->add_option("--min-trials", learn_opt.min_trials, "observations needed per pair");
  learn->add_option("--aggregation", learn_opt.aggregation, "median or majority");
  learn->add_option("--out-dir", learn_opt.out_dir, "artifact directory");

  detail::GaitOptions gait_opt;
  auto* gait = app.add_subcommand("gait", "run a closed-loop gait on the simulated body");
  gait->add_option("body", gait_opt.body_path, "body JSON")->required();
  gait->add_option("--cycle", gait_opt.cycle_text,
                   "periodic state sequence, e.g. \"(00),(10),(01),(00)\"");
  gait->add_option("--cycles", gait_opt.cycles, "gait cycles to run");
  gait->add_option("--leg-ms", gait_opt.leg_ms, "duration of one transition leg");
  gait->add_option("--l-max", gait_opt.l_max, "planning bound when no cycle is given");
  gait->add_option("--out-dir", gait_opt.out_dir, "artifact directory");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a matrix or body document");
  validate->add_option("file", validate_path, "JSON document")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInputError;
  }

  plan_opt.l_max_set = lmax_opt->count() > 0;
  plan_opt.sense_set = sense_opt->count() > 0;

  try {
    if (plan->parsed()) return detail::run_plan(plan_opt);
    if (simulate->parsed()) return detail::run_simulate(simulate_body, simulate_out);
    if (learn->parsed()) return detail::run_learn(learn_opt);
    if (gait->parsed()) return detail::run_gait(gait_opt);
    if (validate->parsed()) return detail::run_validate(validate_path);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const SimulationError& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return kExitSimulationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace gaitmatrix::cli
