#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gaitmatrix/errors.hpp"
#include "gaitmatrix/estimator.hpp"
#include "gaitmatrix/gaitcontrol.hpp"
#include "gaitmatrix/planner.hpp"
#include "gaitmatrix/quasistatic.hpp"

namespace gaitmatrix::session {

using gaitcontrol::ActivationTable;
using planner::ControlSequence;
using quasistatic::BodyModel;
using quasistatic::SimConfig;

/// One sampled instant of a closed-loop run.
struct SessionRow {
  double t_ms = 0.0;
  double psi_left = 0.0;
  double psi_right = 0.0;
  int state = 0;
  int cursor = 0;
  double commanded_1 = 0.0;
  double commanded_2 = 0.0;
  double com_mm = 0.0;  // cumulative center-of-mass displacement
};

/// Full record of a simulated closed-loop gait execution.
struct SessionLog {
  std::vector<SessionRow> rows;
  std::vector<int> visited_states;     // controller-tick classifications
  std::vector<double> leg_displacements_mm;
  int cumulative_reward = 0;           // sum of per-leg discretized rewards
  double total_ms = 0.0;
};

/// Drives the quasi-static body along a periodic state sequence with the
/// contact-angle controller for the given number of gait cycles. Each
/// controller tick commands one leg; the plant interpolates the drive over
/// leg_duration_ms in cfg.substeps increments with Coulomb slip tracking.
inline SessionLog run_closed_loop(const BodyModel& body, const SimConfig& cfg,
                                  const ControlSequence& sequence, int cycles,
                                  double leg_duration_ms = 1000.0) {
  cfg.check();
  if (!sequence.periodic || sequence.states.size() < 2) {
    throw InputError("closed-loop session needs a periodic sequence");
  }
  if (cycles < 1) throw InputError("cycle count must be >= 1");
  if (!(leg_duration_ms > 0.0)) throw InputError("leg duration must be positive");

  const statecore::StateSpace space = quasistatic::state_space(body);

  ActivationTable table(space.cardinality());
  for (int s : sequence.states) {
    if (s < 0 || s >= space.cardinality()) throw InputError("sequence state out of range");
    if (table[s].empty()) {
      table[s] = quasistatic::calibrate_activation(body, s, cfg);
    }
  }

  gaitcontrol::ControllerState ctrl;
  ctrl.cursor = 1;
  ctrl.drive = table[sequence.states.front()];

  SessionLog log;
  quasistatic::ShapeState shape = quasistatic::shape_from_activation(body, ctrl.drive);
  if (!shape.pads_grounded) throw SimulationError("start configuration lifts a pad");
  quasistatic::SlipTracker tracker(shape.chord(), shape.com_offset());
  const double com0 = tracker.com_x();

  double t = 0.0;
  log.rows.push_back({t, shape.psi_left, shape.psi_right,
                      statecore::index_of(quasistatic::classify_shape(body, shape), space),
                      ctrl.cursor, ctrl.drive[0], ctrl.drive.size() > 1 ? ctrl.drive[1] : 0.0,
                      0.0});

  const int total_legs = cycles * sequence.transition_count();
  int legs_done = 0;
  while (legs_done < total_legs) {
    const auto step = gaitcontrol::closed_loop_step(
        ctrl, sequence, {shape.psi_left, shape.psi_right}, space, table);
    if (legs_done > 0 && !step.advanced) {
      throw SimulationError("controller failed to reach its target after a full leg");
    }
    log.visited_states.push_back(step.classified_state);

    const std::vector<double> leg_from = ctrl.drive;
    const std::vector<double> leg_to = step.next.drive;
    const double leg_start_com = tracker.com_x();

    for (int k = 1; k <= cfg.substeps; ++k) {
      const double t_mid = (k - 0.5) / cfg.substeps;
      const double t_new = static_cast<double>(k) / cfg.substeps;
      std::vector<double> a_mid(leg_from.size()), a_new(leg_from.size());
      for (std::size_t i = 0; i < leg_from.size(); ++i) {
        a_mid[i] = leg_from[i] + (leg_to[i] - leg_from[i]) * t_mid;
        a_new[i] = leg_from[i] + (leg_to[i] - leg_from[i]) * t_new;
      }
      const quasistatic::ShapeState mid = quasistatic::shape_from_activation(body, a_mid);
      const quasistatic::ShapeState next = quasistatic::shape_from_activation(body, a_new);
      if (!mid.pads_grounded || !next.pads_grounded) {
        throw SimulationError("contact pad lifted during leg " + std::to_string(legs_done + 1));
      }
      tracker.advance(next.chord(), next.com_offset(),
                      quasistatic::assess_capacities(body, mid, cfg));
      shape = next;

      log.rows.push_back({t + t_new * leg_duration_ms, shape.psi_left, shape.psi_right,
                          statecore::index_of(quasistatic::classify_shape(body, shape), space),
                          step.next.cursor, a_new[0], a_new.size() > 1 ? a_new[1] : 0.0,
                          tracker.com_x() - com0});
    }

    const double leg_d = tracker.com_x() - leg_start_com;
    log.leg_displacements_mm.push_back(leg_d);
    log.cumulative_reward += estimator::discretize(leg_d, cfg.deadband_mm);

    t += leg_duration_ms;
    ctrl = step.next;
    ++legs_done;
  }

  // register the final achievement so the visited sequence closes
  const auto final_step = gaitcontrol::closed_loop_step(
      ctrl, sequence, {shape.psi_left, shape.psi_right}, space, table);
  log.visited_states.push_back(final_step.classified_state);
  log.total_ms = t;
  return log;
}

/// Samples an open-loop timeline against the shape model and reports the
/// sequence of robot states it visits (consecutive repeats squashed).
inline std::vector<int> replay_timeline_states(const BodyModel& body,
                                               const gaitcontrol::CommandTimeline& timeline) {
  const statecore::StateSpace space = quasistatic::state_space(body);
  std::vector<double> times;
  for (const auto& e : timeline.events) times.push_back(e.t_ms);
  times.push_back(timeline.horizon_ms);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<int> states;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double t = 0.5 * (times[i] + times[i + 1]);
    std::vector<double> a(body.actuators.size(), 0.0);
    for (std::size_t ch = 0; ch < a.size(); ++ch) {
      a[ch] = timeline.level_at(t, static_cast<int>(ch));
    }
    const auto shape = quasistatic::shape_from_activation(body, a);
    const int s = statecore::index_of(quasistatic::classify_shape(body, shape), space);
    if (states.empty() || states.back() != s) states.push_back(s);
  }
  return states;
}

}  // namespace gaitmatrix::session
