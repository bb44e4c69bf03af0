#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gaitmatrix/errors.hpp"
#include "gaitmatrix/planner.hpp"
#include "gaitmatrix/statecore.hpp"

namespace gaitmatrix::gaitcontrol {

using planner::ControlSequence;
using statecore::RewardMatrix;
using statecore::StateSpace;

/// Periodic command pattern of one SMA channel: drive at `strength` for
/// t_active_ms out of every t_cycle_ms.
struct WaveformChannel {
  double strength = 1.0;  // normalized command in [0,1]
  double t_active_ms = 300.0;
  double t_cycle_ms = 1000.0;
};

/// The seven-parameter open-loop actuation pattern: three parameters per
/// channel plus the phase offset of channel 2 relative to channel 1.
struct ActuationWaveform {
  WaveformChannel channel1;
  WaveformChannel channel2;
  double phase12_ms = 0.0;

  void check() const {
    for (const WaveformChannel* c : {&channel1, &channel2}) {
      if (!(c->strength >= 0.0 && c->strength <= 1.0)) {
        throw InputError("waveform strength must lie in [0,1]");
      }
      if (!(c->t_active_ms > 0.0 && c->t_active_ms <= c->t_cycle_ms)) {
        throw InputError("waveform needs 0 < t_active <= t_cycle");
      }
    }
    if (!(phase12_ms >= 0.0 && phase12_ms < channel2.t_cycle_ms)) {
      throw InputError("phase offset must lie in [0, t_cycle_2)");
    }
  }
};

struct TimelineEvent {
  double t_ms = 0.0;
  int actuator = 0;
  double level = 0.0;  // piecewise-constant until the next event
};

/// Time-sorted actuation events; the level of an actuator at time t is that
/// of its latest event at or before t.
struct CommandTimeline {
  std::vector<TimelineEvent> events;
  double horizon_ms = 0.0;

  double level_at(double t_ms, int actuator) const {
    double level = 0.0;
    for (const auto& e : events) {
      if (e.t_ms > t_ms) break;
      if (e.actuator == actuator) level = e.level;
    }
    return level;
  }
};

/// Expands a waveform into an explicit on/off event timeline covering the
/// requested number of cycles of both channels.
inline CommandTimeline schedule_open_loop(const ActuationWaveform& w, int cycles) {
  w.check();
  if (cycles < 1) throw InputError("cycle count must be >= 1");

  CommandTimeline timeline;
  const auto emit = [&](int actuator, const WaveformChannel& c, double offset) {
    for (int k = 0; k < cycles; ++k) {
      const double on = offset + k * c.t_cycle_ms;
      timeline.events.push_back({on, actuator, c.strength});
      timeline.events.push_back({on + c.t_active_ms, actuator, 0.0});
    }
  };
  emit(0, w.channel1, 0.0);
  emit(1, w.channel2, w.phase12_ms);

  std::sort(timeline.events.begin(), timeline.events.end(),
            [](const TimelineEvent& a, const TimelineEvent& b) {
              if (a.t_ms != b.t_ms) return a.t_ms < b.t_ms;
              if (a.actuator != b.actuator) return a.actuator < b.actuator;
              return a.level < b.level;  // an off coinciding with an on yields the on
            });
  timeline.horizon_ms = std::max(cycles * w.channel1.t_cycle_ms,
                                 w.phase12_ms + cycles * w.channel2.t_cycle_ms);
  return timeline;
}

/// Calibrated activation target per state index; states never commanded may
/// stay empty.
using ActivationTable = std::vector<std::vector<double>>;

/// Value state of the closed-loop controller: which sequence entry is the
/// in-flight target and what drive is currently emitted.
struct ControllerState {
  int cursor = 1;
  std::vector<double> drive;
};

struct StepResult {
  ControllerState next;
  std::vector<double> delta;  // per-actuator level change toward the target
  bool advanced = false;
  int classified_state = -1;
};

/// One feedback step of the contact-angle controller. The measured angles
/// classify through the pad thresholds alone; reaching the in-flight target
/// state advances the cursor (wrapping periodic sequences past the repeated
/// endpoint) and re-aims the drive at the next target's calibrated
/// activation. Feedback that classifies onto some other sequence state just
/// re-emits the current drive; anything else is an off-path fault.
inline StepResult closed_loop_step(const ControllerState& state, const ControlSequence& sequence,
                                   std::pair<double, double> psi_feedback, const StateSpace& space,
                                   const ActivationTable& table) {
  if (sequence.states.size() < 2) throw InputError("sequence needs at least one transition");
  if (state.cursor < 0 || state.cursor >= static_cast<int>(sequence.states.size())) {
    throw InputError("cursor out of range");
  }
  if (space.mechanism_count() != 2) {
    throw InputError("closed-loop controller expects a two-mechanism space");
  }

  statecore::RobotState classified;
  classified.levels.push_back(
      statecore::state_from_angle(psi_feedback.first, space.mechanisms()[0]));
  classified.levels.push_back(
      statecore::state_from_angle(psi_feedback.second, space.mechanisms()[1]));
  const int observed = statecore::index_of(classified, space);

  StepResult result;
  result.classified_state = observed;
  result.next = state;

  const int target = sequence.states[state.cursor];
  if (observed == target) {
    int next_cursor = state.cursor + 1;
    if (next_cursor == static_cast<int>(sequence.states.size())) {
      if (!sequence.periodic) {
        next_cursor = state.cursor;  // hold at the completed end
      } else {
        next_cursor = 1;  // states[0] == states.back() was just achieved
      }
    }
    result.next.cursor = next_cursor;
    result.advanced = true;
  } else {
    const bool on_sequence =
        std::find(sequence.states.begin(), sequence.states.end(), observed) !=
        sequence.states.end();
    if (!on_sequence) {
      throw OffPathError("feedback classified to state " +
                         statecore::state_string(observed, space) +
                         " which is not on the commanded sequence");
    }
  }

  const int aim = sequence.states[result.next.cursor];
  if (aim < 0 || aim >= static_cast<int>(table.size()) || table[aim].empty()) {
    throw InputError("no calibrated activation for state index " + std::to_string(aim));
  }
  const std::vector<double>& goal = table[aim];
  if (state.drive.size() != goal.size()) {
    throw InputError("drive vector size does not match calibration table");
  }
  result.delta.resize(goal.size());
  result.next.drive = state.drive;
  for (std::size_t i = 0; i < goal.size(); ++i) {
    result.delta[i] = goal[i] - state.drive[i];
    result.next.drive[i] = goal[i];
  }
  return result;
}

/// Reward per second of a periodic sequence executed with the given
/// per-transition durations.
inline double gait_rate(const ControlSequence& cycle, const RewardMatrix& m,
                        const std::vector<double>& durations_ms) {
  if (!cycle.periodic) throw InputError("gait rate needs a periodic sequence");
  if (durations_ms.size() != static_cast<std::size_t>(cycle.transition_count())) {
    throw InputError("need one duration per transition");
  }
  double total_ms = 0.0;
  for (double d : durations_ms) {
    if (!(d > 0.0) || !std::isfinite(d)) throw InputError("transition durations must be positive");
    total_ms += d;
  }
  const int reward = planner::sequence_reward(cycle, m);
  return reward / (total_ms * 1e-3);
}

}  // namespace gaitmatrix::gaitcontrol
