#include "gaitmatrix/gaitcontrol.hpp"

#include <gtest/gtest.h>

#include "gaitmatrix/session.hpp"
#include "table_fixtures.hpp"

using namespace gaitmatrix;
using namespace gaitmatrix::gaitcontrol;

namespace {

ActuationWaveform basic_waveform() {
  ActuationWaveform w;
  w.channel1 = {1.0, 300.0, 1000.0};
  w.channel2 = {1.0, 300.0, 1000.0};
  w.phase12_ms = 0.0;
  return w;
}

ActivationTable ct1_table(const quasistatic::BodyModel& body, const quasistatic::SimConfig& cfg) {
  ActivationTable table(4);
  for (int s : {0, 1, 2}) {
    table[s] = quasistatic::calibrate_activation(body, s, cfg);
  }
  return table;
}

}  // namespace

TEST(Waveform, Invariants) {
  ActuationWaveform w = basic_waveform();
  w.channel1.strength = 1.2;
  EXPECT_THROW(w.check(), InputError);
  w = basic_waveform();
  w.channel2.t_active_ms = 0.0;
  EXPECT_THROW(w.check(), InputError);
  w = basic_waveform();
  w.channel1.t_active_ms = 1200.0;
  EXPECT_THROW(w.check(), InputError);
  w = basic_waveform();
  w.phase12_ms = 1000.0;
  EXPECT_THROW(w.check(), InputError);
}

TEST(Schedule, InPhaseSingleCycle) {
  const CommandTimeline tl = schedule_open_loop(basic_waveform(), 1);
  ASSERT_EQ(tl.events.size(), 4u);
  EXPECT_DOUBLE_EQ(tl.events[0].t_ms, 0.0);
  EXPECT_DOUBLE_EQ(tl.events[1].t_ms, 0.0);
  EXPECT_DOUBLE_EQ(tl.events[2].t_ms, 300.0);
  EXPECT_DOUBLE_EQ(tl.events[3].t_ms, 300.0);
  EXPECT_DOUBLE_EQ(tl.level_at(100.0, 0), 1.0);
  EXPECT_DOUBLE_EQ(tl.level_at(100.0, 1), 1.0);
  EXPECT_DOUBLE_EQ(tl.level_at(400.0, 0), 0.0);
  EXPECT_DOUBLE_EQ(tl.horizon_ms, 1000.0);
}

TEST(Schedule, PhaseShiftMovesChannelTwo) {
  ActuationWaveform w = basic_waveform();
  w.phase12_ms = 500.0;
  const CommandTimeline tl = schedule_open_loop(w, 1);
  EXPECT_DOUBLE_EQ(tl.level_at(400.0, 1), 0.0);
  EXPECT_DOUBLE_EQ(tl.level_at(600.0, 1), 1.0);
  EXPECT_DOUBLE_EQ(tl.level_at(850.0, 1), 0.0);
  EXPECT_DOUBLE_EQ(tl.horizon_ms, 1500.0);
}

TEST(Schedule, CyclesRepeat) {
  const CommandTimeline tl = schedule_open_loop(basic_waveform(), 2);
  EXPECT_DOUBLE_EQ(tl.level_at(1100.0, 0), 1.0);
  EXPECT_DOUBLE_EQ(tl.level_at(1400.0, 0), 0.0);
  EXPECT_DOUBLE_EQ(tl.horizon_ms, 2000.0);
}

TEST(Schedule, ContinuousDriveWhenActiveEqualsCycle) {
  ActuationWaveform w = basic_waveform();
  w.channel1.t_active_ms = 1000.0;
  const CommandTimeline tl = schedule_open_loop(w, 2);
  // the off event coincides with the next on; the on wins
  EXPECT_DOUBLE_EQ(tl.level_at(1000.0, 0), 1.0);
  EXPECT_DOUBLE_EQ(tl.level_at(1999.0, 0), 1.0);
}

TEST(Schedule, RejectsBadCycleCount) {
  EXPECT_THROW(schedule_open_loop(basic_waveform(), 0), InputError);
}

TEST(ClosedLoop, AdvancesOnExactThreshold) {
  const auto body = testfix::body::r1();
  const auto space = quasistatic::state_space(body);
  const auto table = ct1_table(body, quasistatic::SimConfig{});
  ControllerState state{1, table[0]};  // at (00), aiming for (10)

  // feedback exactly at both critical angles classifies as (11)? no: the
  // sequence target is (10), so give the left threshold only
  const auto res = closed_loop_step(state, testfix::ct1(), {0.26, 0.0}, space, table);
  EXPECT_TRUE(res.advanced);
  EXPECT_EQ(res.next.cursor, 2);
  EXPECT_EQ(res.classified_state, 2);
  EXPECT_EQ(res.next.drive, table[1]);  // now driving toward (01)
}

TEST(ClosedLoop, HoldsWhileTargetUnreached) {
  const auto body = testfix::body::r1();
  const auto space = quasistatic::state_space(body);
  quasistatic::SimConfig cfg;
  auto table = ct1_table(body, cfg);
  table[3] = quasistatic::calibrate_activation(body, 3, cfg);
  ControlSequence to_eleven{{0, 3, 0}, true};
  ControllerState state{1, table[0]};
  const auto res = closed_loop_step(state, to_eleven, {0.1, 0.1}, space, table);
  EXPECT_FALSE(res.advanced);
  EXPECT_EQ(res.next.cursor, 1);
  EXPECT_EQ(res.next.drive, table[3]);  // re-emitted drive toward (11)
}

TEST(ClosedLoop, NoDoubleAdvanceOnHeldFeedback) {
  const auto body = testfix::body::r1();
  const auto space = quasistatic::state_space(body);
  const auto table = ct1_table(body, quasistatic::SimConfig{});
  ControllerState state{1, table[0]};
  const auto first = closed_loop_step(state, testfix::ct1(), {0.3, 0.1}, space, table);
  EXPECT_TRUE(first.advanced);
  // same feedback again: (10) is on the sequence but no longer the target
  const auto second = closed_loop_step(first.next, testfix::ct1(), {0.3, 0.1}, space, table);
  EXPECT_FALSE(second.advanced);
  EXPECT_EQ(second.next.cursor, first.next.cursor);
}

TEST(ClosedLoop, PeriodicWrapSkipsTheRepeatedEndpoint) {
  const auto body = testfix::body::r1();
  const auto space = quasistatic::state_space(body);
  const auto table = ct1_table(body, quasistatic::SimConfig{});
  ControllerState state{3, table[1]};  // aiming for the final (00)
  const auto res = closed_loop_step(state, testfix::ct1(), {0.0, 0.0}, space, table);
  EXPECT_TRUE(res.advanced);
  EXPECT_EQ(res.next.cursor, 1);
}

TEST(ClosedLoop, OffPathFault) {
  const auto body = testfix::body::r1();
  const auto space = quasistatic::state_space(body);
  quasistatic::SimConfig cfg;
  ActivationTable table(4);
  table[2] = quasistatic::calibrate_activation(body, 2, cfg);
  table[3] = quasistatic::calibrate_activation(body, 3, cfg);
  ControllerState state{1, table[2]};
  // feedback classifies to (00), which C_L2 never visits
  EXPECT_THROW(closed_loop_step(state, testfix::cl2(), {0.0, 0.0}, space, table), OffPathError);
}

TEST(ClosedLoop, InputChecks) {
  const auto body = testfix::body::r1();
  const auto space = quasistatic::state_space(body);
  const auto table = ct1_table(body, quasistatic::SimConfig{});
  ControllerState state{9, table[0]};
  EXPECT_THROW(closed_loop_step(state, testfix::ct1(), {0.0, 0.0}, space, table), InputError);
  state.cursor = 1;
  EXPECT_THROW(closed_loop_step(state, testfix::ct1(),
                                {std::numeric_limits<double>::quiet_NaN(), 0.0}, space, table),
               InputError);
}

TEST(GaitRate, Examples) {
  EXPECT_NEAR(gait_rate(testfix::ct1(), testfix::r1(), {1000.0, 1000.0, 1000.0}), 2.0 / 3.0,
              1e-12);
  EXPECT_NEAR(gait_rate(testfix::cl2(), testfix::t_loa(), {500.0, 500.0}), 1.0, 1e-12);
  // zero-reward cycle
  EXPECT_DOUBLE_EQ(gait_rate({{0, 2, 0}, true}, testfix::r1(), {1.0, 100000.0}), 0.0);
}

TEST(GaitRate, Errors) {
  EXPECT_THROW(gait_rate(testfix::ct1(), testfix::r1(), {1000.0, 1000.0}), InputError);
  EXPECT_THROW(gait_rate(testfix::ct1(), testfix::r1(), {1000.0, -1.0, 1000.0}), InputError);
  EXPECT_THROW(gait_rate({{0, 2, 1}, false}, testfix::r1(), {1.0, 1.0}), InputError);
}

TEST(Session, ClosedLoopVisitsCt1States) {
  const auto body = testfix::body::r1();
  const quasistatic::SimConfig cfg;
  const auto log = session::run_closed_loop(body, cfg, testfix::ct1(), 1, 1000.0);
  EXPECT_EQ(log.visited_states, (std::vector<int>{0, 2, 1, 0}));
  EXPECT_EQ(log.leg_displacements_mm.size(), 3u);
  EXPECT_EQ(log.cumulative_reward, 2);
  EXPECT_DOUBLE_EQ(log.total_ms, 3000.0);
  ASSERT_FALSE(log.rows.empty());
  EXPECT_DOUBLE_EQ(log.rows.front().t_ms, 0.0);
  EXPECT_DOUBLE_EQ(log.rows.back().t_ms, 3000.0);
}

TEST(Session, OpenLoopReplayMatchesClosedLoopStateSequence) {
  const auto body = testfix::body::r1();
  const quasistatic::SimConfig cfg;
  const auto a10 = quasistatic::calibrate_activation(body, 2, cfg);
  const auto a01 = quasistatic::calibrate_activation(body, 1, cfg);

  // channel 1 pulses first, channel 2 takes over exactly when it ends
  ActuationWaveform w;
  w.channel1 = {a10[0], 300.0, 1000.0};
  w.channel2 = {a01[1], 300.0, 1000.0};
  w.phase12_ms = 300.0;
  const auto timeline = schedule_open_loop(w, 1);
  const auto replay = session::replay_timeline_states(body, timeline);
  EXPECT_EQ(replay, (std::vector<int>{2, 1, 0}));

  // the closed-loop log additionally records the rest state it starts from
  const auto log = session::run_closed_loop(body, cfg, testfix::ct1(), 1, 1000.0);
  ASSERT_EQ(log.visited_states.size(), replay.size() + 1);
  EXPECT_EQ(log.visited_states.front(), 0);
  EXPECT_TRUE(std::equal(replay.begin(), replay.end(), log.visited_states.begin() + 1));
}
