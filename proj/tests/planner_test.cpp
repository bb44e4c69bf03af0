#include "gaitmatrix/planner.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "table_fixtures.hpp"

using namespace gaitmatrix;
using namespace gaitmatrix::planner;
using statecore::RewardMatrix;

namespace {

/// Random 4x4 matrix with rewards in {-1,0,+1} and a random mask; the
/// diagonal self-loop of state 0 stays allowed so at least one cycle exists.
RewardMatrix random_masked_matrix(std::mt19937& rng) {
  std::uniform_int_distribution<int> rew(-1, 1);
  std::uniform_int_distribution<int> coin(0, 3);
  RewardMatrix m(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (coin(rng) == 0 && !(i == 0 && j == 0)) {
        m.forbid(i, j);
      } else {
        m.set_reward(i, j, rew(rng));
      }
    }
  }
  return m;
}

/// Exact max mean over vertex-simple cycles, via the naive enumerator.
std::pair<bool, Rational> brute_max_mean(const RewardMatrix& m) {
  bool found = false;
  Rational best(0, 1);
  for (const auto& [seq, reward] : brute_force_cycles(m, m.n())) {
    bool simple = true;
    for (std::size_t a = 0; a + 1 < seq.states.size(); ++a) {
      for (std::size_t b = a + 1; b + 1 < seq.states.size(); ++b) {
        if (seq.states[a] == seq.states[b]) simple = false;
      }
    }
    if (!simple) continue;
    const Rational mean(reward, seq.transition_count());
    if (!found || best < mean) {
      found = true;
      best = mean;
    }
  }
  return {found, best};
}

}  // namespace

TEST(SequenceReward, MatchesTableFixtures) {
  EXPECT_EQ(sequence_reward(testfix::ct1(), testfix::r1()), 2);
  EXPECT_EQ(sequence_reward(testfix::ct2(), testfix::r2()), 2);
  EXPECT_EQ(sequence_reward(testfix::cl1(), testfix::t_loa()), 1);
  EXPECT_EQ(sequence_reward(testfix::cl2(), testfix::t_loa()), 1);
}

TEST(SequenceReward, ZeroMatrixGivesZero) {
  const RewardMatrix zero(4);
  EXPECT_EQ(sequence_reward(testfix::ct1(), zero), 0);
  EXPECT_EQ(sequence_reward({{0, 3, 2, 1, 0}, true}, zero), 0);
}

TEST(SequenceReward, NamesFirstForbiddenPair) {
  try {
    sequence_reward({{0, 1, 0}, true}, testfix::t_loa());
    FAIL() << "expected ValidityError";
  } catch (const ValidityError& e) {
    EXPECT_NE(std::string(e.what()).find("0->1"), std::string::npos);
  }
}

TEST(SequenceReward, StructuralErrors) {
  EXPECT_THROW(sequence_reward({{0}, false}, testfix::r1()), InputError);
  EXPECT_THROW(sequence_reward({{0, 1, 2}, true}, testfix::r1()), InputError);
  EXPECT_THROW(sequence_reward({{0, 7}, false}, testfix::r1()), InputError);
}

TEST(SequenceReward, RotationInvariant) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const RewardMatrix m = random_masked_matrix(rng);
    for (const auto& [seq, reward] : brute_force_cycles(m, 4)) {
      std::vector<int> loop(seq.states.begin(), seq.states.end() - 1);
      for (std::size_t r = 0; r < loop.size(); ++r) {
        std::rotate(loop.begin(), loop.begin() + 1, loop.end());
        std::vector<int> rotated = loop;
        rotated.push_back(loop.front());
        EXPECT_EQ(sequence_reward({rotated, true}, m), reward);
      }
    }
    break;  // one matrix with full rotation coverage is plenty
  }
}

TEST(OptimalCycle, R1AtThreeTransitions) {
  const PlanResult plan = optimal_cycle(testfix::r1(), 3);
  EXPECT_TRUE(plan.feasible);
  EXPECT_EQ(plan.best_reward, 2);
  ASSERT_FALSE(plan.cycles.empty());
  EXPECT_EQ(plan.cycles.front().states, testfix::ct1().states);
  EXPECT_GT(plan.explored, 0);
}

TEST(OptimalCycle, R1AtFourTransitionsBeatsTheThreeStepGait) {
  const PlanResult plan = optimal_cycle(testfix::r1(), 4);
  EXPECT_EQ(plan.best_reward, 3);
  EXPECT_EQ(plan.cycles.front().states, (std::vector<int>{0, 2, 3, 1, 0}));
}

TEST(OptimalCycle, LimbLossKeepsBothForwardGaits) {
  const PlanResult plan = optimal_cycle(testfix::t_loa(), 5);
  EXPECT_EQ(plan.best_reward, 1);
  const auto contains = [&](const ControlSequence& seq) {
    return std::find_if(plan.cycles.begin(), plan.cycles.end(), [&](const ControlSequence& c) {
             return c.states == seq.states;
           }) != plan.cycles.end();
  };
  EXPECT_TRUE(contains(testfix::cl1()));
  EXPECT_TRUE(contains(testfix::cl2()));
}

TEST(OptimalCycle, MinimizeServesBackwardLocomotion) {
  const PlanResult plan = optimal_cycle(testfix::r1(), 3, Sense::kMinimize);
  EXPECT_EQ(plan.best_reward, -2);
  EXPECT_EQ(plan.cycles.front().states, testfix::ct2().states);
}

TEST(OptimalCycle, FullyMaskedIsInfeasible) {
  RewardMatrix m = testfix::r1();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m.forbid(i, j);
  }
  const PlanResult plan = optimal_cycle(m, 4);
  EXPECT_FALSE(plan.feasible);
  EXPECT_EQ(plan.best_reward, 0);
  EXPECT_TRUE(plan.cycles.empty());
}

TEST(OptimalCycle, Guards) {
  EXPECT_THROW(optimal_cycle(testfix::r1(), 0), InputError);
  EXPECT_THROW(optimal_cycle(testfix::r1(), 9), CapacityError);
}

TEST(OptimalCycle, SingleTransitionBudgetFindsSelfLoops) {
  const PlanResult plan = optimal_cycle(testfix::r1(), 1);
  EXPECT_TRUE(plan.feasible);
  EXPECT_EQ(plan.best_reward, 0);
  EXPECT_EQ(plan.cycles.front().states, (std::vector<int>{0, 0}));
  EXPECT_EQ(plan.cycles.size(), 4u);  // every unmasked diagonal entry
}

TEST(OptimalCycle, MonotoneInLmax) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const RewardMatrix m = random_masked_matrix(rng);
    int prev = std::numeric_limits<int>::min();
    for (int l = 1; l <= 5; ++l) {
      const PlanResult plan = optimal_cycle(m, l);
      if (plan.feasible) {
        if (prev != std::numeric_limits<int>::min()) {
          EXPECT_GE(plan.best_reward, prev);
        }
        prev = plan.best_reward;
      }
    }
  }
}

TEST(OptimalCycle, ReturnedCyclesSurviveRevalidation) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const RewardMatrix m = random_masked_matrix(rng);
    const PlanResult plan = optimal_cycle(m, 4);
    for (const auto& cycle : plan.cycles) {
      EXPECT_EQ(sequence_reward(cycle, m), plan.best_reward);
    }
  }
}

TEST(BruteForce, R2AtThreeTransitions) {
  const auto all = brute_force_cycles(testfix::r2(), 3);
  int best = std::numeric_limits<int>::min();
  for (const auto& [seq, reward] : all) best = std::max(best, reward);
  EXPECT_EQ(best, 2);
  const auto it = std::find_if(all.begin(), all.end(), [&](const auto& entry) {
    return entry.first.states == testfix::ct2().states;
  });
  ASSERT_NE(it, all.end());
  EXPECT_EQ(it->second, 2);
}

TEST(BruteForce, TwoStateSwap) {
  RewardMatrix m(2);
  m.set_reward(0, 1, 1);
  m.set_reward(1, 0, 1);
  const auto all = brute_force_cycles(m, 2);
  int best = std::numeric_limits<int>::min();
  for (const auto& [seq, reward] : all) best = std::max(best, reward);
  EXPECT_EQ(best, 2);
}

TEST(BruteForce, FullyMaskedIsEmpty) {
  RewardMatrix m(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.forbid(i, j);
  }
  EXPECT_TRUE(brute_force_cycles(m, 3).empty());
}

TEST(BruteForce, BudgetGuard) {
  const RewardMatrix m(16);
  EXPECT_THROW(brute_force_cycles(m, 8), CapacityError);
}

TEST(OptimalCycle, AgreesWithBruteForceOracleOnFixtureInstances) {
  const std::vector<std::pair<RewardMatrix, int>> instances = {
      {testfix::r1(), 3}, {testfix::r1(), 4}, {testfix::r2(), 3}, {testfix::r3(), 4},
      {testfix::t_loa(), 5}};
  for (const auto& [m, l_max] : instances) {
    const auto plan = optimal_cycle(m, l_max);
    int best = std::numeric_limits<int>::min();
    for (const auto& [seq, reward] : brute_force_cycles(m, l_max)) {
      best = std::max(best, reward);
    }
    EXPECT_EQ(plan.best_reward, best);
  }
}

TEST(OptimalCycle, AgreesWithBruteForceOracle) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const RewardMatrix m = random_masked_matrix(rng);
    const PlanResult plan = optimal_cycle(m, 4);
    const auto all = brute_force_cycles(m, 4);
    ASSERT_FALSE(all.empty());
    int best = std::numeric_limits<int>::min();
    for (const auto& [seq, reward] : all) best = std::max(best, reward);
    EXPECT_TRUE(plan.feasible);
    EXPECT_EQ(plan.best_reward, best);
  }
}

TEST(OptimalCycle, NegationDuality) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const RewardMatrix m = random_masked_matrix(rng);
    const PlanResult mn = optimal_cycle(m, 4, Sense::kMinimize);
    const PlanResult mx = optimal_cycle(negated(m), 4, Sense::kMaximize);
    EXPECT_EQ(mn.best_reward, -mx.best_reward);
  }
}

TEST(MeanCycle, R1FourCycle) {
  const auto [cycle, mean] = optimal_mean_cycle(testfix::r1());
  EXPECT_EQ(mean, Rational(3, 4));
  EXPECT_EQ(cycle.states, (std::vector<int>{0, 2, 3, 1, 0}));
}

TEST(MeanCycle, ZeroMatrixSelfLoop) {
  const RewardMatrix zero(4);
  const auto [cycle, mean] = optimal_mean_cycle(zero);
  EXPECT_EQ(mean, Rational(0, 1));
  EXPECT_EQ(cycle.transition_count(), 1);
  EXPECT_EQ(cycle.states.front(), cycle.states.back());
}

TEST(MeanCycle, LimbLossHalf) {
  const auto [cycle, mean] = optimal_mean_cycle(testfix::t_loa());
  EXPECT_EQ(mean, Rational(1, 2));
  EXPECT_EQ(cycle.states, (std::vector<int>{2, 3, 2}));
}

TEST(MeanCycle, InfeasibleWithoutCycles) {
  RewardMatrix m(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.forbid(i, j);
  }
  m.allow(0, 1);  // an edge but no cycle
  EXPECT_THROW(optimal_mean_cycle(m), InfeasibleError);
}

TEST(MeanCycle, AgreesWithSimpleCycleOracleOnFixtures) {
  for (const RewardMatrix& m :
       {testfix::r1(), testfix::r2(), testfix::r3(), testfix::t_loa()}) {
    const auto [found, expected] = brute_max_mean(m);
    ASSERT_TRUE(found);
    const auto [cycle, mean] = optimal_mean_cycle(m);
    EXPECT_EQ(mean, expected);
  }
}

TEST(MeanCycle, AgreesWithSimpleCycleOracle) {
  std::mt19937 rng(555);
  for (int trial = 0; trial < 200; ++trial) {
    const RewardMatrix m = random_masked_matrix(rng);
    const auto [found, expected] = brute_max_mean(m);
    ASSERT_TRUE(found);
    const auto [cycle, mean] = optimal_mean_cycle(m);
    EXPECT_EQ(mean, expected) << "trial " << trial;
    EXPECT_EQ(Rational(sequence_reward(cycle, m), cycle.transition_count()), mean);
  }
}

TEST(RateCycle, UniformDurationsReduceToMean) {
  const auto durations = TransitionDurations::uniform(4, 1.0);
  const auto [cycle, rate] = optimal_rate_cycle(testfix::r1(), durations);
  EXPECT_NEAR(rate, 0.75, 1e-9);
  EXPECT_EQ(cycle.states, (std::vector<int>{0, 2, 3, 1, 0}));
}

TEST(RateCycle, SlowTransitionChangesTheWinner) {
  auto durations = TransitionDurations::uniform(4, 1.0);
  durations.at(0, 2) = 10.0;
  const auto [cycle, rate] = optimal_rate_cycle(testfix::t_loa(), durations);
  EXPECT_NEAR(rate, 0.5, 1e-9);
  EXPECT_EQ(cycle.states, (std::vector<int>{2, 3, 2}));
}

TEST(RateCycle, LonelyZeroSelfLoop) {
  RewardMatrix m(2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m.forbid(i, j);
  }
  m.allow(1, 1);
  const auto durations = TransitionDurations::uniform(2, 2.0);
  const auto [cycle, rate] = optimal_rate_cycle(m, durations);
  EXPECT_NEAR(rate, 0.0, 1e-9);
  EXPECT_EQ(cycle.states, (std::vector<int>{1, 1}));
}

TEST(RateCycle, InputErrors) {
  auto durations = TransitionDurations::uniform(4, 1.0);
  durations.at(1, 0) = 0.0;
  EXPECT_THROW(optimal_rate_cycle(testfix::r1(), durations), InputError);
  EXPECT_THROW(optimal_rate_cycle(testfix::r1(), TransitionDurations::uniform(3, 1.0)),
               InputError);
}

TEST(RateCycle, WithinToleranceOfRatioOracle) {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> dur(0.1, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const RewardMatrix m = random_masked_matrix(rng);
    auto durations = TransitionDurations::uniform(4, 1.0);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) durations.at(i, j) = dur(rng);
    }
    // oracle: best ratio over simple cycles
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [seq, reward] : brute_force_cycles(m, 4)) {
      bool simple = true;
      for (std::size_t a = 0; a + 1 < seq.states.size(); ++a) {
        for (std::size_t b = a + 1; b + 1 < seq.states.size(); ++b) {
          if (seq.states[a] == seq.states[b]) simple = false;
        }
      }
      if (!simple) continue;
      double time = 0.0;
      for (std::size_t t = 1; t < seq.states.size(); ++t) {
        time += durations.at(seq.states[t - 1], seq.states[t]);
      }
      best = std::max(best, reward / time);
    }
    const auto [cycle, rate] = optimal_rate_cycle(m, durations);
    EXPECT_NEAR(rate, best, 1e-7) << "trial " << trial;
  }
}
