#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaitmatrix/errors.hpp"
#include "gaitmatrix/statecore.hpp"

namespace gaitmatrix::estimator {

using statecore::RewardMatrix;

/// Signed displacement to discretized reward: at or beyond the deadband the
/// boundary maps to the nonzero reward, matching the inclusive critical-angle
/// convention used for state classification.
inline int discretize(double displacement_mm, double deadband_mm) {
  if (!(deadband_mm > 0.0)) throw InputError("deadband must be positive");
  if (!std::isfinite(displacement_mm)) throw InputError("displacement must be finite");
  if (displacement_mm >= deadband_mm) return 1;
  if (displacement_mm <= -deadband_mm) return -1;
  return 0;
}

/// One observed transition trial.
struct TrialRecord {
  int from_index = 0;
  int to_index = 0;
  double displacement_mm = 0.0;
  double timestamp_s = 0.0;
  std::string tag;
};

enum class Aggregation { kMedian, kMajority };

struct EstimatorConfig {
  double deadband_mm = 0.1;
  Aggregation aggregation = Aggregation::kMedian;
  /// Half-life in seconds for recency weighting; empty = uniform weights.
  std::optional<double> recency_halflife_s;
  int min_trials = 1;
};

/// Per-pair observation counts and the pairs left masked for lack of data.
/// Carries the deadband it was estimated with so reports stay interpretable.
struct CoverageReport {
  int n = 0;
  double deadband_mm = 0.0;
  std::vector<long long> counts;  // row-major
  std::vector<std::pair<int, int>> masked;

  long long count(int from, int to) const {
    return counts[static_cast<std::size_t>(from) * n + to];
  }
  long long observed_pairs() const {
    long long k = 0;
    for (long long c : counts) {
      if (c > 0) ++k;
    }
    return k;
  }
  long long total_pairs() const { return static_cast<long long>(n) * n; }
};

/// Running per-pair observation history; the estimate of a pair is a pure
/// function of this multiset, which is what makes batch and online
/// estimation agree.
struct EstimatorStatistics {
  int n = 0;
  std::vector<std::vector<std::pair<double, double>>> samples;  // (displacement, timestamp)

  explicit EstimatorStatistics(int n_states = 0)
      : n(n_states), samples(static_cast<std::size_t>(n_states) * n_states) {}

  std::vector<std::pair<double, double>>& at(int from, int to) {
    return samples[static_cast<std::size_t>(from) * n + to];
  }
  const std::vector<std::pair<double, double>>& at(int from, int to) const {
    return samples[static_cast<std::size_t>(from) * n + to];
  }
};

namespace detail {

/// Plain median with the midpoint convention for even counts.
inline double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size();
  if (k % 2 == 1) return values[k / 2];
  return 0.5 * (values[k / 2 - 1] + values[k / 2]);
}

/// Lower weighted median: smallest value whose cumulative weight reaches
/// half the total. Weights are 2^(t/halflife) up to a common factor, so the
/// result does not depend on any reference time.
inline double weighted_median(std::vector<std::pair<double, double>> samples, double halflife_s) {
  double t_ref = samples.front().second;
  for (const auto& s : samples) t_ref = std::max(t_ref, s.second);
  std::vector<std::pair<double, double>> weighted;  // (value, weight)
  double total = 0.0;
  for (const auto& [d, t] : samples) {
    const double w = std::exp2((t - t_ref) / halflife_s);
    weighted.push_back({d, w});
    total += w;
  }
  std::sort(weighted.begin(), weighted.end());
  double cum = 0.0;
  for (const auto& [value, weight] : weighted) {
    cum += weight;
    if (cum >= 0.5 * total) return value;
  }
  return weighted.back().first;
}

/// Majority vote over already-discretized rewards; an exactly split vote is
/// called 0.
inline int majority_reward(const std::vector<std::pair<double, double>>& samples,
                           double deadband_mm) {
  std::vector<int> votes;
  votes.reserve(samples.size());
  for (const auto& [d, t] : samples) votes.push_back(discretize(d, deadband_mm));
  std::sort(votes.begin(), votes.end());
  const std::size_t k = votes.size();
  if (k % 2 == 1) return votes[k / 2];
  const int lo = votes[k / 2 - 1];
  const int hi = votes[k / 2];
  return lo == hi ? lo : 0;
}

inline int estimate_pair(const std::vector<std::pair<double, double>>& samples,
                         const EstimatorConfig& cfg) {
  if (cfg.aggregation == Aggregation::kMajority) {
    return majority_reward(samples, cfg.deadband_mm);
  }
  double agg;
  if (cfg.recency_halflife_s) {
    agg = weighted_median(samples, *cfg.recency_halflife_s);
  } else {
    std::vector<double> values;
    values.reserve(samples.size());
    for (const auto& [d, t] : samples) values.push_back(d);
    agg = median(std::move(values));
  }
  return discretize(agg, cfg.deadband_mm);
}

inline void check_trial(const TrialRecord& trial, int n, std::size_t position) {
  if (trial.from_index < 0 || trial.from_index >= n || trial.to_index < 0 || trial.to_index >= n) {
    throw InputError("trial " + std::to_string(position) + " (" + std::to_string(trial.from_index) +
                     "->" + std::to_string(trial.to_index) + ", tag '" + trial.tag +
                     "') has state index out of range for n=" + std::to_string(n));
  }
  if (!std::isfinite(trial.displacement_mm)) {
    throw InputError("trial " + std::to_string(position) + " has non-finite displacement");
  }
}

/// Re-derives one matrix entry from its observation history. Pairs with too
/// few observations stay masked; masked entries carry reward 0.
inline void rederive_entry(RewardMatrix& m, const EstimatorStatistics& stats, int from, int to,
                           const EstimatorConfig& cfg) {
  const auto& samples = stats.at(from, to);
  if (static_cast<int>(samples.size()) >= cfg.min_trials) {
    m.allow(from, to);
    m.set_reward(from, to, estimate_pair(samples, cfg));
  } else {
    m.forbid(from, to);
  }
}

}  // namespace detail

/// Estimates a full reward matrix from trial observations. Every pair needs
/// at least min_trials observations to be trusted; the rest are masked and
/// reported, since absence of data is not a zero-reward claim.
inline std::pair<RewardMatrix, CoverageReport> estimate_matrix(
    const std::vector<TrialRecord>& trials, int n, const EstimatorConfig& cfg) {
  if (n < 1) throw InputError("state count must be positive");
  if (cfg.min_trials < 1) throw InputError("min_trials must be >= 1");

  EstimatorStatistics stats(n);
  for (std::size_t i = 0; i < trials.size(); ++i) {
    detail::check_trial(trials[i], n, i);
    stats.at(trials[i].from_index, trials[i].to_index)
        .push_back({trials[i].displacement_mm, trials[i].timestamp_s});
  }

  RewardMatrix m(n);
  CoverageReport coverage;
  coverage.n = n;
  coverage.deadband_mm = cfg.deadband_mm;
  coverage.counts.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      coverage.counts[static_cast<std::size_t>(i) * n + j] =
          static_cast<long long>(stats.at(i, j).size());
      detail::rederive_entry(m, stats, i, j, cfg);
      if (!m.allowed(i, j)) coverage.masked.push_back({i, j});
    }
  }
  return {std::move(m), std::move(coverage)};
}

/// Folds one trial into the running statistics and re-derives that single
/// entry; all other entries are untouched. Folding a trial list through this
/// function yields exactly the batch estimate_matrix result.
inline std::pair<RewardMatrix, EstimatorStatistics> update_online(
    const RewardMatrix& current, const EstimatorStatistics& stats, const TrialRecord& trial,
    const EstimatorConfig& cfg) {
  if (stats.n != current.n()) throw InputError("statistics dimension mismatch");
  detail::check_trial(trial, current.n(), 0);

  EstimatorStatistics next_stats = stats;
  next_stats.at(trial.from_index, trial.to_index)
      .push_back({trial.displacement_mm, trial.timestamp_s});

  RewardMatrix next = current;
  detail::rederive_entry(next, next_stats, trial.from_index, trial.to_index, cfg);
  return {std::move(next), std::move(next_stats)};
}

}  // namespace gaitmatrix::estimator
