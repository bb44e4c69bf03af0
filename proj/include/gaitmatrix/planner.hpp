#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gaitmatrix/errors.hpp"
#include "gaitmatrix/statecore.hpp"

namespace gaitmatrix::planner {

using statecore::RewardMatrix;

/// Exact ratio of two small integers; denominator kept positive.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
};

/// Ordered path of state indices. states has N+1 entries for N transitions;
/// a periodic sequence returns to its first state.
struct ControlSequence {
  std::vector<int> states;
  bool periodic = false;

  int transition_count() const { return static_cast<int>(states.size()) - 1; }
  bool operator==(const ControlSequence&) const = default;
};

/// Throws ValidityError naming the first offending pair if the sequence
/// traverses a forbidden transition, InputError on structural problems.
inline void validate_sequence(const ControlSequence& seq, const RewardMatrix& m) {
  if (seq.states.size() < 2) {
    throw InputError("control sequence needs at least one transition");
  }
  if (seq.periodic && seq.states.front() != seq.states.back()) {
    throw InputError("periodic sequence must start and end in the same state");
  }
  for (std::size_t t = 1; t < seq.states.size(); ++t) {
    const int from = seq.states[t - 1];
    const int to = seq.states[t];
    if (from < 0 || from >= m.n() || to < 0 || to >= m.n()) {
      throw InputError("sequence state index out of range at step " + std::to_string(t));
    }
    if (!m.allowed(from, to)) {
      throw ValidityError("sequence traverses forbidden transition " + std::to_string(from) +
                          "->" + std::to_string(to) + " at step " + std::to_string(t));
    }
  }
}

/// Total translation reward of a sequence: the sum of the traversed matrix
/// entries.
inline int sequence_reward(const ControlSequence& seq, const RewardMatrix& m) {
  validate_sequence(seq, m);
  int total = 0;
  for (std::size_t t = 1; t < seq.states.size(); ++t) {
    total += m.reward(seq.states[t - 1], seq.states[t]);
  }
  return total;
}

enum class Sense { kMaximize, kMinimize };

/// Canonical ordering of candidate cycles: fewer transitions first, then
/// lexicographically smallest index sequence.
inline bool sequence_order(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// Result of the bounded-length periodic search.
struct PlanResult {
  int best_reward = 0;
  std::vector<ControlSequence> cycles;  // all optima, canonical order; front() is canonical
  long long explored = 0;               // number of candidate cycles examined
  int l_max = 0;
  bool feasible = false;                // false when no allowed cycle exists at all
};

namespace detail {

constexpr int kLMaxGuard = 8;

inline void check_cycle_guards(const RewardMatrix& m, int l_max) {
  if (l_max < 1) throw InputError("l_max must be >= 1");
  if (l_max > kLMaxGuard) {
    throw CapacityError("l_max " + std::to_string(l_max) + " exceeds the exhaustive-search guard " +
                        std::to_string(kLMaxGuard));
  }
  if (m.n() > statecore::StateSpace::kMaxCardinality) {
    throw CapacityError("state count " + std::to_string(m.n()) + " exceeds the search guard");
  }
}

}  // namespace detail

/// Exhaustive optimum over periodic sequences of at most l_max transitions,
/// from any start state. Candidates are closed trails: a cycle may revisit
/// states but never repeats a directed transition (repeating one is the same
/// gait executed twice). Self-transitions count as cycles of length one, so
/// an unmasked diagonal always provides the stationary reward-0 fallback.
/// When no allowed cycle exists at all the result carries feasible=false,
/// best_reward 0 and no cycles.
inline PlanResult optimal_cycle(const RewardMatrix& m, int l_max, Sense sense = Sense::kMaximize) {
  detail::check_cycle_guards(m, l_max);
  const int n = m.n();

  PlanResult result;
  result.l_max = l_max;

  const auto better = [sense](int a, int b) {
    return sense == Sense::kMaximize ? a > b : a < b;
  };

  std::vector<std::uint8_t> used(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> path;
  std::vector<std::vector<int>> best_paths;
  int best = 0;
  bool any = false;

  // Depth-first over trails anchored at each start state. A rotation of a
  // cycle is a distinct sequence and is enumerated from its own anchor, so
  // every candidate appears exactly once.
  auto dfs = [&](auto&& self, int start, int vertex) -> void {
    if (static_cast<int>(path.size()) - 1 >= l_max) return;
    for (int next = 0; next < n; ++next) {
      if (!m.allowed(vertex, next)) continue;
      const std::size_t e = static_cast<std::size_t>(vertex) * n + next;
      if (used[e]) continue;
      used[e] = 1;
      path.push_back(next);
      if (next == start) {
        ++result.explored;
        int reward = 0;
        for (std::size_t t = 1; t < path.size(); ++t) {
          reward += m.reward(path[t - 1], path[t]);
        }
        if (!any || better(reward, best)) {
          any = true;
          best = reward;
          best_paths.clear();
          best_paths.push_back(path);
        } else if (reward == best) {
          best_paths.push_back(path);
        }
        // a trail may keep extending after touching the anchor
      }
      self(self, start, next);
      path.pop_back();
      used[e] = 0;
    }
  };

  // Backtracking leaves `used` clean between anchors.
  for (int start = 0; start < n; ++start) {
    path.assign(1, start);
    dfs(dfs, start, start);
  }

  if (!any) {
    result.best_reward = 0;
    result.feasible = false;
    return result;
  }

  std::sort(best_paths.begin(), best_paths.end(), sequence_order);
  result.best_reward = best;
  result.feasible = true;
  result.cycles.reserve(best_paths.size());
  for (auto& p : best_paths) {
    result.cycles.push_back(ControlSequence{std::move(p), true});
  }
  return result;
}

/// Independent enumeration oracle: lists every allowed periodic sequence of
/// at most l_max transitions together with its reward, by generating all
/// index tuples and filtering. Kept deliberately naive; optimal_cycle must
/// agree with the maximum of this list.
inline std::vector<std::pair<ControlSequence, int>> brute_force_cycles(const RewardMatrix& m,
                                                                       int l_max) {
  const int n = m.n();
  double budget = 1.0;
  for (int k = 0; k < l_max; ++k) budget *= n;
  if (budget > 1e7) {
    throw CapacityError("brute-force enumeration budget exceeded");
  }

  std::vector<std::pair<ControlSequence, int>> out;
  std::vector<int> tuple;

  auto emit_if_cycle = [&](const std::vector<int>& states) {
    if (states.front() != states.back()) return;
    // reject repeated directed transitions
    std::vector<std::pair<int, int>> seen;
    int reward = 0;
    for (std::size_t t = 1; t < states.size(); ++t) {
      const int a = states[t - 1];
      const int b = states[t];
      if (!m.allowed(a, b)) return;
      if (std::find(seen.begin(), seen.end(), std::make_pair(a, b)) != seen.end()) return;
      seen.emplace_back(a, b);
      reward += m.reward(a, b);
    }
    out.push_back({ControlSequence{states, true}, reward});
  };

  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      emit_if_cycle(tuple);
      return;
    }
    for (int v = 0; v < n; ++v) {
      tuple.push_back(v);
      self(self, remaining - 1);
      tuple.pop_back();
    }
  };

  for (int len = 1; len <= l_max; ++len) {
    for (int start = 0; start < n; ++start) {
      tuple.assign(1, start);
      rec(rec, len);
      tuple.clear();
    }
  }
  return out;
}

namespace detail {

constexpr long long kNegInf = std::numeric_limits<long long>::min() / 4;

struct Edge {
  int from;
  int to;
  int reward;
};

inline std::vector<Edge> allowed_edges(const RewardMatrix& m) {
  std::vector<Edge> edges;
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) {
      if (m.allowed(i, j)) edges.push_back({i, j, m.reward(i, j)});
    }
  }
  return edges;
}

/// Rotates a simple cycle so the smallest state index comes first and closes
/// it into a periodic ControlSequence.
inline ControlSequence canonical_cycle(std::vector<int> loop) {
  const auto min_it = std::min_element(loop.begin(), loop.end());
  std::rotate(loop.begin(), min_it, loop.end());
  loop.push_back(loop.front());
  return ControlSequence{std::move(loop), true};
}

}  // namespace detail

/// Maximum-mean cycle via Karp's recurrence over the allowed-transition
/// graph, multi-sourced so no strong-connectivity assumption is needed.
/// Returns a simple cycle achieving the optimum and its exact mean.
/// Restricting to simple cycles loses nothing: a closed walk that revisits a
/// state decomposes into simple cycles, and its mean is a weighted average
/// of theirs, so the best simple cycle is at least as good. The same
/// argument covers reward-per-time ratios in optimal_rate_cycle.
/// Throws InfeasibleError when the graph has no allowed cycle.
inline std::pair<ControlSequence, Rational> optimal_mean_cycle(const RewardMatrix& m) {
  const int n = m.n();
  const auto edges = detail::allowed_edges(m);
  if (edges.empty()) throw InfeasibleError("no feasible cycle: no allowed transitions");

  using detail::kNegInf;
  // F[k][v] = best reward of any k-transition walk ending at v.
  std::vector<std::vector<long long>> F(static_cast<std::size_t>(n) + 1,
                                        std::vector<long long>(n, kNegInf));
  std::fill(F[0].begin(), F[0].end(), 0);
  for (int k = 1; k <= n; ++k) {
    for (const auto& e : edges) {
      if (F[k - 1][e.from] == kNegInf) continue;
      F[k][e.to] = std::max(F[k][e.to], F[k - 1][e.from] + e.reward);
    }
  }

  bool found = false;
  Rational best(0, 1);
  for (int v = 0; v < n; ++v) {
    if (F[n][v] == kNegInf) continue;
    bool have_min = false;
    Rational worst(0, 1);
    for (int k = 0; k < n; ++k) {
      if (F[k][v] == kNegInf) continue;
      const Rational ratio(F[n][v] - F[k][v], n - k);
      if (!have_min || ratio < worst) {
        have_min = true;
        worst = ratio;
      }
    }
    if (have_min && (!found || best < worst)) {
      found = true;
      best = worst;
    }
  }
  if (!found) throw InfeasibleError("no feasible cycle in transition graph");

  // Extract a cycle of mean exactly `best`: under the shifted integer
  // weights W = den*reward - num, every cycle has total <= 0 and optimal
  // cycles have total 0, so they live in the tight subgraph of the
  // longest-walk potentials.
  std::vector<long long> h(n, 0);
  for (int round = 0; round < n + 1; ++round) {
    bool changed = false;
    for (const auto& e : edges) {
      const long long w = best.den * e.reward - best.num;
      if (h[e.from] + w > h[e.to]) {
        h[e.to] = h[e.from] + w;
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::vector<std::vector<int>> tight(n);
  for (const auto& e : edges) {
    const long long w = best.den * e.reward - best.num;
    if (h[e.from] + w == h[e.to]) tight[e.from].push_back(e.to);
  }

  // Any cycle of the tight subgraph has mean exactly `best`; find one by
  // iterative DFS with a gray stack.
  std::vector<int> color(n, 0);  // 0 white, 1 gray, 2 black
  std::vector<int> stack;
  std::vector<int> loop;
  auto dfs = [&](auto&& self, int v) -> bool {
    color[v] = 1;
    stack.push_back(v);
    for (int w : tight[v]) {
      if (color[w] == 1) {
        const auto it = std::find(stack.begin(), stack.end(), w);
        loop.assign(it, stack.end());
        return true;
      }
      if (color[w] == 0 && self(self, w)) return true;
    }
    stack.pop_back();
    color[v] = 2;
    return false;
  };
  for (int v = 0; v < n && loop.empty(); ++v) {
    if (color[v] == 0) dfs(dfs, v);
  }
  if (loop.empty()) {
    throw InfeasibleError("internal: tight subgraph lost the optimal cycle");
  }

  ControlSequence cycle = detail::canonical_cycle(std::move(loop));
  int reward = 0;
  for (std::size_t t = 1; t < cycle.states.size(); ++t) {
    reward += m.reward(cycle.states[t - 1], cycle.states[t]);
  }
  const Rational achieved(reward, cycle.transition_count());
  if (!(achieved == best)) {
    throw InfeasibleError("internal: extracted cycle mean disagrees with Karp optimum");
  }
  return {std::move(cycle), best};
}

/// Per-transition traversal times in seconds, dense n x n.
struct TransitionDurations {
  int n = 0;
  std::vector<double> seconds;  // row-major

  static TransitionDurations uniform(int n, double s) {
    return TransitionDurations{n, std::vector<double>(static_cast<std::size_t>(n) * n, s)};
  }

  double at(int from, int to) const {
    return seconds[static_cast<std::size_t>(from) * n + to];
  }
  double& at(int from, int to) { return seconds[static_cast<std::size_t>(from) * n + to]; }
};

/// Maximum reward-per-second cycle by parametric search: binary search on
/// the rate with positive-cycle detection on the reweighted graph
/// reward - rate*duration. The returned rate is the exact ratio of the
/// extracted cycle, which lies within 1e-9 of the optimum.
inline std::pair<ControlSequence, double> optimal_rate_cycle(const RewardMatrix& m,
                                                             const TransitionDurations& durations) {
  const int n = m.n();
  if (durations.n != n || durations.seconds.size() != static_cast<std::size_t>(n) * n) {
    throw InputError("duration table does not match matrix size");
  }
  const auto edges = detail::allowed_edges(m);
  if (edges.empty()) throw InfeasibleError("no feasible cycle: no allowed transitions");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& e : edges) {
    const double d = durations.at(e.from, e.to);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw InputError("nonpositive duration on allowed transition " + std::to_string(e.from) +
                       "->" + std::to_string(e.to));
    }
    lo = std::min(lo, e.reward / d);
    hi = std::max(hi, e.reward / d);
  }
  lo -= 1.0;
  hi += 1.0;

  std::vector<double> dist(n);
  std::vector<int> pred(n);

  // Relax n rounds from every vertex at once; a round-n improvement means a
  // cycle with positive reweighted total exists.
  auto positive_cycle_exists = [&](double rate) -> bool {
    std::fill(dist.begin(), dist.end(), 0.0);
    std::fill(pred.begin(), pred.end(), -1);
    bool improved = false;
    for (int round = 0; round < n; ++round) {
      improved = false;
      for (const auto& e : edges) {
        const double w = e.reward - rate * durations.at(e.from, e.to);
        if (dist[e.from] + w > dist[e.to]) {
          dist[e.to] = dist[e.from] + w;
          pred[e.to] = e.from;
          improved = true;
        }
      }
      if (!improved) return false;
    }
    return improved;
  };

  if (!positive_cycle_exists(lo)) {
    // No cycle at all: every cycle's rate exceeds lo by construction.
    throw InfeasibleError("no feasible cycle in transition graph");
  }
  for (int it = 0; it < 100 && (hi - lo) > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (positive_cycle_exists(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // Extract some positive cycle at rate lo from the predecessor graph; any
  // such cycle has ratio in (lo, optimum], i.e. within tolerance.
  positive_cycle_exists(lo);
  std::vector<int> loop;
  std::vector<int> mark(n, -1);
  for (int seed = 0; seed < n && loop.empty(); ++seed) {
    if (pred[seed] < 0) continue;
    std::fill(mark.begin(), mark.end(), -1);
    std::vector<int> chain;
    int v = seed;
    while (v >= 0 && mark[v] < 0) {
      mark[v] = static_cast<int>(chain.size());
      chain.push_back(v);
      v = pred[v];
    }
    if (v >= 0) {
      loop.assign(chain.begin() + mark[v], chain.end());
      std::reverse(loop.begin(), loop.end());  // pred chains run backwards
    }
  }
  if (loop.empty()) {
    throw InfeasibleError("internal: predecessor graph lost the positive cycle");
  }

  ControlSequence cycle = detail::canonical_cycle(std::move(loop));
  double reward = 0.0;
  double time = 0.0;
  for (std::size_t t = 1; t < cycle.states.size(); ++t) {
    reward += m.reward(cycle.states[t - 1], cycle.states[t]);
    time += durations.at(cycle.states[t - 1], cycle.states[t]);
  }
  return {std::move(cycle), reward / time};
}

/// Matrix with every reward negated; the mask is unchanged.
inline RewardMatrix negated(const RewardMatrix& m) {
  RewardMatrix out = m;
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) {
      if (m.allowed(i, j)) out.set_reward(i, j, -m.reward(i, j));
    }
  }
  return out;
}

}  // namespace gaitmatrix::planner
