#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gaitmatrix/errors.hpp"

namespace gaitmatrix::statecore {

/// One variable-friction contact: an ordered list of critical contact angles
/// and the discrete friction coefficient that applies between each pair of
/// neighbouring thresholds. Two coefficients and one threshold give the
/// basic binary mechanism; more thresholds give multi-level mechanisms.
class MechanismSpec {
 public:
  MechanismSpec(std::vector<double> thresholds, std::vector<double> friction_coefficients,
                std::string label = "")
      : thresholds_(std::move(thresholds)),
        friction_coefficients_(std::move(friction_coefficients)),
        label_(std::move(label)) {
    if (thresholds_.empty()) {
      throw InputError("mechanism '" + label_ + "': needs at least one critical angle");
    }
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < thresholds_.size(); ++i) {
      const double t = thresholds_[i];
      if (!std::isfinite(t) || t <= -half_pi || t >= half_pi) {
        throw InputError("mechanism '" + label_ + "': critical angle " + std::to_string(t) +
                         " outside (-pi/2, pi/2)");
      }
      if (i > 0 && !(thresholds_[i - 1] < t)) {
        throw InputError("mechanism '" + label_ + "': critical angles must strictly increase");
      }
    }
    if (friction_coefficients_.size() != thresholds_.size() + 1) {
      throw InputError("mechanism '" + label_ + "': expected " +
                       std::to_string(thresholds_.size() + 1) + " friction coefficients, got " +
                       std::to_string(friction_coefficients_.size()));
    }
    for (double mu : friction_coefficients_) {
      if (!std::isfinite(mu) || mu <= 0.0) {
        throw InputError("mechanism '" + label_ + "': friction coefficients must be positive");
      }
    }
  }

  const std::vector<double>& thresholds() const { return thresholds_; }
  const std::vector<double>& friction_coefficients() const { return friction_coefficients_; }
  const std::string& label() const { return label_; }
  int level_count() const { return static_cast<int>(thresholds_.size()) + 1; }

  double friction_at_level(int level) const {
    if (level < 0 || level >= level_count()) {
      throw InputError("friction level " + std::to_string(level) + " out of range");
    }
    return friction_coefficients_[static_cast<std::size_t>(level)];
  }

  bool operator==(const MechanismSpec&) const = default;

 private:
  std::vector<double> thresholds_;
  std::vector<double> friction_coefficients_;
  std::string label_;
};

/// Discrete state of one friction mechanism.
struct MechanismState {
  int level = 0;
  bool operator==(const MechanismState&) const = default;
};

/// Classifies a contact angle into a friction level: the level is the number
/// of critical angles at or below psi, so the boundary psi == psi* lands on
/// the higher level.
inline MechanismState state_from_angle(double psi, const MechanismSpec& spec) {
  if (!std::isfinite(psi)) {
    throw InputError("contact angle must be finite");
  }
  int level = 0;
  for (double t : spec.thresholds()) {
    if (psi >= t) ++level;
  }
  return MechanismState{level};
}

/// Ordered collection of friction mechanisms; mechanism 0 is the left/rear
/// end of the body and is the most significant digit of the state string.
class StateSpace {
 public:
  explicit StateSpace(std::vector<MechanismSpec> mechanisms)
      : mechanisms_(std::move(mechanisms)) {
    if (mechanisms_.empty()) {
      throw InputError("state space needs at least one mechanism");
    }
    long long card = 1;
    for (const auto& m : mechanisms_) {
      card *= m.level_count();
      if (card > kMaxCardinality) {
        throw CapacityError("state-space cardinality exceeds " + std::to_string(kMaxCardinality));
      }
    }
    cardinality_ = static_cast<int>(card);
  }

  static constexpr long long kMaxCardinality = 4096;

  const std::vector<MechanismSpec>& mechanisms() const { return mechanisms_; }
  std::size_t mechanism_count() const { return mechanisms_.size(); }
  int cardinality() const { return cardinality_; }

 private:
  std::vector<MechanismSpec> mechanisms_;
  int cardinality_ = 0;
};

/// Tuple of per-mechanism friction levels, one per mechanism of a StateSpace.
struct RobotState {
  std::vector<MechanismState> levels;
  bool operator==(const RobotState&) const = default;
};

/// Mixed-radix index of a robot state; mechanism 0 is the most significant
/// digit, so for two binary mechanisms (00)->0, (01)->1, (10)->2, (11)->3.
inline int index_of(const RobotState& state, const StateSpace& space) {
  if (state.levels.size() != space.mechanism_count()) {
    throw InputError("robot state has " + std::to_string(state.levels.size()) +
                     " mechanisms, space expects " + std::to_string(space.mechanism_count()));
  }
  int index = 0;
  for (std::size_t i = 0; i < state.levels.size(); ++i) {
    const int count = space.mechanisms()[i].level_count();
    const int level = state.levels[i].level;
    if (level < 0 || level >= count) {
      throw InputError("mechanism " + std::to_string(i) + " level " + std::to_string(level) +
                       " out of range [0," + std::to_string(count) + ")");
    }
    index = index * count + level;
  }
  return index;
}

/// Inverse of index_of.
inline RobotState state_of(int index, const StateSpace& space) {
  if (index < 0 || index >= space.cardinality()) {
    throw InputError("state index " + std::to_string(index) + " out of range [0," +
                     std::to_string(space.cardinality()) + ")");
  }
  RobotState state;
  state.levels.resize(space.mechanism_count());
  for (std::size_t i = space.mechanism_count(); i-- > 0;) {
    const int count = space.mechanisms()[i].level_count();
    state.levels[i].level = index % count;
    index /= count;
  }
  return state;
}

/// Renders a state as its digit string, e.g. "(10)". Mechanisms with more
/// than ten levels fall back to comma separation.
inline std::string state_string(const RobotState& state, const StateSpace& space) {
  bool wide = false;
  for (const auto& m : space.mechanisms()) {
    if (m.level_count() > 10) wide = true;
  }
  std::string out = "(";
  for (std::size_t i = 0; i < state.levels.size(); ++i) {
    if (wide && i > 0) out += ',';
    out += std::to_string(state.levels[i].level);
  }
  out += ')';
  return out;
}

inline std::string state_string(int index, const StateSpace& space) {
  return state_string(state_of(index, space), space);
}

/// "index:(digits)" form used in reports, e.g. "2:(10)".
inline std::string state_label(int index, const StateSpace& space) {
  return std::to_string(index) + ":" + state_string(index, space);
}

/// Parses a state given either as a bare index ("2") or a digit string
/// ("(10)", with commas for wide level counts).
inline int parse_state(const std::string& text, const StateSpace& space) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw InputError("empty state token");
  if (s.front() != '(') {
    try {
      std::size_t pos = 0;
      const int index = std::stoi(s, &pos);
      if (pos != s.size()) throw InputError("trailing characters in state index '" + text + "'");
      if (index < 0 || index >= space.cardinality()) {
        throw InputError("state index " + std::to_string(index) + " out of range");
      }
      return index;
    } catch (const std::invalid_argument&) {
      throw InputError("cannot parse state '" + text + "'");
    } catch (const std::out_of_range&) {
      throw InputError("cannot parse state '" + text + "'");
    }
  }
  if (s.back() != ')') throw InputError("unterminated state string '" + text + "'");
  const std::string body = s.substr(1, s.size() - 2);
  std::vector<int> digits;
  if (body.find(',') != std::string::npos) {
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) throw InputError("empty level in state string '" + text + "'");
      digits.push_back(std::stoi(tok));
    }
  } else {
    for (char c : body) {
      if (c < '0' || c > '9') throw InputError("bad digit in state string '" + text + "'");
      digits.push_back(c - '0');
    }
  }
  if (digits.size() != space.mechanism_count()) {
    throw InputError("state string '" + text + "' has " + std::to_string(digits.size()) +
                     " digits, expected " + std::to_string(space.mechanism_count()));
  }
  RobotState state;
  for (int d : digits) state.levels.push_back(MechanismState{d});
  return index_of(state, space);
}

/// One failed invariant found by validate().
struct Violation {
  int row = -1;
  int col = -1;
  std::string message;
};

/// Square matrix of discretized translation rewards in {-1, 0, +1} with a
/// forbidden-transition mask. Row i, column j is the transition from state
/// index i to state index j. Forbidden entries carry reward 0 and are never
/// read by planners. The type itself admits out-of-range values so that
/// validate() can report them instead of aborting.
class RewardMatrix {
 public:
  /// n x n matrix with every transition allowed at reward 0.
  explicit RewardMatrix(int n)
      : n_(n), rewards_(checked_size(n), 0), allowed_(checked_size(n), 1) {}

  RewardMatrix(int n, std::vector<int> rewards, std::vector<std::uint8_t> allowed)
      : n_(n), rewards_(std::move(rewards)), allowed_(std::move(allowed)) {
    if (rewards_.size() != checked_size(n) || allowed_.size() != rewards_.size()) {
      throw InputError("reward matrix storage does not match n=" + std::to_string(n));
    }
  }

  int n() const { return n_; }

  int reward(int from, int to) const { return rewards_[flat(from, to)]; }
  bool allowed(int from, int to) const { return allowed_[flat(from, to)] != 0; }

  void set_reward(int from, int to, int reward) { rewards_[flat(from, to)] = reward; }

  /// Forbids a transition; the stored reward is zeroed to keep the mask
  /// convention (forbidden entries carry reward 0).
  void forbid(int from, int to) {
    const std::size_t k = flat(from, to);
    allowed_[k] = 0;
    rewards_[k] = 0;
  }

  void allow(int from, int to) { allowed_[flat(from, to)] = 1; }

  const std::vector<int>& rewards_row_major() const { return rewards_; }
  const std::vector<std::uint8_t>& allowed_row_major() const { return allowed_; }

  bool operator==(const RewardMatrix&) const = default;

 private:
  static std::size_t checked_size(int n) {
    if (n < 1 || n > StateSpace::kMaxCardinality) {
      throw InputError("reward matrix size " + std::to_string(n) + " out of range");
    }
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }

  std::size_t flat(int from, int to) const {
    if (from < 0 || from >= n_ || to < 0 || to >= n_) {
      throw InputError("transition (" + std::to_string(from) + "," + std::to_string(to) +
                       ") out of range for n=" + std::to_string(n_));
    }
    return static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(to);
  }

  int n_;
  std::vector<int> rewards_;
  std::vector<std::uint8_t> allowed_;
};

/// Copy of m with the listed transitions forbidden. Allowed entries keep
/// their rewards untouched; masking an already-masked entry is a no-op.
inline RewardMatrix apply_mask(const RewardMatrix& m,
                               const std::vector<std::pair<int, int>>& forbidden) {
  RewardMatrix out = m;
  for (const auto& [from, to] : forbidden) {
    out.forbid(from, to);
  }
  return out;
}

/// Checks every RewardMatrix invariant and returns one record per failure.
/// Never throws; an empty result means the matrix is well formed.
inline std::vector<Violation> validate(const RewardMatrix& m) {
  std::vector<Violation> out;
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) {
      const int r = m.reward(i, j);
      if (r < -1 || r > 1) {
        out.push_back({i, j, "reward " + std::to_string(r) + " outside {-1,0,+1}"});
      }
      if (!m.allowed(i, j) && r != 0) {
        out.push_back({i, j, "forbidden entry carries nonzero reward " + std::to_string(r)});
      }
    }
  }
  return out;
}

/// As validate(m), plus the dimension check against the space the matrix was
/// built for.
inline std::vector<Violation> validate(const RewardMatrix& m, const StateSpace& space) {
  std::vector<Violation> out = validate(m);
  if (m.n() != space.cardinality()) {
    out.push_back({-1, -1,
                   "matrix size " + std::to_string(m.n()) + " does not match state-space cardinality " +
                       std::to_string(space.cardinality())});
  }
  return out;
}

/// The paper-style two-mechanism binary space used by all shipped fixtures.
/// Threshold and friction values are placeholders for fixtures that only
/// care about indexing, not physics.
inline StateSpace binary_pair_space() {
  const MechanismSpec left({0.26}, {1.2, 0.2}, "left");
  const MechanismSpec right({0.26}, {1.2, 0.2}, "right");
  return StateSpace({left, right});
}

}  // namespace gaitmatrix::statecore
