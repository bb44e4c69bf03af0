#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gaitmatrix/errors.hpp"
#include "gaitmatrix/estimator.hpp"
#include "gaitmatrix/statecore.hpp"

namespace gaitmatrix::quasistatic {

using statecore::MechanismSpec;
using statecore::RewardMatrix;
using statecore::RobotState;
using statecore::StateSpace;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Arc-length span of one bending actuator. Activation 1 imposes
/// max_curvature on every covered segment; overlapping spans add. A zero
/// max_curvature encodes a disabled (lost) actuator.
struct ActuatorSpan {
  double start_arc_mm = 0.0;
  double end_arc_mm = 0.0;
  double max_curvature_per_mm = 0.0;
  double activation = 0.0;  // resting command, used when no vector is given
};

/// Segmented planar beam with two variable-friction pads at its ends.
/// Pad 0 sits at arc position 0 (left/rear), pad 1 at the far end.
struct BodyModel {
  double length_mm = 80.0;
  double mass_g = 3.3;
  int segment_count = 40;
  std::vector<ActuatorSpan> actuators;
  std::vector<MechanismSpec> pads;  // exactly two
  double gravity_mps2 = 9.81;

  BodyModel(double length, double mass, int segments, std::vector<ActuatorSpan> acts,
            std::vector<MechanismSpec> pad_specs, double gravity = 9.81)
      : length_mm(length),
        mass_g(mass),
        segment_count(segments),
        actuators(std::move(acts)),
        pads(std::move(pad_specs)),
        gravity_mps2(gravity) {
    if (!(length_mm > 0.0) || !(mass_g > 0.0) || !(gravity_mps2 > 0.0)) {
      throw InputError("body length, mass and gravity must be positive");
    }
    if (segment_count < 8) throw InputError("segment_count must be >= 8");
    if (pads.size() != 2) throw InputError("body needs exactly two contact pads");
    for (const auto& a : actuators) {
      if (!(a.start_arc_mm >= 0.0) || !(a.end_arc_mm <= length_mm) ||
          !(a.start_arc_mm < a.end_arc_mm)) {
        throw InputError("actuator span must satisfy 0 <= start < end <= length");
      }
      if (!(a.max_curvature_per_mm >= 0.0) || !std::isfinite(a.max_curvature_per_mm)) {
        throw InputError("actuator max curvature must be finite and >= 0");
      }
      if (!(a.activation >= 0.0 && a.activation <= 1.0)) {
        throw InputError("actuator resting activation must lie in [0,1]");
      }
    }
  }

  double segment_length() const { return length_mm / segment_count; }
  std::vector<double> rest_activation() const {
    std::vector<double> a;
    a.reserve(actuators.size());
    for (const auto& s : actuators) a.push_back(s.activation);
    return a;
  }
};

/// The robot state space induced by the two pads (pad 0 = most significant
/// digit).
inline StateSpace state_space(const BodyModel& body) { return StateSpace(body.pads); }

/// Numerical knobs of the quasi-static pipeline.
struct SimConfig {
  int substeps = 64;
  double deadband_mm = 0.1;        // |displacement| below this discretizes to 0
  double stick_tolerance = 0.5;    // relative capacity gap treated as a tie
  int calibration_grid = 64;       // grid points per actuator axis

  void check() const {
    if (substeps < 2) throw InputError("substeps must be >= 2");
    if (!(deadband_mm > 0.0)) throw InputError("deadband must be positive");
    if (!(stick_tolerance >= 0.0 && stick_tolerance < 1.0)) {
      throw InputError("stick_tolerance must lie in [0,1)");
    }
    if (calibration_grid < 2) throw InputError("calibration grid needs >= 2 points per axis");
  }
};

/// A realized body shape: the placed polyline, end contact angles, ground
/// contact points and center of mass. pads_grounded is false when the shape
/// rests on interior support points instead of its end pads.
struct ShapeState {
  std::vector<Vec2> vertices;      // segment endpoints, placed
  std::vector<double> link_angles; // placed tangent per segment
  double psi_left = 0.0;
  double psi_right = 0.0;
  Vec2 contact_left;
  Vec2 contact_right;
  Vec2 com;
  bool pads_grounded = true;

  double chord() const { return contact_right.x - contact_left.x; }
  double com_offset() const { return com.x - contact_left.x; }
};

namespace detail {

inline std::vector<double> segment_curvatures(const BodyModel& body,
                                              const std::vector<double>& activation) {
  if (activation.size() != body.actuators.size()) {
    throw InputError("activation vector has " + std::to_string(activation.size()) +
                     " entries, body has " + std::to_string(body.actuators.size()) +
                     " actuators");
  }
  for (double a : activation) {
    if (!(a >= 0.0 && a <= 1.0)) throw InputError("activation out of [0,1]");
  }
  const double h = body.segment_length();
  std::vector<double> kappa(body.segment_count, 0.0);
  for (std::size_t i = 0; i < body.actuators.size(); ++i) {
    const auto& span = body.actuators[i];
    const double k = activation[i] * span.max_curvature_per_mm;
    if (k == 0.0) continue;
    for (int j = 0; j < body.segment_count; ++j) {
      const double mid = (j + 0.5) * h;
      if (mid >= span.start_arc_mm && mid <= span.end_arc_mm) kappa[j] += k;
    }
  }
  return kappa;
}

inline Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Monotone-chain convex hull, counterclockwise.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace detail

/// Realizes the body shape for an activation vector. Segment curvatures are
/// the sum of the covering actuators' commands; the polyline is integrated
/// with midpoint tangents and then placed on the ground line, preferring the
/// pose with both end pads grounded. When interior material would dip below
/// ground the body instead rests on the stable pair of hull support points
/// closest to the pad-level orientation.
inline ShapeState shape_from_activation(const BodyModel& body,
                                        const std::vector<double>& activation) {
  const int m = body.segment_count;
  const double h = body.segment_length();
  const std::vector<double> kappa = detail::segment_curvatures(body, activation);

  // Body-frame chain: link j runs at the tangent angle of its arc midpoint.
  std::vector<double> theta(m);
  double turn = 0.0;
  for (int j = 0; j < m; ++j) {
    theta[j] = -(turn + 0.5 * h * kappa[j]);
    turn += h * kappa[j];
  }
  std::vector<Vec2> v(m + 1);
  for (int j = 0; j < m; ++j) {
    v[j + 1] = {v[j].x + h * std::cos(theta[j]), v[j].y + h * std::sin(theta[j])};
  }

  // Primary placement: rotate the end-to-end chord level.
  const double gamma = std::atan2(v[m].y - v[0].y, v[m].x - v[0].x);
  ShapeState shape;
  shape.vertices.resize(m + 1);
  shape.link_angles.resize(m);
  for (int j = 0; j <= m; ++j) shape.vertices[j] = detail::rotate(v[j], -gamma);
  for (int j = 0; j < m; ++j) shape.link_angles[j] = theta[j] - gamma;

  const double clearance = 1e-9 * body.length_mm;
  double base_y = shape.vertices[0].y;
  bool grounded = true;
  for (const auto& p : shape.vertices) {
    if (p.y < base_y - clearance) grounded = false;
  }

  if (!grounded) {
    // Rest on the convex hull edge that is statically stable and needs the
    // least extra rotation.
    std::vector<Vec2> hull = detail::convex_hull(shape.vertices);
    Vec2 com{0.0, 0.0};
    for (int j = 0; j < m; ++j) {
      com.x += 0.5 * (shape.vertices[j].x + shape.vertices[j + 1].x);
      com.y += 0.5 * (shape.vertices[j].y + shape.vertices[j + 1].y);
    }
    com.x /= m;
    com.y /= m;

    bool found = false;
    double best_rho = 0.0;
    Vec2 best_p, best_q;
    const std::size_t hn = hull.size();
    for (std::size_t i = 0; i < hn; ++i) {
      const Vec2 p = hull[i];
      const Vec2 q = hull[(i + 1) % hn];
      double rho = -std::atan2(q.y - p.y, q.x - p.x);
      while (rho > std::numbers::pi) rho -= 2.0 * std::numbers::pi;
      while (rho < -std::numbers::pi) rho += 2.0 * std::numbers::pi;
      const Vec2 p2 = detail::rotate(p, rho);
      const Vec2 q2 = detail::rotate(q, rho);
      bool above = true;
      for (const auto& vert : shape.vertices) {
        if (detail::rotate(vert, rho).y < p2.y - clearance) above = false;
      }
      if (!above) continue;
      const Vec2 c2 = detail::rotate(com, rho);
      const double lo = std::min(p2.x, q2.x);
      const double hi = std::max(p2.x, q2.x);
      if (c2.x < lo - clearance || c2.x > hi + clearance) continue;
      if (!found || std::abs(rho) < std::abs(best_rho)) {
        found = true;
        best_rho = rho;
        best_p = p2.x <= q2.x ? p : q;
        best_q = p2.x <= q2.x ? q : p;
      }
    }
    if (!found) {
      throw SimulationError("no stable resting pose for activation shape");
    }
    for (auto& vert : shape.vertices) vert = detail::rotate(vert, best_rho);
    for (auto& a : shape.link_angles) a += best_rho;
    shape.contact_left = detail::rotate(best_p, best_rho);
    shape.contact_right = detail::rotate(best_q, best_rho);
    shape.pads_grounded = false;
    base_y = shape.contact_left.y;
  } else {
    shape.contact_left = shape.vertices[0];
    shape.contact_right = shape.vertices[m];
    shape.pads_grounded = true;
  }

  // Canonical frame: left contact at the origin, ground at y = 0.
  const double x0 = shape.contact_left.x;
  for (auto& vert : shape.vertices) {
    vert.x -= x0;
    vert.y -= base_y;
  }
  shape.contact_left = {0.0, 0.0};
  shape.contact_right = {shape.contact_right.x - x0, 0.0};

  shape.com = {0.0, 0.0};
  for (int j = 0; j < m; ++j) {
    shape.com.x += 0.5 * (shape.vertices[j].x + shape.vertices[j + 1].x);
    shape.com.y += 0.5 * (shape.vertices[j].y + shape.vertices[j + 1].y);
  }
  shape.com.x /= m;
  shape.com.y /= m;

  // Contact angles: elevation of the end tangents, positive when bending
  // lifts the end's underside.
  shape.psi_left = shape.link_angles.front();
  shape.psi_right = -shape.link_angles.back();
  return shape;
}

inline ShapeState shape_from_activation(const BodyModel& body) {
  return shape_from_activation(body, body.rest_activation());
}

/// The stored end contact angles (left, right).
inline std::pair<double, double> contact_angles(const ShapeState& shape) {
  return {shape.psi_left, shape.psi_right};
}

/// Classifies a shape into the robot state of the body's pads.
inline RobotState classify_shape(const BodyModel& body, const ShapeState& shape) {
  RobotState state;
  state.levels.push_back(statecore::state_from_angle(shape.psi_left, body.pads[0]));
  state.levels.push_back(statecore::state_from_angle(shape.psi_right, body.pads[1]));
  return state;
}

/// Static normal forces at the two contacts from the lever rule
/// N_left + N_right = m g, moments balanced about the contacts.
/// Throws TippingError when the center of mass leaves the support span.
inline std::pair<double, double> normal_forces(const ShapeState& shape, const BodyModel& body) {
  const double span = shape.chord();
  if (!(span > 1e-9 * body.length_mm)) {
    throw InputError("contact points coincide; no support span");
  }
  const double weight = body.mass_g * 1e-3 * body.gravity_mps2;  // newtons
  double f = shape.com_offset() / span;                          // fraction carried by the right
  const double tol = 1e-9;
  if (f < -tol || f > 1.0 + tol) {
    throw TippingError("center of mass at fraction " + std::to_string(f) +
                       " outside the support span");
  }
  f = std::clamp(f, 0.0, 1.0);
  return {weight * (1.0 - f), weight * f};
}

/// World-frame bookkeeping for ground contacts and the center of mass while
/// a shape changes under Coulomb stick-slip. The contact whose friction
/// capacity (mu * N) is clearly smaller takes the whole chord-length change;
/// when the capacities tie within tolerance the slip splits so the center of
/// mass stays put, which is the indeterminate quasi-static case resolved
/// without net force.
class SlipTracker {
 public:
  SlipTracker(double chord, double com_offset)
      : left_x_(0.0), com_x_(com_offset), chord_(chord) {}

  struct Step {
    double capacity_left = 0.0;
    double capacity_right = 0.0;
    bool strict = false;  // true when one contact clearly slides
  };

  /// Advances to a new shape given the capacities in effect during the
  /// increment.
  void advance(double new_chord, double new_com_offset, const Step& step) {
    if (step.strict) {
      if (step.capacity_left < step.capacity_right) {
        // left end slides, right end anchored
        const double right_x = left_x_ + chord_;
        left_x_ = right_x - new_chord;
      }
      com_x_ = left_x_ + new_com_offset;
    } else {
      left_x_ = com_x_ - new_com_offset;
    }
    chord_ = new_chord;
  }

  double com_x() const { return com_x_; }
  double left_x() const { return left_x_; }

 private:
  double left_x_;
  double com_x_;
  double chord_;
};

/// Friction capacities mu*N at both pads for a shape, and whether their gap
/// is decisive (beyond the stick tolerance) or a tie.
inline SlipTracker::Step assess_capacities(const BodyModel& body, const ShapeState& shape,
                                           const SimConfig& cfg) {
  const auto [n_left, n_right] = normal_forces(shape, body);
  const int lvl_left = statecore::state_from_angle(shape.psi_left, body.pads[0]).level;
  const int lvl_right = statecore::state_from_angle(shape.psi_right, body.pads[1]).level;
  SlipTracker::Step step;
  step.capacity_left = body.pads[0].friction_at_level(lvl_left) * n_left;
  step.capacity_right = body.pads[1].friction_at_level(lvl_right) * n_right;
  const double gap = std::abs(step.capacity_left - step.capacity_right);
  const double scale = std::max(step.capacity_left, step.capacity_right);
  step.strict = gap > cfg.stick_tolerance * scale && scale > 0.0;
  return step;
}

namespace detail {

inline std::vector<double> lerp(const std::vector<double>& a, const std::vector<double>& b,
                                double t) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + (b[i] - a[i]) * t;
  return out;
}

}  // namespace detail

/// Quasi-static transition between two activation configurations: the
/// activation is interpolated in cfg.substeps increments and each chord
/// change is resolved by Coulomb capacity. Returns the signed center-of-mass
/// displacement in mm, positive toward the right/front.
inline double execute_transition(const BodyModel& body, const std::vector<double>& from_activation,
                                 const std::vector<double>& to_activation, const SimConfig& cfg) {
  cfg.check();
  ShapeState shape = shape_from_activation(body, from_activation);
  if (!shape.pads_grounded) {
    throw SimulationError("start configuration does not rest on its pads");
  }
  SlipTracker tracker(shape.chord(), shape.com_offset());
  const double start_com = tracker.com_x();

  for (int k = 1; k <= cfg.substeps; ++k) {
    const double t_mid = (k - 0.5) / cfg.substeps;
    const double t_new = static_cast<double>(k) / cfg.substeps;
    const ShapeState mid =
        shape_from_activation(body, detail::lerp(from_activation, to_activation, t_mid));
    const ShapeState next =
        shape_from_activation(body, detail::lerp(from_activation, to_activation, t_new));
    if (!mid.pads_grounded || !next.pads_grounded) {
      throw SimulationError("contact pad lifted at substep " + std::to_string(k));
    }
    SlipTracker::Step step;
    try {
      step = assess_capacities(body, mid, cfg);
    } catch (const TippingError& e) {
      throw TippingError(std::string(e.what()) + " at substep " + std::to_string(k));
    }
    tracker.advance(next.chord(), next.com_offset(), step);
  }
  return tracker.com_x() - start_com;
}

/// Grid search for the activation vector that realizes a target robot state
/// with the largest margin to its nearest critical angles. Deterministic:
/// ties resolve to the lexicographically lowest activation.
inline std::vector<double> calibrate_activation(const BodyModel& body, const RobotState& target,
                                                const SimConfig& cfg) {
  cfg.check();
  const StateSpace space = state_space(body);
  const int target_index = statecore::index_of(target, space);
  const std::size_t axes = body.actuators.size();
  if (axes == 0) throw InputError("body has no actuators to calibrate");
  double budget = 1.0;
  for (std::size_t i = 0; i < axes; ++i) budget *= cfg.calibration_grid;
  if (budget > 1e7) throw CapacityError("calibration grid too large");

  std::vector<int> idx(axes, 0);
  std::vector<double> a(axes, 0.0);
  std::vector<double> best;
  double best_margin = -1.0;
  std::set<std::string> achieved;

  bool done = false;
  while (!done) {
    for (std::size_t i = 0; i < axes; ++i) {
      a[i] = static_cast<double>(idx[i]) / (cfg.calibration_grid - 1);
    }
    const ShapeState shape = shape_from_activation(body, a);
    if (shape.pads_grounded) {
      const double f = shape.com_offset() / shape.chord();
      if (f >= 0.0 && f <= 1.0) {
        const RobotState state = classify_shape(body, shape);
        achieved.insert(statecore::state_string(state, space));
        if (statecore::index_of(state, space) == target_index) {
          const double psi[2] = {shape.psi_left, shape.psi_right};
          double margin = std::numeric_limits<double>::infinity();
          for (int p = 0; p < 2; ++p) {
            for (double t : body.pads[p].thresholds()) {
              margin = std::min(margin, std::abs(psi[p] - t));
            }
          }
          if (margin > best_margin) {
            best_margin = margin;
            best = a;
          }
        }
      }
    }
    // odometer over the grid, least significant axis last => lexicographic
    // ascent, so the first best found is the lowest activation vector
    for (std::size_t i = axes; i-- > 0;) {
      if (++idx[i] < cfg.calibration_grid) break;
      idx[i] = 0;
      if (i == 0) done = true;
    }
  }

  if (best.empty()) {
    std::string msg = "state " + statecore::state_string(target, space) +
                      " is unrealizable; achieved states:";
    for (const auto& s : achieved) msg += " " + s;
    throw CalibrationError(msg);
  }
  return best;
}

inline std::vector<double> calibrate_activation(const BodyModel& body, int target_index,
                                                const SimConfig& cfg) {
  return calibrate_activation(body, statecore::state_of(target_index, state_space(body)), cfg);
}

/// State-to-state transition through the calibrated endpoint configurations.
inline double execute_transition(const BodyModel& body, const RobotState& from,
                                 const RobotState& to, const SimConfig& cfg) {
  const std::vector<double> a_from = calibrate_activation(body, from, cfg);
  const std::vector<double> a_to = calibrate_activation(body, to, cfg);
  return execute_transition(body, a_from, a_to, cfg);
}

/// Full simulation product: the discretized matrix plus the raw displacement
/// table behind it (NaN where masked).
struct SimulatedMatrix {
  RewardMatrix matrix;
  std::vector<double> displacement_mm;  // row-major
  std::vector<int> unrealizable_states;
};

/// Builds the state-transition reward matrix of a body from first
/// principles: every ordered pair of realizable states is executed
/// quasi-statically and the displacement discretized with the deadband.
/// Unrealizable states get fully masked rows and columns.
inline SimulatedMatrix simulate_matrix(const BodyModel& body, const SimConfig& cfg) {
  cfg.check();
  const StateSpace space = state_space(body);
  const int n = space.cardinality();

  std::vector<std::optional<std::vector<double>>> calib(n);
  std::vector<int> unrealizable;
  for (int s = 0; s < n; ++s) {
    try {
      calib[s] = calibrate_activation(body, statecore::state_of(s, space), cfg);
    } catch (const CalibrationError&) {
      unrealizable.push_back(s);
    }
  }

  RewardMatrix m(n);
  std::vector<double> table(static_cast<std::size_t>(n) * n,
                            std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      if (!calib[i] || !calib[j]) {
        m.forbid(i, j);
        continue;
      }
      if (i == j) {
        m.set_reward(i, j, 0);
        table[k] = 0.0;
        continue;
      }
      double d;
      try {
        d = execute_transition(body, *calib[i], *calib[j], cfg);
      } catch (const SimulationError& e) {
        throw SimulationError("transition " + statecore::state_string(i, space) + "->" +
                              statecore::state_string(j, space) + ": " + e.what());
      }
      table[k] = d;
      m.set_reward(i, j, estimator::discretize(d, cfg.deadband_mm));
    }
  }
  return SimulatedMatrix{std::move(m), std::move(table), std::move(unrealizable)};
}

inline RewardMatrix build_reward_matrix(const BodyModel& body, const SimConfig& cfg) {
  return simulate_matrix(body, cfg).matrix;
}

/// Reflects the body end for end: actuator spans are mirrored in arc length
/// (and re-ordered left to right) and the two pads swap. Involution.
inline BodyModel mirror_body(const BodyModel& body) {
  std::vector<ActuatorSpan> acts;
  acts.reserve(body.actuators.size());
  for (auto it = body.actuators.rbegin(); it != body.actuators.rend(); ++it) {
    acts.push_back(ActuatorSpan{body.length_mm - it->end_arc_mm, body.length_mm - it->start_arc_mm,
                                it->max_curvature_per_mm, it->activation});
  }
  std::vector<MechanismSpec> pads = {body.pads[1], body.pads[0]};
  return BodyModel(body.length_mm, body.mass_g, body.segment_count, std::move(acts),
                   std::move(pads), body.gravity_mps2);
}

/// Issues that make a body unusable for gait generation, as human-readable
/// strings; empty when the body is well formed. Also reports which robot
/// states the default grid can realize.
inline std::vector<std::string> validate_body(const BodyModel& body, const SimConfig& cfg) {
  std::vector<std::string> issues;
  if (body.actuators.size() >= 2) {
    bool overlap = false;
    for (std::size_t i = 0; i + 1 < body.actuators.size(); ++i) {
      for (std::size_t j = i + 1; j < body.actuators.size(); ++j) {
        if (body.actuators[i].start_arc_mm < body.actuators[j].end_arc_mm &&
            body.actuators[j].start_arc_mm < body.actuators[i].end_arc_mm) {
          overlap = true;
        }
      }
    }
    if (!overlap) issues.push_back("actuator spans do not overlap");
  }
  const StateSpace space = state_space(body);
  for (int s = 0; s < space.cardinality(); ++s) {
    try {
      calibrate_activation(body, statecore::state_of(s, space), cfg);
    } catch (const CalibrationError& e) {
      issues.push_back(e.what());
    }
  }
  return issues;
}

/// Symmetric two-actuator demonstration body: overlapping spans able to
/// drive each pad independently across a 0.26 rad critical angle.
inline BodyModel demo_body(const MechanismSpec& left_pad, const MechanismSpec& right_pad) {
  std::vector<ActuatorSpan> acts = {
      {0.0, 44.0, 0.0114, 0.0},
      {36.0, 80.0, 0.0114, 0.0},
  };
  return BodyModel(80.0, 3.3, 40, std::move(acts), {left_pad, right_pad});
}

/// Pads matching the shipped calibration: sticky below the critical angle,
/// slippery above (or the reverse), one 0.26 rad threshold.
inline MechanismSpec sticky_then_slippery_pad(const std::string& label) {
  return MechanismSpec({0.26}, {1.2, 0.2}, label);
}
inline MechanismSpec slippery_then_sticky_pad(const std::string& label) {
  return MechanismSpec({0.26}, {0.2, 1.2}, label);
}

}  // namespace gaitmatrix::quasistatic
