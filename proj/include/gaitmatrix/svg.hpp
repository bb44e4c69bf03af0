#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "gaitmatrix/errors.hpp"
#include "gaitmatrix/session.hpp"

namespace gaitmatrix::svg {

namespace detail {

inline std::string fixed3(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  return std::string(buf, res.ptr);
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double px0 = 0.0;
  double px1 = 1.0;

  double map(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

inline void pad_degenerate(double& lo, double& hi) {
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
}

}  // namespace detail

/// Renders a closed-loop session as a fixed-size SVG: center-of-mass
/// displacement over time above a state track. Pure function of the rows;
/// identical input yields identical bytes.
inline std::string render_trajectory(const session::SessionLog& log,
                                     const std::vector<std::string>& state_names) {
  const auto& rows = log.rows;
  if (rows.empty()) throw InputError("cannot render an empty session log");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].t_ms < rows[i - 1].t_ms) {
      throw InputError("session log timestamps must be monotone");
    }
  }

  const int width = 880;
  const int height = 520;
  const double plot_left = 70.0;
  const double plot_right = 850.0;
  const double com_top = 40.0;
  const double com_bottom = 330.0;
  const double state_top = 380.0;
  const double state_bottom = 480.0;

  double t_lo = rows.front().t_ms, t_hi = rows.back().t_ms;
  double c_lo = rows.front().com_mm, c_hi = rows.front().com_mm;
  int max_state = 0;
  for (const auto& r : rows) {
    c_lo = std::min(c_lo, r.com_mm);
    c_hi = std::max(c_hi, r.com_mm);
    max_state = std::max(max_state, r.state);
  }
  detail::pad_degenerate(t_lo, t_hi);
  detail::pad_degenerate(c_lo, c_hi);
  const int n_states = std::max(max_state + 1, static_cast<int>(state_names.size()));

  const detail::Axis tx{t_lo, t_hi, plot_left, plot_right};
  const detail::Axis cy{c_lo, c_hi, com_bottom, com_top};
  const detail::Axis sy{-0.5, n_states - 0.5, state_bottom, state_top};

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" fill=\"white\"/>\n";
  out += "<style>text{font-family:monospace;font-size:12px;fill:#222;}"
         ".axis{stroke:#222;stroke-width:1;fill:none;}"
         ".grid{stroke:#ddd;stroke-width:1;}"
         ".com{stroke:#1f77b4;stroke-width:1.5;fill:none;}"
         ".state{stroke:#b22222;stroke-width:1.5;fill:none;}"
         ".mark{fill:#1f77b4;}</style>\n";

  out += "<text x=\"" + detail::fixed3(plot_left) + "\" y=\"24\">center-of-mass displacement (mm) vs time (ms)</text>\n";

  // grid + axis labels, five x and five y ticks
  for (int k = 0; k <= 4; ++k) {
    const double tv = t_lo + (t_hi - t_lo) * k / 4.0;
    const double x = tx.map(tv);
    out += "<line class=\"grid\" x1=\"" + detail::fixed3(x) + "\" y1=\"" + detail::fixed3(com_top) +
           "\" x2=\"" + detail::fixed3(x) + "\" y2=\"" + detail::fixed3(com_bottom) + "\"/>\n";
    out += "<text x=\"" + detail::fixed3(x - 18.0) + "\" y=\"" + detail::fixed3(com_bottom + 16.0) +
           "\">" + detail::fixed3(tv) + "</text>\n";
    const double cv = c_lo + (c_hi - c_lo) * k / 4.0;
    const double y = cy.map(cv);
    out += "<line class=\"grid\" x1=\"" + detail::fixed3(plot_left) + "\" y1=\"" +
           detail::fixed3(y) + "\" x2=\"" + detail::fixed3(plot_right) + "\" y2=\"" +
           detail::fixed3(y) + "\"/>\n";
    out += "<text x=\"6\" y=\"" + detail::fixed3(y + 4.0) + "\">" + detail::fixed3(cv) +
           "</text>\n";
  }
  out += "<rect class=\"axis\" x=\"" + detail::fixed3(plot_left) + "\" y=\"" +
         detail::fixed3(com_top) + "\" width=\"" + detail::fixed3(plot_right - plot_left) +
         "\" height=\"" + detail::fixed3(com_bottom - com_top) + "\"/>\n";

  // com trace
  if (rows.size() >= 2) {
    out += "<polyline class=\"com\" points=\"";
    for (const auto& r : rows) {
      out += detail::fixed3(tx.map(r.t_ms)) + "," + detail::fixed3(cy.map(r.com_mm)) + " ";
    }
    out += "\"/>\n";
  }

  // markers at the first row and wherever the cursor advances
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == 0 || rows[i].cursor != rows[i - 1].cursor) {
      out += "<circle class=\"mark\" cx=\"" + detail::fixed3(tx.map(rows[i].t_ms)) + "\" cy=\"" +
             detail::fixed3(cy.map(rows[i].com_mm)) + "\" r=\"3\"/>\n";
    }
  }

  // state track
  out += "<text x=\"" + detail::fixed3(plot_left) + "\" y=\"" + detail::fixed3(state_top - 10.0) +
         "\">state track</text>\n";
  for (int s = 0; s < n_states; ++s) {
    const double y = sy.map(static_cast<double>(s));
    const std::string name =
        s < static_cast<int>(state_names.size()) ? state_names[s] : std::to_string(s);
    out += "<line class=\"grid\" x1=\"" + detail::fixed3(plot_left) + "\" y1=\"" +
           detail::fixed3(y) + "\" x2=\"" + detail::fixed3(plot_right) + "\" y2=\"" +
           detail::fixed3(y) + "\"/>\n";
    out += "<text x=\"6\" y=\"" + detail::fixed3(y + 4.0) + "\">" + name + "</text>\n";
  }
  if (rows.size() >= 2) {
    out += "<polyline class=\"state\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && rows[i].state != rows[i - 1].state) {
        // step: hold the previous level until this sample's time
        out += detail::fixed3(tx.map(rows[i].t_ms)) + "," +
               detail::fixed3(sy.map(static_cast<double>(rows[i - 1].state))) + " ";
      }
      out += detail::fixed3(tx.map(rows[i].t_ms)) + "," +
             detail::fixed3(sy.map(static_cast<double>(rows[i].state))) + " ";
    }
    out += "\"/>\n";
  } else {
    out += "<circle class=\"mark\" cx=\"" + detail::fixed3(tx.map(rows.front().t_ms)) +
           "\" cy=\"" + detail::fixed3(sy.map(static_cast<double>(rows.front().state))) +
           "\" r=\"3\"/>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace gaitmatrix::svg
