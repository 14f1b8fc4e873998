// Small self-contained SVG charting for run artifacts: ground traces, attitude response,
// adaptive-gain evolution and sweep metric bars. Output is deterministic for fixed input.
#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "fcsim/core.hpp"
#include "fcsim/metrics.hpp"
#include "fcsim/mission.hpp"
#include "fcsim/telemetry.hpp"

namespace fcsim {

struct Series {
  std::string label;
  std::string color = "#1f77b4";
  bool dashed = false;
  std::vector<std::pair<double, double>> pts;  // (x, y)
};

struct Chart {
  std::string title, xlabel, ylabel;
  std::vector<Series> series;
  bool equal_aspect = false;
};

namespace plot_detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline double nice_step(double range, int target_ticks) {
  if (!(range > 0.0)) return 1.0;
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step = norm < 1.5 ? 1.0 : (norm < 3.5 ? 2.0 : (norm < 7.5 ? 5.0 : 10.0));
  return step * mag;
}

inline const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

inline void render_chart(std::string& out, const Chart& c, double ox, double oy, double w,
                         double h) {
  const double ml = 62, mr = 18, mt = 34, mb = 44;
  const double pw = w - ml - mr, ph = h - mt - mb;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : c.series)
    for (const auto& [x, y] : s.pts) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  double xpad = 0.04 * (xmax - xmin), ypad = 0.07 * (ymax - ymin);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;
  if (c.equal_aspect) {
    const double sx = (xmax - xmin) / pw, sy = (ymax - ymin) / ph;
    if (sx > sy) {
      const double mid = 0.5 * (ymin + ymax), half = 0.5 * sx * ph;
      ymin = mid - half;
      ymax = mid + half;
    } else {
      const double mid = 0.5 * (xmin + xmax), half = 0.5 * sy * pw;
      xmin = mid - half;
      xmax = mid + half;
    }
  }

  auto px = [&](double x) { return ox + ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return oy + mt + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  out += "<rect x='" + fmt2(ox + ml) + "' y='" + fmt2(oy + mt) + "' width='" + fmt2(pw) +
         "' height='" + fmt2(ph) + "' fill='white' stroke='#333' stroke-width='1'/>\n";
  out += "<text x='" + fmt2(ox + w / 2) + "' y='" + fmt2(oy + 20) +
         "' text-anchor='middle' font-size='14' font-weight='bold'>" + c.title + "</text>\n";

  const double xstep = nice_step(xmax - xmin, 6), ystep = nice_step(ymax - ymin, 5);
  for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9; x += xstep) {
    out += "<line x1='" + fmt2(px(x)) + "' y1='" + fmt2(oy + mt) + "' x2='" + fmt2(px(x)) +
           "' y2='" + fmt2(oy + mt + ph) + "' stroke='#ddd' stroke-width='0.5'/>\n";
    out += "<text x='" + fmt2(px(x)) + "' y='" + fmt2(oy + mt + ph + 16) +
           "' text-anchor='middle' font-size='11'>" + fmt(x) + "</text>\n";
  }
  for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-9; y += ystep) {
    out += "<line x1='" + fmt2(ox + ml) + "' y1='" + fmt2(py(y)) + "' x2='" +
           fmt2(ox + ml + pw) + "' y2='" + fmt2(py(y)) +
           "' stroke='#ddd' stroke-width='0.5'/>\n";
    out += "<text x='" + fmt2(ox + ml - 6) + "' y='" + fmt2(py(y) + 4) +
           "' text-anchor='end' font-size='11'>" + fmt(y) + "</text>\n";
  }
  out += "<text x='" + fmt2(ox + w / 2) + "' y='" + fmt2(oy + h - 8) +
         "' text-anchor='middle' font-size='12'>" + c.xlabel + "</text>\n";
  out += "<text x='" + fmt2(ox + 16) + "' y='" + fmt2(oy + mt + ph / 2) +
         "' text-anchor='middle' font-size='12' transform='rotate(-90 " + fmt2(ox + 16) +
         " " + fmt2(oy + mt + ph / 2) + ")'>" + c.ylabel + "</text>\n";

  for (const auto& s : c.series) {
    if (s.pts.empty()) continue;
    const std::size_t stride = std::max<std::size_t>(1, s.pts.size() / 1500);
    out += "<polyline fill='none' stroke='" + s.color + "' stroke-width='1.3'";
    if (s.dashed) out += " stroke-dasharray='6 4'";
    out += " points='";
    for (std::size_t i = 0; i < s.pts.size(); i += stride) {
      out += fmt2(px(s.pts[i].first));
      out += ',';
      out += fmt2(py(s.pts[i].second));
      out += ' ';
    }
    const auto& last = s.pts.back();
    out += fmt2(px(last.first)) + "," + fmt2(py(last.second));
    out += "'/>\n";
  }
  double lx = ox + ml + 10, ly = oy + mt + 16;
  for (const auto& s : c.series) {
    out += "<line x1='" + fmt2(lx) + "' y1='" + fmt2(ly - 4) + "' x2='" + fmt2(lx + 24) +
           "' y2='" + fmt2(ly - 4) + "' stroke='" + s.color + "' stroke-width='2'" +
           (s.dashed ? " stroke-dasharray='6 4'" : "") + "/>\n";
    out += "<text x='" + fmt2(lx + 30) + "' y='" + fmt2(ly) + "' font-size='11'>" + s.label +
           "</text>\n";
    ly += 16;
  }
}

}  // namespace plot_detail

inline std::string render_svg(const std::vector<Chart>& charts, int width = 860,
                              int panel_height = 300) {
  const int height = panel_height * static_cast<int>(charts.size());
  std::string out = "<svg xmlns='http://www.w3.org/2000/svg' width='" +
                    std::to_string(width) + "' height='" + std::to_string(height) +
                    "' font-family='sans-serif'>\n<rect width='100%' height='100%' "
                    "fill='white'/>\n";
  double oy = 0;
  for (const auto& c : charts) {
    plot_detail::render_chart(out, c, 0, oy, width, panel_height);
    oy += panel_height;
  }
  out += "</svg>\n";
  return out;
}

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SimError(ErrorKind::Config, "cannot open " + path);
  f << content;
}

// East-north ground trace with the mission geometry overlaid.
inline std::string svg_ground_trace(const std::vector<TelemetryRecord>& recs,
                                    const Mission* ms = nullptr) {
  if (recs.empty()) throw SimError(ErrorKind::Config, "plot: no telemetry records");
  Chart c;
  c.title = "Ground trace";
  c.xlabel = "east [m]";
  c.ylabel = "north [m]";
  c.equal_aspect = true;
  if (ms) {
    Series climb{"climb leg", "#bbbbbb", true, {}};
    climb.pts = {{ms->launch[1], ms->launch[0]}, {ms->target[1], ms->target[0]}};
    Series loiter{"loiter circle", "#999999", true, {}};
    for (int i = 0; i <= 72; ++i) {
      const double a = 2.0 * kPi * i / 72;
      loiter.pts.push_back({ms->loiter_center[1] + ms->loiter_radius * std::sin(a),
                            ms->loiter_center[0] + ms->loiter_radius * std::cos(a)});
    }
    Series land{"landing line", "#bbbbbb", true, {}};
    land.pts = {{ms->land_p0[1], ms->land_p0[0]}, {ms->land_p1[1], ms->land_p1[0]}};
    c.series.push_back(climb);
    c.series.push_back(loiter);
    c.series.push_back(land);
  }
  Series trace{"aircraft", "#d62728", false, {}};
  for (const auto& r : recs) trace.pts.push_back({r.r_e, r.r_n});
  c.series.push_back(trace);
  return render_svg({c}, 720, 560);
}

// Roll/pitch tracking and the altitude profile.
inline std::string svg_attitude_response(const std::vector<TelemetryRecord>& recs) {
  if (recs.empty()) throw SimError(ErrorKind::Config, "plot: no telemetry records");
  Chart roll{"Roll tracking", "t [s]", "phi [rad]", {}, false};
  Chart pitch{"Pitch tracking", "t [s]", "theta [rad]", {}, false};
  Chart alt{"Altitude", "t [s]", "h [m]", {}, false};
  Series phm{"measured", "#1f77b4", false, {}}, phs{"setpoint", "#d62728", true, {}};
  Series thm{"measured", "#1f77b4", false, {}}, ths{"setpoint", "#d62728", true, {}};
  Series hm{"measured", "#1f77b4", false, {}}, hs{"setpoint", "#d62728", true, {}};
  for (const auto& r : recs) {
    phm.pts.push_back({r.t, r.phi_m});
    phs.pts.push_back({r.t, r.phi_s});
    thm.pts.push_back({r.t, r.theta_m});
    ths.pts.push_back({r.t, r.theta_s});
    hm.pts.push_back({r.t, r.h_m});
    hs.pts.push_back({r.t, r.h_s});
  }
  roll.series = {phm, phs};
  pitch.series = {thm, ths};
  alt.series = {hm, hs};
  return render_svg({roll, pitch, alt}, 860, 280);
}

// Adaptive gain trajectories; ref_k_theta/ref_k_phi (the degraded fixed gains) are drawn
// as dashed references on the angle-channel panel.
inline std::string svg_gain_evolution(const std::vector<TelemetryRecord>& recs,
                                      double ref_k_theta, double ref_k_phi) {
  if (recs.empty()) throw SimError(ErrorKind::Config, "plot: no telemetry records");
  Chart ang{"Angle-channel adaptive gains", "t [s]", "gain", {}, false};
  Chart rate{"Rate-channel adaptive gains", "t [s]", "gain", {}, false};
  Series tt{"theta_pitch", "#1f77b4", false, {}}, tp{"theta_roll", "#d62728", false, {}};
  Series rt{"ref k_theta", "#1f77b4", true, {}}, rp{"ref k_phi", "#d62728", true, {}};
  Series wxp{"roll P", "#1f77b4", false, {}}, wxi{"roll I", "#1f77b4", true, {}};
  Series wyp{"pitch P", "#d62728", false, {}}, wyi{"pitch I", "#d62728", true, {}};
  Series wzp{"yaw P", "#2ca02c", false, {}}, wzi{"yaw I", "#2ca02c", true, {}};
  for (const auto& r : recs) {
    tt.pts.push_back({r.t, r.th_theta});
    tp.pts.push_back({r.t, r.th_phi});
    rt.pts.push_back({r.t, ref_k_theta});
    rp.pts.push_back({r.t, ref_k_phi});
    wxp.pts.push_back({r.t, r.th_wx_p});
    wxi.pts.push_back({r.t, r.th_wx_i});
    wyp.pts.push_back({r.t, r.th_wy_p});
    wyi.pts.push_back({r.t, r.th_wy_i});
    wzp.pts.push_back({r.t, r.th_wz_p});
    wzi.pts.push_back({r.t, r.th_wz_i});
  }
  ang.series = {tt, tp, rt, rp};
  rate.series = {wxp, wxi, wyp, wyi, wzp, wzi};
  return render_svg({ang, rate}, 860, 300);
}

// Normalized metrics per sweep row (baseline = 1). Failed rows are annotated instead of
// drawn.
inline std::string svg_metric_bars(const std::vector<RunSummary>& rows) {
  if (rows.empty()) throw SimError(ErrorKind::Config, "plot: no sweep rows");
  using plot_detail::fmt2;
  const int width = std::max(560, 40 + static_cast<int>(rows.size()) * 130);
  const int height = 420;
  const double ml = 60, mt = 40, mb = 110, mr = 20;
  const double pw = width - ml - mr, ph = height - mt - mb;
  double vmax = 1.0;
  for (const auto& r : rows) {
    if (r.failed) continue;
    vmax = std::max({vmax, r.j_phi_rel, r.j_theta_rel, r.j_traj_rel});
  }
  vmax *= 1.1;

  std::string out = "<svg xmlns='http://www.w3.org/2000/svg' width='" +
                    std::to_string(width) + "' height='" + std::to_string(height) +
                    "' font-family='sans-serif'>\n<rect width='100%' height='100%' "
                    "fill='white'/>\n";
  out += "<text x='" + fmt2(width / 2.0) +
         "' y='22' text-anchor='middle' font-size='14' font-weight='bold'>Tracking cost "
         "relative to baseline</text>\n";
  const double ystep = plot_detail::nice_step(vmax, 5);
  auto py = [&](double v) { return mt + (1.0 - v / vmax) * ph; };
  for (double y = 0.0; y <= vmax + 1e-9; y += ystep) {
    out += "<line x1='" + fmt2(ml) + "' y1='" + fmt2(py(y)) + "' x2='" + fmt2(ml + pw) +
           "' y2='" + fmt2(py(y)) + "' stroke='#ddd'/>\n";
    out += "<text x='" + fmt2(ml - 6) + "' y='" + fmt2(py(y) + 4) +
           "' text-anchor='end' font-size='11'>" + plot_detail::fmt(y) + "</text>\n";
  }
  out += "<line x1='" + fmt2(ml) + "' y1='" + fmt2(py(1.0)) + "' x2='" + fmt2(ml + pw) +
         "' y2='" + fmt2(py(1.0)) + "' stroke='#888' stroke-dasharray='5 4'/>\n";

  const char* colors[3] = {"#d62728", "#1f77b4", "#2ca02c"};
  const char* labels[3] = {"roll", "pitch", "track"};
  const double group_w = pw / rows.size();
  const double bar_w = std::min(26.0, group_w / 4.5);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double cx = ml + (i + 0.5) * group_w;
    const double vals[3] = {r.j_phi_rel, r.j_theta_rel, r.j_traj_rel};
    if (r.failed) {
      out += "<text x='" + fmt2(cx) + "' y='" + fmt2(py(0.0) - 8) +
             "' text-anchor='middle' font-size='11' fill='#b00'>failed</text>\n";
    } else {
      for (int k = 0; k < 3; ++k) {
        const double v = std::min(vals[k], vmax);
        const double x = cx + (k - 1.5) * bar_w + bar_w * 0.1;
        out += "<rect x='" + fmt2(x) + "' y='" + fmt2(py(v)) + "' width='" +
               fmt2(bar_w * 0.8) + "' height='" + fmt2(py(0.0) - py(v)) + "' fill='" +
               colors[k] + "'/>\n";
      }
    }
    out += "<text x='" + fmt2(cx) + "' y='" + fmt2(height - mb + 16) +
           "' text-anchor='middle' font-size='10' transform='rotate(30 " + fmt2(cx) + " " +
           fmt2(height - mb + 16) + ")'>" + r.name + "</text>\n";
  }
  double lx = ml + 8;
  for (int k = 0; k < 3; ++k) {
    out += "<rect x='" + fmt2(lx) + "' y='" + fmt2(mt - 14.0) +
           "' width='12' height='12' fill='" + std::string(colors[k]) + "'/>\n";
    out += "<text x='" + fmt2(lx + 16) + "' y='" + fmt2(mt - 4.0) + "' font-size='11'>" +
           labels[k] + "</text>\n";
    lx += 80;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fcsim
