#include "capdrift/report/svg.hpp"

#include <algorithm>
#include <cmath>

#include "capdrift/util/numfmt.hpp"

namespace capdrift {

namespace {

constexpr double kPi = 3.14159265358979323846;

const char* group_color(CapabilityGroup g) {
  switch (g) {
    case CapabilityGroup::CAN: return "#1f77b4";
    case CapabilityGroup::WILL: return "#d62728";
    case CapabilityGroup::HOW: return "#2ca02c";
  }
  return "#777777";
}

std::string num(double v) { return fmt_fixed(v, 2); }

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Pt {
  double x, y;
};

std::string bar_fallback(const DriftReport& rep) {
  const int n = static_cast<int>(rep.entries.size());
  const int height = 120 + 44 * std::max(n, 1) +
                     24 * static_cast<int>(rep.excluded.size());
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 760 " +
       std::to_string(height) + "\" font-family=\"sans-serif\">\n";
  s += "<rect width=\"760\" height=\"" + std::to_string(height) +
       "\" fill=\"#ffffff\"/>\n";
  s += "<text x=\"20\" y=\"28\" font-size=\"16\">capability drift: " +
       esc(rep.candidate_model) + " vs " + esc(rep.baseline_model) +
       "</text>\n";
  s += "<text class=\"fallback-note\" x=\"20\" y=\"50\" font-size=\"12\" "
       "fill=\"#666666\">fewer than 3 comparable axes; severity bars shown "
       "instead of a radar chart</text>\n";
  int y = 80;
  for (const DriftEntry& e : rep.entries) {
    const int ring = regime_index(e.regime);
    const double width = 420.0 * (ring + 1) / 5.0;
    s += "<rect class=\"vertex\" data-cap=\"" + esc(e.capability) +
         "\" data-ring=\"" + std::to_string(ring) + "\" data-delta=\"" +
         fmt_double(e.delta_pct) + "\" x=\"120\" y=\"" + std::to_string(y) +
         "\" width=\"" + num(width) + "\" height=\"22\" fill=\"" +
         group_color(e.group) + "\" fill-opacity=\"0.75\"/>\n";
    s += "<text x=\"20\" y=\"" + std::to_string(y + 16) +
         "\" font-size=\"13\">" + esc(e.capability) + "</text>\n";
    s += "<text x=\"" + num(124.0 + width) + "\" y=\"" +
         std::to_string(y + 16) + "\" font-size=\"12\" fill=\"#333333\">" +
         fmt_fixed(e.delta_pct, 2) + "% " + regime_name(e.regime) +
         "</text>\n";
    y += 44;
  }
  for (const ExcludedAxis& x : rep.excluded) {
    s += "<text x=\"20\" y=\"" + std::to_string(y + 14) +
         "\" font-size=\"12\" fill=\"#888888\">excluded: " +
         esc(x.capability) + " — " + esc(x.reason) + "</text>\n";
    y += 24;
  }
  s += "</svg>\n";
  return s;
}

}  // namespace

std::string spider_svg(const DriftReport& rep) {
  const size_t n = rep.entries.size();
  if (n < 3) return bar_fallback(rep);

  const double cx = 330.0, cy = 330.0, R = 240.0;
  const int height = 660 + 24 * static_cast<int>(rep.excluded.size());
  auto angle = [&](size_t i) {
    return -kPi / 2.0 + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
  };
  auto at = [&](double a, double r) -> Pt {
    return {cx + r * std::cos(a), cy + r * std::sin(a)};
  };
  auto ring_radius = [&](int ring) { return R * (ring + 1) / 5.0; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 760 " +
       std::to_string(height) + "\" font-family=\"sans-serif\">\n";
  s += "<rect width=\"760\" height=\"" + std::to_string(height) +
       "\" fill=\"#ffffff\"/>\n";
  s += "<text x=\"20\" y=\"28\" font-size=\"16\">capability drift: " +
       esc(rep.candidate_model) + " vs " + esc(rep.baseline_model) +
       "</text>\n";

  // Group sectors: one translucent wedge per contiguous same-group run.
  const double half = kPi / static_cast<double>(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && rep.entries[j + 1].group == rep.entries[i].group) ++j;
    const char* color = group_color(rep.entries[i].group);
    if (j - i + 1 == n) {  // one group owns every axis: full disc
      s += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
           num(R) + "\" fill=\"" + std::string(color) +
           "\" fill-opacity=\"0.08\"/>\n";
    } else {
      const double a0 = angle(i) - half;
      const double a1 = angle(j) + half;
      const Pt p0 = at(a0, R), p1 = at(a1, R);
      const int large = (a1 - a0) > kPi ? 1 : 0;
      s += "<path d=\"M " + num(cx) + " " + num(cy) + " L " + num(p0.x) + " " +
           num(p0.y) + " A " + num(R) + " " + num(R) + " 0 " +
           std::to_string(large) + " 1 " + num(p1.x) + " " + num(p1.y) +
           " Z\" fill=\"" + std::string(color) + "\" fill-opacity=\"0.08\"/>\n";
    }
    i = j + 1;
  }

  // Severity rings, innermost None to outermost Catastrophic.
  for (int ring = 0; ring < 5; ++ring) {
    s += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
         num(ring_radius(ring)) +
         "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\" "
         "stroke-dasharray=\"3 3\"/>\n";
    s += "<text x=\"" + num(cx + 5.0) + "\" y=\"" +
         num(cy - ring_radius(ring) - 4.0) +
         "\" font-size=\"10\" fill=\"#999999\">" +
         regime_name(static_cast<Regime>(ring)) + "</text>\n";
  }

  // Spokes and axis labels.
  for (size_t k = 0; k < n; ++k) {
    const double a = angle(k);
    const Pt rim = at(a, R);
    s += "<line x1=\"" + num(cx) + "\" y1=\"" + num(cy) + "\" x2=\"" +
         num(rim.x) + "\" y2=\"" + num(rim.y) +
         "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    const Pt lab = at(a, R + 22.0);
    s += "<text x=\"" + num(lab.x) + "\" y=\"" + num(lab.y) +
         "\" font-size=\"12\" text-anchor=\"middle\" fill=\"" +
         group_color(rep.entries[k].group) + "\">" +
         esc(rep.entries[k].capability) + "</text>\n";
  }

  // Drift polygon and its vertices.
  std::string pts;
  for (size_t k = 0; k < n; ++k) {
    const Pt p = at(angle(k), ring_radius(regime_index(rep.entries[k].regime)));
    if (!pts.empty()) pts += " ";
    pts += num(p.x) + "," + num(p.y);
  }
  s += "<polygon points=\"" + pts +
       "\" fill=\"#555555\" fill-opacity=\"0.25\" stroke=\"#333333\" "
       "stroke-width=\"1.5\"/>\n";
  for (size_t k = 0; k < n; ++k) {
    const DriftEntry& e = rep.entries[k];
    const int ring = regime_index(e.regime);
    const Pt p = at(angle(k), ring_radius(ring));
    s += "<circle class=\"vertex\" data-cap=\"" + esc(e.capability) +
         "\" data-ring=\"" + std::to_string(ring) + "\" data-delta=\"" +
         fmt_double(e.delta_pct) + "\" cx=\"" + num(p.x) + "\" cy=\"" +
         num(p.y) + "\" r=\"4\" fill=\"" + group_color(e.group) + "\"/>\n";
  }

  // Group legend.
  double ly = 60.0;
  for (CapabilityGroup g :
       {CapabilityGroup::CAN, CapabilityGroup::WILL, CapabilityGroup::HOW}) {
    s += "<rect x=\"620\" y=\"" + num(ly - 11.0) +
         "\" width=\"14\" height=\"14\" fill=\"" + group_color(g) +
         "\" fill-opacity=\"0.6\"/>\n";
    s += "<text x=\"640\" y=\"" + num(ly) + "\" font-size=\"12\">" +
         std::string(group_name(g)) + "</text>\n";
    ly += 20.0;
  }

  // Excluded axes, spelled out rather than silently missing.
  double ey = 630.0;
  for (const ExcludedAxis& x : rep.excluded) {
    s += "<text x=\"20\" y=\"" + num(ey) +
         "\" font-size=\"12\" fill=\"#888888\">excluded: " +
         esc(x.capability) + " — " + esc(x.reason) + "</text>\n";
    ey += 24.0;
  }

  s += "</svg>\n";
  return s;
}

std::string sweep_svg(const std::vector<SweepPoint>& points) {
  const double W = 760.0, H = 480.0;
  const double left = 80.0, right = 30.0, top = 40.0, bottom = 60.0;
  const double pw = W - left - right, ph = H - top - bottom;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 760 480\" "
       "font-family=\"sans-serif\">\n";
  s += "<rect width=\"760\" height=\"480\" fill=\"#ffffff\"/>\n";
  s += "<text x=\"20\" y=\"26\" font-size=\"16\">stability–plasticity "
       "trade-off</text>\n";
  if (points.empty()) {
    s += "<text x=\"20\" y=\"60\" font-size=\"13\" fill=\"#888888\">no sweep "
         "points</text>\n</svg>\n";
    return s;
  }

  double wmin = points.front().w, wmax = points.front().w;
  double vmin = 0.0, vmax = 0.0;
  bool first = true;
  for (const SweepPoint& p : points) {
    wmin = std::min(wmin, p.w);
    wmax = std::max(wmax, p.w);
    for (double v : {p.stability, p.plasticity}) {
      if (first) {
        vmin = vmax = v;
        first = false;
      } else {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
    }
  }
  if (wmax == wmin) {
    wmin -= 0.5;
    wmax += 0.5;
  }
  if (vmax == vmin) {
    vmin -= 1.0;
    vmax += 1.0;
  }
  const double vpad = 0.05 * (vmax - vmin);
  vmin -= vpad;
  vmax += vpad;

  auto X = [&](double w) { return left + pw * (w - wmin) / (wmax - wmin); };
  auto Y = [&](double v) { return top + ph * (1.0 - (v - vmin) / (vmax - vmin)); };

  // Horizontal grid with value labels.
  for (int g = 0; g <= 5; ++g) {
    const double v = vmin + (vmax - vmin) * g / 5.0;
    const double y = Y(v);
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" +
         num(left + pw) + "\" y2=\"" + num(y) +
         "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + num(left - 8.0) + "\" y=\"" + num(y + 4.0) +
         "\" font-size=\"11\" text-anchor=\"end\" fill=\"#666666\">" +
         fmt_fixed(v, 1) + "</text>\n";
  }
  // Zero line, when in range.
  if (vmin < 0.0 && vmax > 0.0) {
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(Y(0.0)) + "\" x2=\"" +
         num(left + pw) + "\" y2=\"" + num(Y(0.0)) +
         "\" stroke=\"#aaaaaa\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
  }
  // X ticks at each point.
  for (const SweepPoint& p : points) {
    s += "<line x1=\"" + num(X(p.w)) + "\" y1=\"" + num(top + ph) +
         "\" x2=\"" + num(X(p.w)) + "\" y2=\"" + num(top + ph + 5.0) +
         "\" stroke=\"#666666\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + num(X(p.w)) + "\" y=\"" + num(top + ph + 20.0) +
         "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#666666\">" +
         fmt_double(p.w) + "</text>\n";
  }

  struct Series {
    const char* name;
    const char* color;
  };
  const Series series[2] = {{"stability", "#1f77b4"}, {"plasticity", "#d62728"}};
  for (int si = 0; si < 2; ++si) {
    std::string pl;
    for (const SweepPoint& p : points) {
      const double v = si == 0 ? p.stability : p.plasticity;
      if (!pl.empty()) pl += " ";
      pl += num(X(p.w)) + "," + num(Y(v));
    }
    s += "<polyline points=\"" + pl + "\" fill=\"none\" stroke=\"" +
         std::string(series[si].color) + "\" stroke-width=\"2\"/>\n";
    for (const SweepPoint& p : points) {
      const double v = si == 0 ? p.stability : p.plasticity;
      s += "<circle class=\"point\" data-series=\"" +
           std::string(series[si].name) + "\" data-w=\"" + fmt_double(p.w) +
           "\" data-value=\"" + fmt_double(v) + "\" cx=\"" + num(X(p.w)) +
           "\" cy=\"" + num(Y(v)) + "\" r=\"3.5\" fill=\"" +
           std::string(series[si].color) + "\"/>\n";
    }
    s += "<rect x=\"" + num(left + 10.0) + "\" y=\"" +
         num(top + 8.0 + 20.0 * si) + "\" width=\"14\" height=\"4\" fill=\"" +
         std::string(series[si].color) + "\"/>\n";
    s += "<text x=\"" + num(left + 30.0) + "\" y=\"" +
         num(top + 14.0 + 20.0 * si) + "\" font-size=\"12\">" +
         std::string(series[si].name) + (si == 0 ? " (S)" : " (P)") +
         "</text>\n";
  }

  s += "<text x=\"" + num(left + pw / 2.0) + "\" y=\"" + num(H - 16.0) +
       "\" font-size=\"12\" text-anchor=\"middle\">merge weight w</text>\n";
  s += "<text x=\"22\" y=\"" + num(top + ph / 2.0) +
       "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 22 " +
       num(top + ph / 2.0) + ")\">relative deviation (%)</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace capdrift
