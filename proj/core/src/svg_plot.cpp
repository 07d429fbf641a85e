#include "hynav/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "hynav/errors.hpp"

namespace hynav {

namespace {

constexpr int kSubW = 300, kSubH = 170, kMargin = 46, kGap = 18;
constexpr int kMaxPoints = 1200;

struct Series {
  std::vector<double> t, truth, est;
};

std::string polyline(const std::vector<double>& t, const std::vector<double>& v,
                     double t0, double t1, double v0, double v1, double ox,
                     double oy, const char* style) {
  std::string out = "<polyline fill=\"none\" ";
  out += style;
  out += " points=\"";
  char buf[48];
  const std::size_t stride = std::max<std::size_t>(1, t.size() / kMaxPoints);
  for (std::size_t i = 0; i < t.size(); i += stride) {
    const double px = ox + (t[i] - t0) / (t1 - t0) * kSubW;
    const double py = oy + kSubH - (v[i] - v0) / (v1 - v0) * kSubH;
    std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", px, py);
    out += buf;
  }
  out += "\"/>\n";
  return out;
}

}  // namespace

void write_plot_svg(const std::string& path, const CsvTable& trace, int att_n) {
  const int state_n = att_n + 6;
  if (static_cast<int>(trace.columns.size()) < 1 + 2 * state_n) {
    throw Error("trace table too narrow for plotting");
  }
  // component selection: drop q0 in the quaternion chart so rows stay 3-wide
  std::vector<int> comps;
  for (int i = (att_n == 4 ? 1 : 0); i < att_n; ++i) comps.push_back(i);
  for (int i = att_n; i < att_n + 6; ++i) comps.push_back(i);

  std::vector<Series> series(comps.size());
  for (std::size_t s = 0; s < comps.size(); ++s) {
    for (const auto& row : trace.rows) {
      series[s].t.push_back(row[0]);
      series[s].truth.push_back(row[1 + static_cast<std::size_t>(comps[s])]);
      series[s].est.push_back(
          row[1 + static_cast<std::size_t>(state_n + comps[s])]);
    }
  }

  const int width = kMargin * 2 + 3 * kSubW + 2 * kGap;
  const int height = kMargin * 2 + 3 * kSubH + 2 * kGap + 24;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                width, height, width, height);
  os << buf << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const double t0 = trace.rows.front()[0];
  const double t1 = trace.rows.back()[0];
  for (std::size_t s = 0; s < series.size(); ++s) {
    const int r = static_cast<int>(s) / 3;
    const int c = static_cast<int>(s) % 3;
    const double ox = kMargin + c * (kSubW + kGap);
    const double oy = kMargin + r * (kSubH + kGap);
    double v0 = series[s].truth[0], v1 = v0;
    for (double v : series[s].truth) { v0 = std::min(v0, v); v1 = std::max(v1, v); }
    for (double v : series[s].est) { v0 = std::min(v0, v); v1 = std::max(v1, v); }
    if (v1 - v0 < 1e-12) { v0 -= 0.5; v1 += 0.5; }
    const double pad = 0.05 * (v1 - v0);
    v0 -= pad; v1 += pad;

    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%d\" height=\"%d\" "
                  "fill=\"none\" stroke=\"#888\"/>\n",
                  ox, oy, kSubW, kSubH);
    os << buf;
    const std::string& name = trace.columns[1 + static_cast<std::size_t>(comps[s])];
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                  "font-family=\"sans-serif\">%s</text>\n",
                  ox + 4, oy + 14, name.c_str());
    os << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"9\" fill=\"#555\" "
                  "font-family=\"sans-serif\">[%.3g, %.3g]</text>\n",
                  ox + 4, oy + kSubH - 5, v0, v1);
    os << buf;
    os << polyline(series[s].t, series[s].truth, t0, t1, v0, v1, ox, oy,
                   "stroke=\"#1f77b4\" stroke-width=\"1.4\"");
    os << polyline(series[s].t, series[s].est, t0, t1, v0, v1, ox, oy,
                   "stroke=\"#d62728\" stroke-width=\"1.1\" stroke-dasharray=\"5,3\"");
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"%d\" font-size=\"12\" "
                "font-family=\"sans-serif\">truth (solid)  /  estimate (dashed), "
                "t in [%.3g, %.3g] s</text>\n",
                kMargin, height - 12, t0, t1);
  os << buf << "</svg>\n";
}

}  // namespace hynav
