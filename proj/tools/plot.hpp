#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lcf/calculus.hpp"
#include "lcf/eval.hpp"

namespace lcf::cli {

enum class PlotKind { secant_vs_tangent, polygon_approx };

struct PlotRequest {
  PlotKind kind = PlotKind::secant_vs_tangent;
  expr::NodePtr f;
  Rational x0{1};         // expansion point (secant/tangent)
  Rational secant_dx{1, 2};  // assignable secant offset
  Rational from{0}, to{1};   // polygon interval
  unsigned sides = 8;
  std::string path;
  bool csv = false;
};

namespace detail {

// Numeric-mode sample; nullopt where the function is undefined.
inline std::optional<double> sample(const expr::NodePtr& f, double x,
                                    const EngineConfig& cfg) {
  try {
    LCNumber pt = LCNumber::from_coefficient(Coefficient(Decimal(x)));
    LCNumber v = expr::evaluate(f, pt, cfg);
    if (v.vanishes()) return 0.0;
    Coefficient st = standard_part(v);
    return st.to_dec().convert_to<double>();
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline double to_double(const Rational& q) {
  return q.convert_to<double>();
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(8);
  os << v;
  return os.str();
}

struct Series {
  std::string label;
  std::string color;
  bool dashed = false;
  bool dots = false;
  std::vector<std::pair<double, double>> pts;  // NaN y breaks the line
};

inline void write_svg(const std::string& path, const std::vector<Series>& series,
                      const std::string& caption) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Series& s : series)
    for (auto [x, y] : s.pts) {
      if (std::isnan(y)) continue;
      xmin = std::min(xmin, x); xmax = std::max(xmax, x);
      ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
  if (xmin > xmax) { xmin = -1; xmax = 1; }
  if (ymin > ymax) { ymin = -1; ymax = 1; }
  double xpad = (xmax - xmin) * 0.08 + 1e-12, ypad = (ymax - ymin) * 0.08 + 1e-12;
  xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

  const double W = 800, H = 600, L = 60, R = 20, T = 40, B = 40;
  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot write '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n"
      << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  // axes through the origin when visible, else along the frame
  double ax = (xmin < 0 && 0 < xmax) ? sx(0) : L;
  double ay = (ymin < 0 && 0 < ymax) ? sy(0) : H - B;
  out << "<line x1=\"" << L << "\" y1=\"" << ay << "\" x2=\"" << W - R
      << "\" y2=\"" << ay << "\" stroke=\"#999\" stroke-width=\"1\"/>\n"
      << "<line x1=\"" << ax << "\" y1=\"" << T << "\" x2=\"" << ax
      << "\" y2=\"" << H - B << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";

  double legend_y = T + 8;
  for (const Series& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    bool pen_down = false;
    for (auto [x, y] : s.pts) {
      if (std::isnan(y)) { if (pen_down) { out << "\"/>\n<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\""; if (s.dashed) out << " stroke-dasharray=\"6 4\""; out << " points=\""; pen_down = false; } continue; }
      out << fmt(sx(x)) << ',' << fmt(sy(y)) << ' ';
      pen_down = true;
    }
    out << "\"/>\n";
    if (s.dots)
      for (auto [x, y] : s.pts)
        if (!std::isnan(y))
          out << "<circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y))
              << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
    out << "<text x=\"" << L + 10 << "\" y=\"" << legend_y << "\" fill=\""
        << s.color << "\" font-family=\"monospace\" font-size=\"13\">"
        << s.label << "</text>\n";
    legend_y += 17;
  }
  out << "<text x=\"" << L + 10 << "\" y=\"" << H - B + 28
      << "\" fill=\"#333\" font-family=\"monospace\" font-size=\"14\">" << caption
      << "</text>\n</svg>\n";
  if (!out.good()) raise(Errc::io_error, "failed while writing '" + path + "'");
}

inline void write_csv(const std::string& path,
                      const std::vector<std::array<double, 3>>& rows,
                      const std::string& comment) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot write '" + path + "'");
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "x,f(x),approx(x)\n";
  for (const auto& r : rows)
    out << fmt(r[0]) << ',' << fmt(r[1]) << ',' << fmt(r[2]) << '\n';
  if (!out.good()) raise(Errc::io_error, "failed while writing '" + path + "'");
}

}  // namespace detail

// Tangent line of f at x0, robust to irrational slopes: exact first, then
// the numeric engine.
inline calculus::LineEq plot_tangent(const expr::NodePtr& f, const Rational& x0,
                                     const EngineConfig& cfg) {
  try {
    return calculus::tangent_line(f, x0, calculus::LineNormalization::slope_intercept,
                                  cfg, Mode::exact);
  } catch (const Error&) {
    return calculus::tangent_line(f, x0, calculus::LineNormalization::slope_intercept,
                                  cfg, Mode::numeric);
  }
}

inline void emit_plot(const PlotRequest& req, const EngineConfig& cfg) {
  using detail::sample;
  using detail::to_double;

  if (req.kind == PlotKind::secant_vs_tangent) {
    double x0 = to_double(req.x0);
    double dx = to_double(req.secant_dx);
    if (dx == 0) raise(Errc::domain_error, "secant offset must be nonzero");
    double span = std::max(2.0, std::abs(dx) * 4.0);
    double lo = x0 - span / 2, hi = x0 + span / 2 + std::max(0.0, dx);

    calculus::LineEq tl = plot_tangent(req.f, req.x0, cfg);
    double slope = tl.A.to_dec().convert_to<double>();
    double intercept = -tl.C.to_dec().convert_to<double>();
    std::string tangent_label = calculus::render_line(tl);

    auto f0 = sample(req.f, x0, cfg), f1 = sample(req.f, x0 + dx, cfg);
    if (!f0 || !f1)
      raise(Errc::domain_error, "function undefined at a secant endpoint");
    double sec_slope = (*f1 - *f0) / dx;

    if (req.csv) {
      std::vector<std::array<double, 3>> rows;
      const int n = 64;
      for (int i = 0; i <= n; ++i) {
        double x = lo + (hi - lo) * i / n;
        auto y = sample(req.f, x, cfg);
        if (!y) continue;
        rows.push_back({x, *y, slope * x + intercept});
      }
      detail::write_csv(req.path, rows,
                        "tangent: " + tangent_label + "; secant through x0=" +
                            detail::fmt(x0) + " and x0+dx=" + detail::fmt(x0 + dx) +
                            ", slope " + detail::fmt(sec_slope));
      return;
    }

    detail::Series curve{"f(x)", "#1f77b4", false, false, {}};
    const int n = 200;
    for (int i = 0; i <= n; ++i) {
      double x = lo + (hi - lo) * i / n;
      auto y = sample(req.f, x, cfg);
      curve.pts.push_back({x, y ? *y : std::nan("")});
    }
    detail::Series secant{"secant (dx = " + to_string(req.secant_dx) + ")",
                          "#7f7f7f", true, true, {}};
    secant.pts.push_back({lo, *f0 + sec_slope * (lo - x0)});
    secant.pts.push_back({hi, *f0 + sec_slope * (hi - x0)});
    detail::Series tangent{"tangent: " + tangent_label, "#d62728", false, false, {}};
    tangent.pts.push_back({lo, slope * lo + intercept});
    tangent.pts.push_back({hi, slope * hi + intercept});
    detail::write_svg(req.path, {curve, secant, tangent}, tangent_label);
    return;
  }

  // polygon_approx: the inscribed chord polygon with an assignable side count
  if (req.sides < 2) raise(Errc::domain_error, "polygon needs at least 2 sides");
  if (req.from >= req.to) raise(Errc::domain_error, "empty interval");
  std::vector<std::array<double, 3>> vertices;
  for (unsigned i = 0; i <= req.sides; ++i) {
    Rational x = req.from + (req.to - req.from) * Rational(i) / Rational(req.sides);
    double xd = to_double(x);
    auto y = sample(req.f, xd, cfg);
    if (!y)
      raise(Errc::domain_error, "function undefined at vertex x = " + to_string(x));
    vertices.push_back({xd, *y, *y});
  }
  if (req.csv) {
    detail::write_csv(req.path, vertices,
                      "polygon vertices, " + std::to_string(req.sides) + " sides");
    return;
  }
  detail::Series curve{"f(x)", "#1f77b4", false, false, {}};
  double lo = detail::to_double(req.from), hi = detail::to_double(req.to);
  const int n = 200;
  for (int i = 0; i <= n; ++i) {
    double x = lo + (hi - lo) * i / n;
    auto y = sample(req.f, x, cfg);
    curve.pts.push_back({x, y ? *y : std::nan("")});
  }
  detail::Series poly{std::to_string(req.sides) + "-side polygon", "#d62728",
                      false, true, {}};
  for (const auto& v : vertices) poly.pts.push_back({v[0], v[1]});
  detail::write_svg(req.path, {curve, poly},
                    "inscribed polygon, " + std::to_string(req.sides) + " sides");
}

}  // namespace lcf::cli
