#include "quadradyn/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "quadradyn/compactify.hpp"

namespace quadradyn {

namespace {

struct State {
  double x, y;
};

State eval_field(const VectorField2& f, const State& s) {
  return {f.p.eval(s.x, s.y), f.q.eval(s.x, s.y)};
}

bool finite_state(const State& s) {
  return std::isfinite(s.x) && std::isfinite(s.y);
}

State rk4_step(const VectorField2& f, const State& s, double h) {
  State k1 = eval_field(f, s);
  State k2 = eval_field(f, {s.x + 0.5 * h * k1.x, s.y + 0.5 * h * k1.y});
  State k3 = eval_field(f, {s.x + 0.5 * h * k2.x, s.y + 0.5 * h * k2.y});
  State k4 = eval_field(f, {s.x + h * k3.x, s.y + h * k3.y});
  return {s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
}

// Dormand-Prince 5(4) pair.
bool rk45_step(const VectorField2& f, State& s, double& t, double& h,
               double rel_tol, double t_end) {
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if ((h > 0.0 && t + h > t_end) || (h < 0.0 && t + h < t_end)) h = t_end - t;
  State k1 = eval_field(f, s);
  State k2 = eval_field(f, {s.x + h * a21 * k1.x, s.y + h * a21 * k1.y});
  State k3 = eval_field(f, {s.x + h * (a31 * k1.x + a32 * k2.x),
                            s.y + h * (a31 * k1.y + a32 * k2.y)});
  State k4 = eval_field(
      f, {s.x + h * (a41 * k1.x + a42 * k2.x + a43 * k3.x),
          s.y + h * (a41 * k1.y + a42 * k2.y + a43 * k3.y)});
  State k5 = eval_field(
      f, {s.x + h * (a51 * k1.x + a52 * k2.x + a53 * k3.x + a54 * k4.x),
          s.y + h * (a51 * k1.y + a52 * k2.y + a53 * k3.y + a54 * k4.y)});
  State k6 = eval_field(
      f, {s.x + h * (a61 * k1.x + a62 * k2.x + a63 * k3.x + a64 * k4.x +
                     a65 * k5.x),
          s.y + h * (a61 * k1.y + a62 * k2.y + a63 * k3.y + a64 * k4.y +
                     a65 * k5.y)});
  State y5{s.x + h * (b1 * k1.x + b3 * k3.x + b4 * k4.x + b5 * k5.x +
                      b6 * k6.x),
           s.y + h * (b1 * k1.y + b3 * k3.y + b4 * k4.y + b5 * k5.y +
                      b6 * k6.y)};
  State k7 = eval_field(f, y5);
  double errx = h * (e1 * k1.x + e3 * k3.x + e4 * k4.x + e5 * k5.x +
                     e6 * k6.x + e7 * k7.x);
  double erry = h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y +
                     e6 * k6.y + e7 * k7.y);
  double scale = rel_tol * (1.0 + std::hypot(y5.x, y5.y));
  double err = std::hypot(errx, erry) / scale;
  if (!std::isfinite(err)) {
    s = y5;
    t += h;
    return true;  // caller notices the nonfinite state
  }
  if (err <= 1.0) {
    t += h;
    s = y5;
    double grow = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
    h *= std::fmin(5.0, std::fmax(0.2, grow));
    return true;
  }
  h *= std::fmax(0.2, 0.9 * std::pow(err, -0.2));
  return false;
}

std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

Trajectory integrate(const VectorField2& field, Vec2 start, double t_max,
                     const IntegrateOptions& opts) {
  Trajectory tr;
  State s{start[0], start[1]};
  double t = 0.0;
  tr.samples.push_back({t, s.x, s.y});
  if (t_max == 0.0) return tr;

  double dir = t_max > 0.0 ? 1.0 : -1.0;
  if (!opts.adaptive) {
    double h = dir * std::abs(opts.step);
    long n = std::lround(std::floor(std::abs(t_max) / std::abs(opts.step)));
    for (long i = 0; i < n; ++i) {
      s = rk4_step(field, s, h);
      t += h;
      if (!finite_state(s) || std::hypot(s.x, s.y) > opts.blowup) {
        tr.termination = Termination::BlowUp;
        if (finite_state(s)) tr.samples.push_back({t, s.x, s.y});
        return tr;
      }
      tr.samples.push_back({t, s.x, s.y});
    }
    return tr;
  }

  double h = dir * std::abs(opts.step);
  while (dir * (t_max - t) > 1e-15) {
    if (!rk45_step(field, s, t, h, opts.rel_tol, t_max)) continue;
    if (!finite_state(s) || std::hypot(s.x, s.y) > opts.blowup) {
      tr.termination = Termination::BlowUp;
      if (finite_state(s)) tr.samples.push_back({t, s.x, s.y});
      return tr;
    }
    tr.samples.push_back({t, s.x, s.y});
  }
  return tr;
}

Vec2 to_disk(const Vec2& p) {
  double r = std::hypot(p[0], p[1]);
  if (r == 0.0) return {0.0, 0.0};
  double f = 1.0 / (1.0 + r);
  return {p[0] * f, p[1] * f};
}

namespace {

struct Canvas {
  std::ostringstream body;
  bool disk;
  Window win;

  std::pair<double, double> map(const Vec2& p) const {
    if (disk) {
      Vec2 d = to_disk(p);
      return {300.0 + 280.0 * d[0], 300.0 - 280.0 * d[1]};
    }
    double sx = (p[0] - win.xmin) / (win.xmax - win.xmin) * 600.0;
    double sy = 600.0 - (p[1] - win.ymin) / (win.ymax - win.ymin) * 600.0;
    return {sx, sy};
  }

  void path(const std::vector<Vec2>& pts, const std::string& cls) {
    if (pts.size() < 2) return;
    body << "<path class=\"" << cls << "\" d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto [sx, sy] = map(pts[i]);
      body << (i == 0 ? "M" : " L") << fmt_coord(sx) << " " << fmt_coord(sy);
    }
    body << "\" fill=\"none\" stroke=\"#36648b\" stroke-width=\"0.7\"/>\n";
  }

  void glyph(const Vec2& p, const std::string& cls) {
    auto [sx, sy] = map(p);
    body << "<circle class=\"" << cls << "\" cx=\"" << fmt_coord(sx)
         << "\" cy=\"" << fmt_coord(sy)
         << "\" r=\"5\" fill=\"#b22222\" stroke=\"black\"/>\n";
  }
};

// Continues a blown-up trajectory in a Poincare chart until it meets
// the equator, appending disk-mapped samples.
void chart_tail(const VectorField2& field, const Vec2& last, double time_dir,
                std::vector<Vec2>& pts) {
  bool use_u2 = std::abs(last[1]) > std::abs(last[0]);
  Chart chart = use_u2 ? Chart::U2 : Chart::U1;
  ChartSystem cs = to_chart(field, chart);
  double u, v;
  if (use_u2) {
    u = last[0] / last[1];
    v = 1.0 / last[1];
  } else {
    u = last[1] / last[0];
    v = 1.0 / last[0];
  }
  // Chart time runs at rate v^{d-1}; the v < 0 hemisphere flips for
  // even d (true for the quadratic families).
  double dir = time_dir;
  if ((cs.source_degree - 1) % 2 == 1 && v < 0.0) dir = -dir;
  State s{u, v};
  double h = 1e-3 * dir;
  for (int i = 0; i < 4000; ++i) {
    State next = rk4_step(cs.field, s, h);
    if (!finite_state(next)) break;
    if ((s.y > 0.0) != (next.y > 0.0) || next.y == 0.0) {
      // Reached the equator: emit the limiting direction.
      double ang = use_u2 ? std::atan2(1.0, s.x) : std::atan2(s.x, 1.0);
      if ((use_u2 ? last[1] : last[0]) < 0.0) ang += M_PI;
      pts.push_back({1e9 * std::cos(ang), 1e9 * std::sin(ang)});
      return;
    }
    s = next;
    double x = use_u2 ? s.x / s.y : 1.0 / s.y;
    double y = use_u2 ? 1.0 / s.y : s.x / s.y;
    if (std::isfinite(x) && std::isfinite(y)) pts.push_back({x, y});
  }
}

}  // namespace

std::string render_portrait(const FamilySpec& spec,
                            const PortraitSpec& portrait) {
  VectorField2 field = build_family(spec);
  Canvas cv;
  cv.disk = portrait.disk;
  cv.win = portrait.window;

  std::vector<CriticalPointReport> reports = classify_family(spec);
  std::vector<Vec2> crit;
  for (const auto& r : reports)
    if (r.classification.label != Label::CriticalLine)
      crit.push_back(r.location);

  IntegrateOptions opts;
  opts.adaptive = true;
  opts.step = 1e-2;
  opts.rel_tol = 1e-8;
  opts.blowup = cv.disk ? 1e3 : 1e6;  // disk mode hands off to a chart

  auto draw_from = [&](Vec2 seed, double tdir, const std::string& cls) {
    Trajectory tr = integrate(field, seed, tdir * portrait.t_span, opts);
    std::vector<Vec2> pts;
    pts.reserve(tr.samples.size());
    for (const auto& smp : tr.samples) {
      if (!cv.disk &&
          (smp.x < cv.win.xmin - 1.0 || smp.x > cv.win.xmax + 1.0 ||
           smp.y < cv.win.ymin - 1.0 || smp.y > cv.win.ymax + 1.0))
        break;
      pts.push_back({smp.x, smp.y});
    }
    if (cv.disk && tr.termination == Termination::BlowUp && !pts.empty())
      chart_tail(field, pts.back(), tdir, pts);
    cv.path(pts, cls);
  };

  // Seed grid, skipping seeds that sit on a critical point.
  const Window& w = portrait.window;
  for (int i = 0; i < portrait.seeds; ++i) {
    for (int j = 0; j < portrait.seeds; ++j) {
      double x = w.xmin + (w.xmax - w.xmin) * (i + 0.5) / portrait.seeds;
      double y = w.ymin + (w.ymax - w.ymin) * (j + 0.5) / portrait.seeds;
      bool near = false;
      for (const auto& cp : crit)
        if (std::hypot(x - cp[0], y - cp[1]) < 1e-3) near = true;
      if (near) continue;
      draw_from({x, y}, +1.0, "trajectory");
      draw_from({x, y}, -1.0, "trajectory");
    }
  }

  // Separatrices along saddle eigenvectors.
  if (portrait.separatrices) {
    for (const auto& r : reports) {
      if (r.classification.label != Label::Saddle || !r.eigen) continue;
      const EigenData& e = *r.eigen;
      if (!e.eigvec1 || !e.eigvec2) continue;
      for (double sgn : {+1.0, -1.0}) {
        Vec2 su{r.location[0] + sgn * 1e-4 * (*e.eigvec1)[0],
                r.location[1] + sgn * 1e-4 * (*e.eigvec1)[1]};
        draw_from(su, +1.0, "separatrix");
        Vec2 ss{r.location[0] + sgn * 1e-4 * (*e.eigvec2)[0],
                r.location[1] + sgn * 1e-4 * (*e.eigvec2)[1]};
        draw_from(ss, -1.0, "separatrix");
      }
    }
  }

  // Critical-point glyphs.
  for (const auto& r : reports) {
    if (r.classification.label == Label::CriticalLine) {
      cv.path({{w.xmin, 0.0}, {w.xmax, 0.0}}, "critical-line");
      continue;
    }
    cv.glyph(r.location, "glyph " + label_name(r.classification.label));
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" "
         "height=\"600\" viewBox=\"0 0 600 600\">\n";
  svg << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  if (portrait.disk) {
    svg << "<circle class=\"equator\" cx=\"300\" cy=\"300\" r=\"280\" "
           "fill=\"none\" stroke=\"black\"/>\n";
    for (const auto& ir : infinite_singular_points(spec)) {
      for (double ang : {ir.direction, ir.direction + M_PI}) {
        double sx = 300.0 + 280.0 * std::cos(ang);
        double sy = 300.0 - 280.0 * std::sin(ang);
        svg << "<circle class=\"glyph-infinite "
            << label_name(ir.report.classification.label) << "\" cx=\""
            << fmt_coord(sx) << "\" cy=\"" << fmt_coord(sy)
            << "\" r=\"5\" fill=\"#228b22\" stroke=\"black\"/>\n";
      }
    }
  }
  svg << cv.body.str();
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace quadradyn
