#include <doctest.h>

#include <cmath>
#include <string>

#include "quadradyn/algebraic.hpp"
#include "quadradyn/dynamics.hpp"

using namespace quadradyn;

namespace {

FamilySpec make(Family tag, double a, double b, double c, int p = 0,
                int s = 0) {
  FamilySpec spec;
  spec.tag = tag;
  spec.a = a;
  spec.b = b;
  spec.c = c;
  spec.p = p;
  spec.s = s;
  return spec;
}

int count_occurrences(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("integrate with t_max = 0 returns the start sample only") {
  VectorField2 f = build_family(make(Family::I, 0, 0, 1));
  Trajectory tr = integrate(f, {0.5, 0.5}, 0.0);
  REQUIRE(tr.samples.size() == 1);
  CHECK(tr.samples[0].t == 0.0);
  CHECK(tr.samples[0].x == 0.5);
  CHECK(tr.samples[0].y == 0.5);
  CHECK(tr.termination == Termination::TimeLimit);
}

TEST_CASE("fixed-step samples are evenly spaced and monotone in t") {
  VectorField2 f = build_family(make(Family::V, 0, 1, 1, 0, 0));
  IntegrateOptions opts;
  opts.step = 1e-2;
  Trajectory tr = integrate(f, {0.1, 0.0}, 0.5, opts);
  REQUIRE(tr.samples.size() >= 2);
  for (std::size_t i = 1; i < tr.samples.size(); ++i) {
    CHECK(tr.samples[i].t > tr.samples[i - 1].t);
    CHECK(tr.samples[i].t - tr.samples[i - 1].t ==
          doctest::Approx(1e-2).epsilon(1e-9));
  }
  CHECK(tr.samples.back().t == doctest::Approx(0.5));
}

TEST_CASE("family II trajectory blows up at the tangent pole") {
  // x(t) = tan t from (0, 1): finite escape time pi/2.
  VectorField2 f = build_family(make(Family::II, 0, 1, 0));
  IntegrateOptions opts;
  opts.adaptive = true;
  opts.blowup = 1e6;
  Trajectory tr = integrate(f, {0.0, 1.0}, 1.6, opts);
  CHECK(tr.termination == Termination::BlowUp);
  CHECK(tr.samples.back().t <= M_PI / 2.0 + 1e-3);
  CHECK(tr.samples.back().t >= 1.5);
}

TEST_CASE("RK4 conserves the family I Hamiltonian") {
  FamilySpec spec = make(Family::I, 0, 0, 1);
  VectorField2 f = build_family(spec);
  IntegrateOptions opts;
  opts.step = 1e-3;
  Trajectory tr = integrate(f, {1.0, 0.0}, 0.5, opts);
  for (const auto& s : tr.samples) {
    double h = 0.5 * s.y * s.y + s.x * s.x * s.x / 3.0;
    CHECK(h == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("fixed-step error scales as h^4 against the closed form") {
  FamilySpec spec = make(Family::II, 0, 1, 0);
  VectorField2 f = build_family(spec);
  IntegralCurve curve = integral_curve(spec, 0.0, 1.0);
  auto err_at = [&](double h) {
    IntegrateOptions opts;
    opts.step = h;
    Trajectory tr = integrate(f, {0.0, 1.0}, 1.0, opts);
    auto [x, y] = curve.eval(1.0);
    (void)y;
    return std::abs(tr.samples.back().x - x);
  };
  double e1 = err_at(2e-2);
  double e2 = err_at(1e-2);
  CHECK(e1 / e2 >= 14.0);
  CHECK(e1 / e2 <= 18.0);
}

TEST_CASE("adaptive integration matches the closed form tightly") {
  FamilySpec spec = make(Family::II, 0, 1, 0);
  VectorField2 f = build_family(spec);
  IntegralCurve curve = integral_curve(spec, 0.0, 1.0);
  IntegrateOptions opts;
  opts.adaptive = true;
  opts.rel_tol = 1e-10;
  Trajectory tr = integrate(f, {0.0, 1.0}, 1.0, opts);
  auto [x, y] = curve.eval(1.0);
  CHECK(tr.samples.back().x == doctest::Approx(x).epsilon(1e-7));
  CHECK(tr.samples.back().y == doctest::Approx(y).epsilon(1e-7));
}

TEST_CASE("backward integration retraces the forward flow") {
  VectorField2 f = build_family(make(Family::V, 0, 1, 1, 0, 0));
  IntegrateOptions opts;
  opts.step = 1e-3;
  Trajectory fwd = integrate(f, {0.2, -0.1}, 0.4, opts);
  const auto& end = fwd.samples.back();
  Trajectory bwd = integrate(f, {end.x, end.y}, -0.4, opts);
  CHECK(bwd.samples.back().t == doctest::Approx(-0.4));
  CHECK(bwd.samples.back().x == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(bwd.samples.back().y == doctest::Approx(-0.1).epsilon(1e-9));
}

TEST_CASE("to_disk maps the plane strictly inside the unit circle") {
  for (double r : {0.1, 1.0, 10.0, 1e5, 1e9}) {
    Vec2 d = to_disk({r, 0.0});
    CHECK(std::hypot(d[0], d[1]) < 1.0);
  }
  Vec2 far = to_disk({1e12, 1e12});
  CHECK(std::hypot(far[0], far[1]) == doctest::Approx(1.0).epsilon(1e-9));
  Vec2 origin = to_disk({0.0, 0.0});
  CHECK(origin[0] == 0.0);
  CHECK(origin[1] == 0.0);
  // Direction is preserved.
  Vec2 diag = to_disk({3.0, 4.0});
  CHECK(diag[1] / diag[0] == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("window portrait structure for family V") {
  PortraitSpec ps;
  ps.seeds = 4;
  // s = 2 gives d = 6, d^2 - 24b > 0: node plus saddle.
  std::string svg = render_portrait(make(Family::V, 0, 1, 1, 0, 2), ps);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // Node at the origin, saddle at (-1.5, 0), with separatrices.
  CHECK(count_occurrences(svg, "class=\"glyph UnstableNode\"") == 1);
  CHECK(count_occurrences(svg, "class=\"glyph Saddle\"") == 1);
  CHECK(count_occurrences(svg, "class=\"separatrix\"") == 4);
  CHECK(count_occurrences(svg, "class=\"trajectory\"") >= 8);
}

TEST_CASE("seeds = 0 renders glyphs without trajectories") {
  PortraitSpec ps;
  ps.seeds = 0;
  ps.separatrices = false;
  std::string svg = render_portrait(make(Family::V, 0, 1, 1, 0, 0), ps);
  CHECK(count_occurrences(svg, "class=\"trajectory\"") == 0);
  CHECK(count_occurrences(svg, "class=\"separatrix\"") == 0);
  CHECK(count_occurrences(svg, "class=\"glyph ") == 2);
}

TEST_CASE("disk portrait shows the equator and antipodal infinite points") {
  PortraitSpec ps;
  ps.disk = true;
  ps.seeds = 3;
  std::string svg = render_portrait(make(Family::I, 0, 0, 1), ps);
  CHECK(svg.find("class=\"equator\"") != std::string::npos);
  // One U2 infinite point, drawn at both ends of its diameter.
  CHECK(count_occurrences(svg, "class=\"glyph-infinite ") == 2);
  CHECK(count_occurrences(svg, "class=\"glyph Cusp\"") == 1);
}

TEST_CASE("critical line is drawn for family II") {
  PortraitSpec ps;
  ps.seeds = 3;
  std::string svg = render_portrait(make(Family::II, 0, 1, 0), ps);
  CHECK(svg.find("class=\"critical-line\"") != std::string::npos);
}

TEST_CASE("separatrices leave the saddle along its eigenvectors") {
  FamilySpec spec = make(Family::V, 0, 1, 1, 0, 0);
  VectorField2 f = build_family(spec);
  // Saddle at (-1.5, 0): J = [[0,1],[3/2 + d/... ]] via the field.
  PolyJacobian j = jacobian(f);
  double a11 = j.px.eval(-1.5, 0.0), a12 = j.py.eval(-1.5, 0.0);
  double a21 = j.qx.eval(-1.5, 0.0), a22 = j.qy.eval(-1.5, 0.0);
  double tr = a11 + a22, det = a11 * a22 - a12 * a21;
  REQUIRE(det < 0.0);
  double lam = 0.5 * (tr + std::sqrt(tr * tr - 4.0 * det));  // unstable
  // Eigenvector (1, (lam - a11)/a12) since a12 = 1.
  double vy = (lam - a11) / a12;
  double ang = std::atan2(vy, 1.0);
  // Flow a point displaced along the eigenvector; it must keep the
  // eigen-direction while still near the saddle.
  double eps = 1e-4;
  IntegrateOptions opts;
  opts.step = 1e-4;
  Trajectory trj =
      integrate(f, {-1.5 + eps, eps * vy}, 0.05, opts);
  const auto& s = trj.samples.back();
  double got = std::atan2(s.y - 0.0, s.x + 1.5);
  CHECK(std::abs(std::remainder(got - ang, M_PI)) <= 1e-2);
}
