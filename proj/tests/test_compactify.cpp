#include <doctest.h>

#include <cmath>
#include <random>

#include "quadradyn/compactify.hpp"

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

}  // namespace

TEST_CASE("family I chart systems, with the corrected v' sign") {
  double c = 2.0;
  VectorField2 f = build_family(make(Family::I, 0, 0, c));

  ChartSystem u1 = to_chart(f, Chart::U1);
  CHECK(u1.field.p == Poly2::monomial(2, 1, -1.0) + Poly2::constant(-c));
  CHECK(u1.field.q == Poly2::monomial(1, 2, -1.0));

  // The printed (2.9) has v' = -c u^2 v; the transform and the proof's
  // own B = +c u^2 v give the + sign.
  ChartSystem u2 = to_chart(f, Chart::U2);
  CHECK(u2.field.p == Poly2::monomial(0, 1, 1.0) + Poly2::monomial(3, 0, c));
  CHECK(u2.field.q == Poly2::monomial(2, 1, c));
  CHECK(u2.source_degree == 2);

  ChartSystem u3 = to_chart(f, Chart::U3);
  CHECK(u3.field.p == f.p);
  CHECK(u3.field.q == f.q);
}

TEST_CASE("family V chart U2 equals the printed system (2.13)") {
  double b = 2.0, c = 3.0;
  int s = 1;
  double d = b * (s + 4);
  VectorField2 f = build_family(make(Family::V, 0, b, c, 0, s));
  ChartSystem u2 = to_chart(f, Chart::U2);
  Poly2 want_u = Poly2::monomial(0, 1, 1.0) +
                 Poly2::monomial(1, 1, -d / 2.0) +
                 Poly2::monomial(2, 1, 1.5 * b) + Poly2::monomial(3, 0, c);
  Poly2 want_v = Poly2::monomial(0, 2, -d / 2.0) +
                 Poly2::monomial(1, 2, 1.5 * b) + Poly2::monomial(2, 1, c);
  CHECK(u2.field.p == want_u);
  CHECK(u2.field.q == want_v);
}

TEST_CASE("chart transform is directionally consistent with the plane") {
  std::mt19937 rng(414);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  VectorField2 f = build_family(make(Family::V, 0, 1.0, 1.0, 0, 0));
  ChartSystem c1 = to_chart(f, Chart::U1);
  for (int t = 0; t < 100; ++t) {
    double x = u(rng), y = u(rng);
    if (std::abs(x) < 0.2) continue;
    double uu = y / x, vv = 1.0 / x;
    // Pushforward of (P, Q): u = y/x, v = 1/x.
    double px = f.p.eval(x, y), qx = f.q.eval(x, y);
    double udot = (qx * x - y * px) / (x * x);
    double vdot = -px / (x * x);
    double cu = c1.field.p.eval(uu, vv), cv = c1.field.q.eval(uu, vv);
    // Chart time runs at rate v^{d-1}: the v^d clearing absorbs one
    // factor of the u' = v(Q - uP) pushforward.
    double rate = std::pow(vv, c1.source_degree - 1);
    CHECK(cu == doctest::Approx(udot * rate).epsilon(1e-8));
    CHECK(cv == doctest::Approx(vdot * rate).epsilon(1e-8));
  }
}

TEST_CASE("applying the U2 map twice rescales time by v") {
  VectorField2 f = build_family(make(Family::I, 0, 0, 2.0));
  ChartSystem once = to_chart(f, Chart::U2);
  ChartSystem twice = to_chart(once.field, Chart::U2);
  Poly2 v = Poly2::monomial(0, 1, 1.0);
  CHECK(twice.field.p == v * f.p);
  CHECK(twice.field.q == v * f.q);
}

TEST_CASE("U1 has no isolated equator points for any family") {
  for (auto spec : {make(Family::I, 0, 0, 1), make(Family::I, 0, 0, -2),
                    make(Family::IV, 1, 0, 1, 0), make(Family::IV, -1, 0, -1, 2),
                    make(Family::V, 0, 1, 1, 0, 0),
                    make(Family::V, 0, -2, 1, 0, 3)}) {
    VectorField2 f = build_family(spec);
    ChartSystem u1 = to_chart(f, Chart::U1);
    CHECK(real_roots_on_axis(u1.field.p).empty());
  }
  // Families II/III: the U1 equator zero is the closure of the finite
  // critical line y = 0, not an isolated infinite point.
  for (auto spec : {make(Family::II, 0, 1.5, 0), make(Family::III, -2, 0, 0)}) {
    auto reports = infinite_singular_points(spec);
    int isolated_u1 = 0;
    for (const auto& r : reports)
      if (r.chart == Chart::U1 &&
          r.report.classification.label != Label::CriticalLine)
        ++isolated_u1;
    CHECK(isolated_u1 == 0);
  }
}

TEST_CASE("infinite points and their labels per the section-6 propositions") {
  auto pts1 = infinite_singular_points(make(Family::I, 0, 0, 1));
  REQUIRE(pts1.size() == 1);
  CHECK(pts1[0].chart == Chart::U2);
  CHECK(pts1[0].report.classification.label == Label::NonHypUnstableNode);
  CHECK(pts1[0].direction == doctest::Approx(M_PI / 2.0));

  auto pts1n = infinite_singular_points(make(Family::I, 0, 0, -1));
  CHECK(pts1n[0].report.classification.label == Label::NonHypStableNode);

  auto pts3 = infinite_singular_points(make(Family::III, 2, 0, 0));
  bool found_sector = false;
  for (const auto& r : pts3)
    if (r.chart == Chart::U2)
      found_sector =
          r.report.classification.label == Label::EllipticHyperbolicSector;
  CHECK(found_sector);

  auto pts4 = infinite_singular_points(make(Family::IV, 1, 0, -1, 1));
  bool found_node = false;
  for (const auto& r : pts4)
    if (r.chart == Chart::U2)
      found_node = r.report.classification.label == Label::NonHypStableNode;
  CHECK(found_node);
}

TEST_CASE("infinite point locations satisfy the residual invariant") {
  for (auto spec : {make(Family::I, 0, 0, 1), make(Family::V, 0, 1, 1, 0, 0),
                    make(Family::IV, 1, 0, 1, 2)}) {
    VectorField2 f = build_family(spec);
    for (const auto& r : infinite_singular_points(spec)) {
      ChartSystem cs = to_chart(f, r.chart);
      CHECK(r.location[1] == 0.0);
      CHECK(std::abs(cs.field.p.eval(r.location[0], 0.0)) <= 1e-10);
      CHECK(std::abs(cs.field.q.eval(r.location[0], 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("quadruples of the infinity classification match the proofs") {
  // family I U2: (5, 2, -c^2, 4c); family IV/V U2: same shape.
  for (double c : {1.0, -1.0}) {
    auto pts = infinite_singular_points(make(Family::I, 0, 0, c));
    REQUIRE(pts.size() == 1);
    const auto& sd = pts[0].report.classification.series;
    REQUIRE(sd.has_value());
    CHECK(sd->m == 5);
    CHECK(sd->n == 2);
    CHECK(sd->a == doctest::Approx(-c * c).epsilon(1e-12));
    CHECK(sd->b == doctest::Approx(4.0 * c).epsilon(1e-12));
  }
  // family II U2: (3, 1, -4b^2, -6b).
  double b = 2.0;
  auto pts2 = infinite_singular_points(make(Family::II, 0, b, 0));
  for (const auto& r : pts2) {
    if (r.chart != Chart::U2) continue;
    const auto& sd = r.report.classification.series;
    REQUIRE(sd.has_value());
    CHECK(sd->m == 3);
    CHECK(sd->n == 1);
    CHECK(sd->a == doctest::Approx(-4.0 * b * b).epsilon(1e-12));
    CHECK(sd->b == doctest::Approx(-6.0 * b).epsilon(1e-12));
  }
  // family V U2 matches family I's shape.
  auto pts5 = infinite_singular_points(make(Family::V, 0, 1, 2, 0, 0));
  for (const auto& r : pts5) {
    if (r.chart != Chart::U2) continue;
    const auto& sd = r.report.classification.series;
    REQUIRE(sd.has_value());
    CHECK(sd->m == 5);
    CHECK(sd->a == doctest::Approx(-4.0).epsilon(1e-12));  // -c^2
    CHECK(sd->b == doctest::Approx(8.0).epsilon(1e-12));   // 4c
  }
}

TEST_CASE("real_roots_on_axis closed forms") {
  // Linear.
  auto r1 = real_roots_on_axis(Poly2::monomial(1, 0, 2.0) +
                               Poly2::constant(-3.0));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] == doctest::Approx(1.5));
  // Quadratic with two roots.
  auto r2 = real_roots_on_axis(Poly2::monomial(2, 0, 1.0) +
                               Poly2::constant(-4.0));
  REQUIRE(r2.size() == 2);
  // Quadratic with none.
  CHECK(real_roots_on_axis(Poly2::monomial(2, 0, 1.0) + Poly2::constant(1.0))
            .empty());
  // Cubic x^3 - x: roots 0, 1, -1.
  auto r3 = real_roots_on_axis(Poly2::monomial(3, 0, 1.0) +
                               Poly2::monomial(1, 0, -1.0));
  CHECK(r3.size() == 3);
  // One-real-root cubic x^3 - 2.
  auto r4 = real_roots_on_axis(Poly2::monomial(3, 0, 1.0) +
                               Poly2::constant(-2.0));
  REQUIRE(r4.size() == 1);
  CHECK(r4[0] == doctest::Approx(std::cbrt(2.0)));
  // Terms in y do not contribute to the axis restriction.
  CHECK(real_roots_on_axis(Poly2::monomial(0, 3, 5.0)).empty());
}
