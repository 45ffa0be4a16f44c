#include "quadradyn/compactify.hpp"

#include <algorithm>
#include <cmath>

namespace quadradyn {

namespace {

// v^d * P(1/v, u/v) for chart U1: x^i y^j -> u^j v^{d-i-j}.
Poly2 lift_u1(const Poly2& p, int d) {
  Poly2 r;
  for (const auto& [k, c] : p.terms()) {
    int e = d - k.first - k.second;
    if (e < 0) throw SpecError("to_chart: source degree too small");
    r.set(k.second, e, r.coeff(k.second, e) + c);
  }
  return r;
}

// v^d * P(u/v, 1/v) for chart U2: x^i y^j -> u^i v^{d-i-j}.
Poly2 lift_u2(const Poly2& p, int d) {
  Poly2 r;
  for (const auto& [k, c] : p.terms()) {
    int e = d - k.first - k.second;
    if (e < 0) throw SpecError("to_chart: source degree too small");
    r.set(k.first, e, r.coeff(k.first, e) + c);
  }
  return r;
}

// True when the vertical line u = u0 is critical for the whole field
// (the finite critical line of families II/III reaches the equator).
bool line_critical(const VectorField2& f, double u0) {
  for (const Poly2* comp : {&f.p, &f.q}) {
    std::map<int, double> by_v;
    for (const auto& [k, c] : comp->terms())
      by_v[k.second] += c * std::pow(u0, k.first);
    for (const auto& [j, c] : by_v)
      if (std::abs(c) > 1e-12) return false;
  }
  return true;
}

void push_root(std::vector<double>& roots, double r) {
  if (r == 0.0) r = 0.0;  // normalize -0.0
  for (double x : roots)
    if (std::abs(x - r) <= 1e-9 * (1.0 + std::abs(r))) return;
  roots.push_back(r);
}

}  // namespace

std::string chart_name(Chart c) {
  switch (c) {
    case Chart::U1: return "U1";
    case Chart::U2: return "U2";
    case Chart::U3: return "U3";
  }
  return "?";
}

ChartSystem to_chart(const VectorField2& v, Chart chart) {
  int d = v.degree();
  Poly2 u_mono = Poly2::monomial(1, 0, 1.0);
  Poly2 v_mono = Poly2::monomial(0, 1, 1.0);
  switch (chart) {
    case Chart::U1: {
      Poly2 lp = lift_u1(v.p, d), lq = lift_u1(v.q, d);
      return {chart, VectorField2{-(u_mono * lp) + lq, -(v_mono * lp)}, d};
    }
    case Chart::U2: {
      Poly2 lp = lift_u2(v.p, d), lq = lift_u2(v.q, d);
      return {chart, VectorField2{lp - u_mono * lq, -(v_mono * lq)}, d};
    }
    case Chart::U3:
      return {chart, v, d};
  }
  throw SpecError("unreachable chart");
}

std::vector<double> real_roots_on_axis(const Poly2& p) {
  std::vector<double> c(4, 0.0);
  int deg = -1;
  for (const auto& [k, coef] : p.terms()) {
    if (k.second != 0) continue;
    if (k.first > 3) throw SpecError("real_roots_on_axis: degree > 3");
    c[static_cast<std::size_t>(k.first)] = coef;
    deg = std::max(deg, k.first);
  }
  while (deg >= 0 && c[static_cast<std::size_t>(deg)] == 0.0) --deg;

  std::vector<double> roots;
  if (deg <= 0) return roots;  // nonzero constant or zero restriction
  if (deg == 1) {
    push_root(roots, -c[0] / c[1]);
    return roots;
  }
  if (deg == 2) {
    double a = c[2], b = c[1], cc = c[0];
    double disc = b * b - 4.0 * a * cc;
    if (disc < 0.0) return roots;
    double s = std::sqrt(disc);
    push_root(roots, (-b + s) / (2.0 * a));
    push_root(roots, (-b - s) / (2.0 * a));
    return roots;
  }
  // Depressed cubic t^3 + pt + q with u = t - b/(3a).
  double a = c[3], b = c[2], cc = c[1], dd = c[0];
  double sh = b / (3.0 * a);
  double pp = cc / a - 3.0 * sh * sh;
  double qq = 2.0 * sh * sh * sh - sh * cc / a + dd / a;
  double disc = -4.0 * pp * pp * pp - 27.0 * qq * qq;
  auto emit = [&](double t) { push_root(roots, t - sh); };
  if (std::abs(pp) < 1e-14 && std::abs(qq) < 1e-14) {
    emit(0.0);
  } else if (disc > 0.0) {
    // Three real roots, trigonometric form.
    double m = 2.0 * std::sqrt(-pp / 3.0);
    double arg = std::clamp(3.0 * qq / (pp * m), -1.0, 1.0);
    double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      emit(m * std::cos(theta - 2.0 * M_PI * k / 3.0));
  } else {
    // One real root, Cardano.
    double half_q = qq / 2.0;
    double rad = std::sqrt(half_q * half_q + pp * pp * pp / 27.0);
    double u3 = -half_q + rad;
    double v3 = -half_q - rad;
    double t = std::cbrt(u3) + std::cbrt(v3);
    emit(t);
  }
  // Newton polish against the original coefficients.
  for (double& r : roots) {
    for (int it = 0; it < 4; ++it) {
      double f = ((c[3] * r + c[2]) * r + c[1]) * r + c[0];
      double df = (3.0 * c[3] * r + 2.0 * c[2]) * r + c[1];
      if (df == 0.0) break;
      r -= f / df;
    }
  }
  return roots;
}

std::vector<InfinitePointReport> infinite_singular_points(
    const FamilySpec& spec) {
  spec.validate();
  VectorField2 field = build_family(spec);
  std::vector<InfinitePointReport> out;

  ChartSystem u1 = to_chart(field, Chart::U1);
  for (double r : real_roots_on_axis(u1.field.p)) {
    InfinitePointReport rep;
    rep.chart = Chart::U1;
    rep.location = {r, 0.0};
    if (line_critical(u1.field, r)) {
      // Not an isolated infinite point: the finite critical line
      // y = 0 closes up at this equator direction.
      rep.report.location = rep.location;
      rep.report.classification.label = Label::CriticalLine;
      rep.report.notes.push_back(
          "equator endpoint of the finite critical line y = 0; the printed "
          "chart system drops the factor u that vanishes here");
    } else {
      rep.report = classify_field_point(u1.field, rep.location);
    }
    rep.direction = std::atan(r);
    out.push_back(rep);
  }

  // U2 contributes only the vertical direction; u != 0 roots repeat U1.
  ChartSystem u2 = to_chart(field, Chart::U2);
  for (double r : real_roots_on_axis(u2.field.p)) {
    if (std::abs(r) > 1e-12) continue;
    InfinitePointReport rep;
    rep.chart = Chart::U2;
    rep.location = {0.0, 0.0};
    rep.report = classify_field_point(u2.field, rep.location);
    rep.direction = M_PI / 2.0;
    out.push_back(rep);
  }
  return out;
}

}  // namespace quadradyn
