#include "quadradyn/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quadradyn {

namespace {

constexpr double kPoleMagnitude = 1e12;

// Laurent coefficients of wp: 1/t^2 + sum_{k>=2} c_k t^{2k-2},
// c_2 = g2/20, c_3 = g3/28, recursion for the rest.  Kept through
// t^14 (k = 8).
std::array<double, 9> laurent_coeffs(const WeierstrassInvariants& inv) {
  std::array<double, 9> c{};
  c[2] = inv.g2 / 20.0;
  c[3] = inv.g3 / 28.0;
  for (int k = 4; k <= 8; ++k) {
    double s = 0.0;
    for (int m = 2; m <= k - 2; ++m) s += c[m] * c[k - m];
    c[k] = 3.0 / ((2 * k + 1) * (k - 3)) * s;
  }
  return c;
}

// Crude lattice-scale estimate used as the series switchover radius.
double seed_radius(const WeierstrassInvariants& inv) {
  double s = std::numeric_limits<double>::infinity();
  if (inv.g2 != 0.0) s = std::min(s, std::pow(std::abs(inv.g2), -0.25));
  if (inv.g3 != 0.0) s = std::min(s, std::pow(std::abs(inv.g3), -1.0 / 6.0));
  return 0.5 * s;
}

std::pair<double, double> wp_series(double t,
                                    const WeierstrassInvariants& inv) {
  auto c = laurent_coeffs(inv);
  double t2 = t * t;
  double p = 1.0 / t2;
  double dp = -2.0 / (t2 * t);
  double tp = t2;  // t^{2k-2} for k = 2
  for (int k = 2; k <= 8; ++k) {
    p += c[k] * tp;
    dp += c[k] * (2 * k - 2) * tp / t;
    tp *= t2;
  }
  return {p, dp};
}

// Largest real root of 4x^3 - g2 x - g3.
double largest_real_root(double g2, double g3) {
  double p = -g2 / 4.0;
  double q = -g3 / 4.0;
  double disc = -4.0 * p * p * p - 27.0 * q * q;
  double root;
  if (std::abs(p) < 1e-300 && std::abs(q) < 1e-300) {
    root = 0.0;
  } else if (disc > 0.0) {
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = std::fmin(1.0, std::fmax(-1.0, 3.0 * q / (p * m)));
    double theta = std::acos(arg) / 3.0;
    root = m * std::cos(theta);  // the largest of the three
  } else {
    double hq = q / 2.0;
    double rad = std::sqrt(hq * hq + p * p * p / 27.0);
    root = std::cbrt(-hq + rad) + std::cbrt(-hq - rad);
  }
  // Newton polish.
  for (int it = 0; it < 6; ++it) {
    double f = (4.0 * root * root - g2) * root - g3;
    double df = 12.0 * root * root - g2;
    if (df == 0.0) break;
    root -= f / df;
  }
  return root;
}

}  // namespace

std::pair<double, double> wp_eval(double t, const WeierstrassInvariants& inv) {
  double sign = 1.0;
  if (t < 0.0) {
    // wp is even, wp' odd.
    t = -t;
    sign = -1.0;
  }
  if (t < 1e-6) throw PoleProximityError("wp_eval: t at the origin pole");

  double t0 = seed_radius(inv);
  int halvings = 0;
  double tr = t;
  while (tr > t0 && halvings < 60) {
    tr *= 0.5;
    ++halvings;
  }
  auto [p, dp] = wp_series(tr, inv);
  for (int k = 0; k < halvings; ++k) {
    if (std::abs(dp) < 1e-300)
      throw PoleProximityError("wp_eval: duplication lands on a pole");
    double pp2 = 6.0 * p * p - inv.g2 / 2.0;   // wp''
    double pp3 = 12.0 * p * dp;                // wp'''
    double lam = pp2 / (2.0 * dp);
    double lam_d = (pp3 * dp - pp2 * pp2) / (2.0 * dp * dp);
    double pn = lam * lam - 2.0 * p;
    double dpn = -dp + lam * lam_d;
    p = pn;
    dp = dpn;
  }
  if (std::abs(p) > kPoleMagnitude)
    throw PoleProximityError("wp_eval: t within guard distance of a pole");
  return {p, sign * dp};
}

double wp_real_half_period(const WeierstrassInvariants& inv) {
  if (inv.g2 == 0.0 && inv.g3 == 0.0)
    return std::numeric_limits<double>::infinity();
  double e = largest_real_root(inv.g2, inv.g3);
  double fp = 12.0 * e * e - inv.g2;  // f'(e), 4*(e-r2)(e-r3)
  if (fp <= 1e-12)
    return std::numeric_limits<double>::infinity();  // double root: no period
  // omega = int_0^inf du / sqrt(u^4 + 3 e u^2 + f'(e)/4), via u = sinh w.
  double A = 3.0 * e;
  double B = fp / 4.0;
  auto integrand = [&](double w) {
    double u = std::sinh(w);
    double u2 = u * u;
    return std::cosh(w) / std::sqrt((u2 + A) * u2 + B);
  };
  const int n = 20000;  // Simpson over w in [0, 30]
  const double wmax = 30.0;
  double h = wmax / n;
  double acc = integrand(0.0) + integrand(wmax);
  for (int i = 1; i < n; ++i)
    acc += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i * h);
  return acc * h / 3.0;
}

FirstIntegral first_integral(const FamilySpec& spec) {
  spec.validate(true);
  FirstIntegral fi;
  switch (spec.tag) {
    case Family::I:
      fi.kind = IntegralKind::Hamiltonian;
      fi.expression = Poly2::monomial(0, 2, 0.5) +
                      Poly2::monomial(3, 0, spec.c / 3.0);
      fi.galois_note =
          "foliation group Z_2; variational identity component abelian";
      break;
    case Family::II:
    case Family::III: {
      double k = spec.tag == Family::II ? spec.b : spec.a;
      fi.kind = IntegralKind::LinearInY;
      fi.expression = Poly2::monomial(0, 1, 1.0) + Poly2::monomial(2, 0, -k);
      fi.galois_note =
          "foliation group trivial; variational identity component abelian";
      break;
    }
    case Family::IV:
    case Family::V: {
      bool hamiltonian = (spec.tag == Family::IV && spec.p == -4) ||
                         (spec.tag == Family::V && spec.s == -4);
      if (!hamiltonian)
        throw SpecError(
            "dissipative: no polynomial first integral provided for this "
            "parameter choice");
      double beta = spec.tag == Family::IV ? spec.a * spec.a : spec.b;
      fi.kind = IntegralKind::Hamiltonian;
      fi.expression = Poly2::monomial(0, 2, 0.5) +
                      Poly2::monomial(3, 0, spec.c / 3.0) +
                      Poly2::monomial(2, 0, 0.75 * beta);
      fi.galois_note =
          "foliation group Z_2; variational identity component abelian";
      break;
    }
  }
  // Zero total derivative along the field, coefficient-exact.
  VectorField2 field = build_family(spec, true);
  Poly2 dt = fi.expression.dx() * field.p + fi.expression.dy() * field.q;
  if (!dt.is_zero())
    throw SpecError("first_integral: nonzero total derivative (internal)");
  return fi;
}

std::pair<double, double> IntegralCurve::eval(double t) const {
  if (kind == CurveKind::PCurve) {
    auto [wp, wpp] = wp_eval(t + k0, invariants);
    return {scale * wp + shift, scale * wpp};
  }
  double arg = freq * (t + k2);
  if (std::abs(std::cos(arg)) < 1e-6)
    throw PoleProximityError("tan curve: t at a pole");
  double tn = std::tan(arg);
  return {amp * tn, k1 * (1.0 + tn * tn)};
}

IntegralCurve integral_curve(const FamilySpec& spec, double x0, double y0) {
  spec.validate(true);
  IntegralCurve curve;
  curve.family = spec.tag;

  if (spec.tag == Family::II || spec.tag == Family::III) {
    double b = spec.tag == Family::II ? spec.b : spec.a;
    double k1 = y0 - b * x0 * x0;
    if (k1 * b <= 0.0)
      throw SpecError(
          "branch not covered by the tangent formula (needs k1/b > 0)");
    curve.kind = CurveKind::TanCurve;
    curve.k1 = k1;
    curve.amp = std::sqrt(k1 / b);
    curve.freq = (k1 > 0.0 ? 1.0 : -1.0) * std::sqrt(k1 * b);
    curve.k2 = std::atan(x0 / curve.amp) / curve.freq;
    return curve;
  }

  bool ok = spec.tag == Family::I ||
            (spec.tag == Family::IV && spec.p == -4) ||
            (spec.tag == Family::V && spec.s == -4);
  if (!ok)
    throw SpecError("closed-form curve: family IV/V only with p = -4 / s = -4");
  if (spec.c == 0.0) throw SpecError("closed-form curve requires c != 0");

  double beta = spec.tag == Family::I ? 0.0
                : spec.tag == Family::IV ? spec.a * spec.a
                                         : spec.b;
  double c = spec.c;
  double alpha = -6.0 / c;
  double mu = -3.0 * beta / (4.0 * c);  // depressed-cubic shift
  auto V = [&](double x) { return (c / 3.0) * x * x * x + 0.75 * beta * x * x; };
  auto Vp = [&](double x) { return c * x * x + 1.5 * beta * x; };
  double H = 0.5 * y0 * y0 + V(x0);

  // With x = alpha X + mu the energy level becomes
  // (dX/dt)^2 = 4X^3 - g2 X - g3.
  WeierstrassInvariants inv;
  inv.g2 = (2.0 / alpha) * Vp(mu);
  inv.g3 = (c * c / 18.0) * (V(mu) - H);

  curve.kind = CurveKind::PCurve;
  curve.invariants = inv;
  curve.scale = alpha;
  curve.shift = mu;

  double X0 = (x0 - mu) / alpha;
  double Y0 = y0 / alpha;

  if (inv.g2 == 0.0 && inv.g3 == 0.0) {
    // Degenerate lattice: wp(t) = 1/t^2.
    if (X0 <= 0.0)
      throw PoleProximityError("degenerate curve: X0 not on the 1/t^2 branch");
    double t = 1.0 / std::sqrt(X0);
    curve.k0 = Y0 > 0.0 ? -t : t;
    return curve;
  }

  double omega = wp_real_half_period(inv);
  if (!std::isfinite(omega))
    throw SpecError("integral_curve: degenerate invariants, no real period");
  double e = largest_real_root(inv.g2, inv.g3);
  if (X0 < e - 1e-9 * (1.0 + std::abs(e)))
    throw SpecError("integral_curve: initial point below the wp branch");

  // wp decreases from the pole at 0 to e at the half period; bisect.
  double lo = std::max(2e-6, omega * 1e-3), hi = omega;
  if (wp_eval(lo, inv).first < X0)
    throw PoleProximityError("integral_curve: start too close to the pole");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (wp_eval(mid, inv).first > X0)
      lo = mid;
    else
      hi = mid;
  }
  double tstar = 0.5 * (lo + hi);
  // wp' < 0 on (0, omega); flip the phase when y requires the rising
  // branch (wp even, wp' odd).
  curve.k0 = Y0 > 0.0 ? -tstar : tstar;
  return curve;
}

std::array<std::array<double, 2>, 2> variational_matrix(const FamilySpec& spec,
                                                        double x0, double y0) {
  VectorField2 field = build_family(spec, true);
  PolyJacobian j = jacobian(field);
  return {{{j.px.eval(x0, y0), j.py.eval(x0, y0)},
           {j.qx.eval(x0, y0), j.qy.eval(x0, y0)}}};
}

}  // namespace quadradyn
