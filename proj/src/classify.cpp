#include "quadradyn/classify.hpp"

#include <cmath>

namespace quadradyn {

namespace {

// Residual tolerance for "this point is critical".
constexpr double kCriticalTol = 1e-10;

Vec2 normalize_sign(Vec2 v) {
  double n = std::hypot(v[0], v[1]);
  v[0] /= n;
  v[1] /= n;
  // First nonzero component positive, for deterministic reports.
  double lead = std::abs(v[0]) > 1e-14 ? v[0] : v[1];
  if (lead < 0.0) {
    v[0] = -v[0];
    v[1] = -v[1];
  }
  return v;
}

Vec2 eigenvector_for(const Mat2& m, double lambda) {
  // (m - lambda I) v = 0; pick the larger row.
  double r0x = m[0][0] - lambda, r0y = m[0][1];
  double r1x = m[1][0], r1y = m[1][1] - lambda;
  double n0 = std::hypot(r0x, r0y), n1 = std::hypot(r1x, r1y);
  Vec2 v;
  if (n0 >= n1 && n0 > 0.0)
    v = {-r0y, r0x};
  else if (n1 > 0.0)
    v = {-r1y, r1x};
  else
    v = {1.0, 0.0};  // m == lambda I
  return normalize_sign(v);
}

Mat2 eval_jacobian(const VectorField2& field, const Vec2& at) {
  PolyJacobian j = jacobian(field);
  return Mat2{{{j.px.eval(at[0], at[1]), j.py.eval(at[0], at[1])},
               {j.qx.eval(at[0], at[1]), j.qy.eval(at[0], at[1])}}};
}

// Affine substitution: p(x0 + c00 u + c01 v, y0 + c10 u + c11 v) as a
// polynomial in (u, v).
Poly2 affine_substitute(const Poly2& p, const Vec2& origin, const Mat2& c) {
  Poly2 xs = Poly2::constant(origin[0]) + Poly2::monomial(1, 0, c[0][0]) +
             Poly2::monomial(0, 1, c[0][1]);
  Poly2 ys = Poly2::constant(origin[1]) + Poly2::monomial(1, 0, c[1][0]) +
             Poly2::monomial(0, 1, c[1][1]);
  int dmax = p.degree();
  std::vector<Poly2> xp{Poly2::constant(1.0)}, yp{Poly2::constant(1.0)};
  for (int k = 1; k <= dmax; ++k) {
    xp.push_back(xp.back() * xs);
    yp.push_back(yp.back() * ys);
  }
  Poly2 r;
  for (const auto& [k, coef] : p.terms())
    r += coef * (xp[static_cast<std::size_t>(k.first)] *
                 yp[static_cast<std::size_t>(k.second)]);
  return r;
}

// Snap coefficients whose magnitude is a rounding residue to zero.
Poly2 clean(const Poly2& p) {
  double scale = 0.0;
  for (const auto& [k, c] : p.terms()) scale = std::max(scale, std::abs(c));
  Poly2 r;
  for (const auto& [k, c] : p.terms())
    if (std::abs(c) > 1e-12 * scale) r.set(k.first, k.second, c);
  return r;
}

}  // namespace

EigenData EigenData::from_matrix(const Mat2& m) {
  EigenData e;
  e.trace = m[0][0] + m[1][1];
  e.det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  e.discriminant = e.trace * e.trace - 4.0 * e.det;
  if (e.discriminant >= 0.0) {
    double root = std::sqrt(e.discriminant);
    e.lambda1 = {(e.trace + root) / 2.0, 0.0};
    e.lambda2 = {(e.trace - root) / 2.0, 0.0};
    e.eigvec1 = eigenvector_for(m, e.lambda1.real());
    e.eigvec2 = eigenvector_for(m, e.lambda2.real());
  } else {
    double root = std::sqrt(-e.discriminant);
    e.lambda1 = {e.trace / 2.0, root / 2.0};
    e.lambda2 = std::conj(e.lambda1);
  }
  return e;
}

std::string label_name(Label l) {
  switch (l) {
    case Label::Saddle: return "Saddle";
    case Label::StableNode: return "StableNode";
    case Label::UnstableNode: return "UnstableNode";
    case Label::StableFocus: return "StableFocus";
    case Label::UnstableFocus: return "UnstableFocus";
    case Label::LinearCenterOrFocusOrCenter: return "LinearCenterOrFocusOrCenter";
    case Label::Cusp: return "Cusp";
    case Label::SaddleNode: return "SaddleNode";
    case Label::CenterOrFocus: return "CenterOrFocus";
    case Label::EllipticHyperbolicSector: return "EllipticHyperbolicSector";
    case Label::NonHypStableNode: return "NonHypStableNode";
    case Label::NonHypUnstableNode: return "NonHypUnstableNode";
    case Label::CriticalLine: return "CriticalLine";
  }
  return "?";
}

FiniteCriticalPoints find_finite_critical_points(const FamilySpec& spec) {
  spec.validate();
  FiniteCriticalPoints r;
  switch (spec.tag) {
    case Family::I:
      r.points.push_back({0.0, 0.0});
      break;
    case Family::II:
    case Family::III:
      r.critical_line = true;
      break;
    case Family::IV: {
      r.points.push_back({0.0, 0.0});
      r.points.push_back({derived_params(spec).second_point_x, 0.0});
      break;
    }
    case Family::V: {
      r.points.push_back({0.0, 0.0});
      if (spec.c != 0.0)
        r.points.push_back({derived_params(spec).second_point_x, 0.0});
      break;
    }
  }
  return r;
}

Classification classify_hyperbolic(const EigenData& e) {
  double scale = 1.0 + std::abs(e.trace) + std::sqrt(std::abs(e.det));
  double gate = kZeroThreshold * scale;
  if (std::abs(e.lambda1) < gate && std::abs(e.lambda2) < gate)
    throw SpecError("non-hyperbolic, route to Theorem 2.2");
  if (e.real()) {
    double l1 = e.lambda1.real(), l2 = e.lambda2.real();
    double prod = l1 * l2;
    if (prod < 0.0) return {Label::Saddle, {"Thm2.1(a)"}, std::nullopt};
    if (prod > 0.0) {
      Label lab = l1 > 0.0 ? Label::UnstableNode : Label::StableNode;
      return {lab, {"Thm2.1(b)"}, std::nullopt};
    }
    throw SpecError("zero eigenvalue: outside Theorem 2.1");
  }
  double alpha = e.lambda1.real();
  double gate_re = kZeroThreshold * (1.0 + std::abs(e.trace));
  if (std::abs(alpha) <= gate_re)
    return {Label::LinearCenterOrFocusOrCenter, {"Thm2.1(d)"}, std::nullopt};
  Label lab = alpha > 0.0 ? Label::UnstableFocus : Label::StableFocus;
  return {lab, {"Thm2.1(c)"}, std::nullopt};
}

NormalFrame normalize_frame(const VectorField2& v, const Vec2& point) {
  Mat2 m = eval_jacobian(v, point);
  double scale = 0.0;
  for (const auto& row : m)
    for (double x : row) scale = std::max(scale, std::abs(x));
  if (scale == 0.0)
    throw SpecError("normalize_frame: zero linear part (rank 0) unsupported");
  double tol = 1e-10 * (1.0 + scale);
  double tr = m[0][0] + m[1][1];
  double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (std::abs(tr) > tol || std::abs(det) > tol * (1.0 + scale))
    throw SpecError("normalize_frame: linearization is not nilpotent");

  // M is nilpotent of rank 1: pick v2 with M v2 != 0, set v1 = M v2.
  // Then M v1 = M^2 v2 = 0 and the basis [v1 v2] puts M in the form
  // [[0,1],[0,0]].
  Vec2 col1{m[0][0], m[1][0]}, col2{m[0][1], m[1][1]};
  Vec2 v1, v2;
  if (std::hypot(col1[0], col1[1]) >= std::hypot(col2[0], col2[1])) {
    v2 = {1.0, 0.0};
    v1 = col1;
  } else {
    v2 = {0.0, 1.0};
    v1 = col2;
  }
  Mat2 basis{{{v1[0], v2[0]}, {v1[1], v2[1]}}};
  double bdet = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0];
  Mat2 inv{{{basis[1][1] / bdet, -basis[0][1] / bdet},
            {-basis[1][0] / bdet, basis[0][0] / bdet}}};

  Poly2 pz = affine_substitute(v.p, point, basis);
  Poly2 qz = affine_substitute(v.q, point, basis);
  Poly2 comp1 = clean(inv[0][0] * pz + inv[0][1] * qz);
  Poly2 comp2 = clean(inv[1][0] * pz + inv[1][1] * qz);
  return NormalFrame{VectorField2{comp1, comp2}, point, basis};
}

Classification classify_nonhyperbolic(const VectorField2& v, int order,
                                      double tau0) {
  // Contract: x' = y + A, y' = B with A, B starting at degree >= 2.
  Poly2 a = v.p - Poly2::monomial(0, 1, 1.0);
  const Poly2& b = v.q;
  auto low_order_clear = [](const Poly2& p) {
    return p.coeff(0, 0) == 0.0 && p.coeff(1, 0) == 0.0 && p.coeff(0, 1) == 0.0;
  };
  if (!low_order_clear(a) || !low_order_clear(b))
    throw SpecError("classify_nonhyperbolic: field not in normal form");

  PowerSeries1 f = series_solve_implicit(a, order);
  PowerSeries1 F = compose_series(b, f);
  PowerSeries1 G = compose_series(a.dx() + b.dy(), f);

  auto lf = leading_term(F, tau0);
  if (!lf)
    throw SpecError("classify_nonhyperbolic: F identically zero through K, "
                    "degenerate beyond Theorem 2.2");
  auto lg = leading_term(G, tau0);

  Classification cl;
  SeriesData sd;
  sd.m = lf->exponent;
  sd.a = lf->coefficient;
  if (lg) {
    sd.n = lg->exponent;
    sd.b = lg->coefficient;
  }
  cl.series = sd;

  int m = sd.m;
  double ca = sd.a;
  if (!lg) {
    // Case (1): G == 0.
    if (m % 2 == 0) {
      cl.label = Label::Cusp;
      cl.theorem_trace = {"Thm2.2", "1", "ii"};
    } else if (ca > 0.0) {
      cl.label = Label::Saddle;
      cl.theorem_trace = {"Thm2.2", "1", "i", "a>0"};
    } else {
      cl.label = Label::CenterOrFocus;
      cl.theorem_trace = {"Thm2.2", "1", "i", "a<0"};
    }
    return cl;
  }

  int n = sd.n;
  double cb = sd.b;
  if (m % 2 == 0) {
    if (m < 2 * n + 1) {
      cl.label = Label::Cusp;
      cl.theorem_trace = {"Thm2.2", "2", "i", "a"};
    } else {
      cl.label = Label::SaddleNode;
      cl.theorem_trace = {"Thm2.2", "2", "i", "b"};
    }
    return cl;
  }
  if (ca > 0.0) {
    cl.label = Label::Saddle;
    cl.theorem_trace = {"Thm2.2", "2", "ii"};
    return cl;
  }
  double disc = cb * cb + 4.0 * ca * (n + 1);
  if (m < 2 * n + 1 || (m == 2 * n + 1 && disc < 0.0)) {
    cl.label = Label::CenterOrFocus;
    cl.theorem_trace = {"Thm2.2", "2", "iii", "a"};
  } else if (n % 2 == 1) {
    cl.label = Label::EllipticHyperbolicSector;
    cl.theorem_trace = {"Thm2.2", "2", "iii", "b"};
  } else {
    cl.label = cb < 0.0 ? Label::NonHypStableNode : Label::NonHypUnstableNode;
    cl.theorem_trace = {"Thm2.2", "2", "iii", "c"};
  }
  return cl;
}

CriticalPointReport classify_field_point(const VectorField2& field,
                                         const Vec2& point) {
  if (std::abs(field.p.eval(point[0], point[1])) > kCriticalTol ||
      std::abs(field.q.eval(point[0], point[1])) > kCriticalTol)
    throw SpecError("classify_field_point: not a critical point");

  CriticalPointReport rep;
  rep.location = point;
  Mat2 m = eval_jacobian(field, point);
  EigenData e = EigenData::from_matrix(m);
  rep.eigen = e;

  double scale = 1.0 + std::abs(e.trace) + std::sqrt(std::abs(e.det));
  double gate = kZeroThreshold * scale;
  bool z1 = std::abs(e.lambda1) < gate;
  bool z2 = std::abs(e.lambda2) < gate;
  if (z1 && z2) {
    NormalFrame nf = normalize_frame(field, point);
    rep.classification = classify_nonhyperbolic(nf.field);
  } else if (z1 || z2) {
    // Semi-hyperbolic: one zero eigenvalue with quadratic
    // nonlinearity; the collision point of the transcritical sweeps.
    rep.classification = {Label::SaddleNode, {"semi-hyperbolic"}, std::nullopt};
    rep.notes.push_back(
        "one zero eigenvalue: outside Theorem 2.1/2.2 hypotheses; "
        "labeled by the center-manifold quadratic");
  } else {
    rep.classification = classify_hyperbolic(e);
  }
  return rep;
}

ManifoldApprox approximate_manifold(const FamilySpec& spec,
                                    const Vec2& saddle) {
  spec.validate();
  if (spec.tag != Family::IV && spec.tag != Family::V)
    throw SpecError("approximate_manifold: only families IV and V");
  VectorField2 field = build_family(spec);
  Mat2 m = eval_jacobian(field, saddle);
  EigenData e = EigenData::from_matrix(m);
  if (!e.real() || e.lambda1.real() <= 0.0 || e.lambda2.real() >= 0.0)
    throw SpecError("approximate_manifold: point is not a saddle");
  double w = e.lambda1.real();
  double v = e.lambda2.real();
  ManifoldApprox ma;
  ma.point = saddle;
  ma.w = w;
  ma.v = v;
  ma.stable_coeff = spec.c / ((v - w) * (v - 2.0 * w));
  ma.unstable_coeff = 2.0 * spec.c / ((v - w) * (v - 2.0 * w));
  // Eigenbasis columns (1, w), (1, v): the Jacobian rows are
  // [[0,1],[k, d/2]], so (1, lambda) is an eigenvector.
  ma.change_of_basis = {{{1.0, 1.0}, {w, v}}};
  return ma;
}

CriticalPointReport classify_point(const FamilySpec& spec, const Vec2& point) {
  spec.validate();
  VectorField2 field = build_family(spec);
  CriticalPointReport rep = classify_field_point(field, point);

  bool origin = point[0] == 0.0 && point[1] == 0.0;
  if (spec.tag == Family::V && origin &&
      (rep.classification.label == Label::StableFocus ||
       rep.classification.label == Label::UnstableFocus)) {
    rep.notes.push_back(
        "Prop 4.5(c) statement and proof disagree on the focus stability "
        "here; the label follows sign(Re lambda) = sign(d)");
  }
  if (spec.tag == Family::V && origin && spec.c == 0.0 &&
      (rep.classification.label == Label::Saddle ||
       rep.classification.label == Label::StableNode ||
       rep.classification.label == Label::UnstableNode)) {
    rep.notes.push_back(
        "the c=0 proposition (R4 case) swaps the b>0/b<0 labels; "
        "lambda1*lambda2 = +3b/2, so b>0 gives a node and b<0 a saddle; "
        "the label follows the eigenvalues");
  }
  if (spec.tag == Family::IV && origin && spec.p == 0 &&
      (rep.classification.label == Label::StableFocus ||
       rep.classification.label == Label::UnstableFocus)) {
    rep.notes.push_back(
        "Prop 4.4(a) asserts a node for all p, but d^2-24a^2 < 0 at p=0; "
        "the label follows the complex eigenvalues (Prop 4.4(b))");
  }
  if (rep.classification.label == Label::Saddle &&
      (spec.tag == Family::IV || spec.tag == Family::V))
    rep.manifold = approximate_manifold(spec, point);
  return rep;
}

std::vector<CriticalPointReport> classify_family(const FamilySpec& spec) {
  FiniteCriticalPoints pts = find_finite_critical_points(spec);
  std::vector<CriticalPointReport> out;
  if (pts.critical_line) {
    CriticalPointReport rep;
    rep.location = {0.0, 0.0};
    rep.classification = {Label::CriticalLine, {"line of critical points y=0"},
                          std::nullopt};
    rep.notes.push_back("every point (x, 0) is critical; no isolated analysis");
    out.push_back(rep);
    return out;
  }
  for (const Vec2& p : pts.points) out.push_back(classify_point(spec, p));
  return out;
}

}  // namespace quadradyn
