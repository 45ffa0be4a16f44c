#include "quadradyn/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quadradyn {

double Poly2::eval(double x, double y) const {
  // Horner-by-total-degree: group terms by total degree, evaluate
  // monomials with cached powers.
  int d = degree();
  if (d < 0) return 0.0;
  std::vector<double> xp(static_cast<std::size_t>(d) + 1, 1.0);
  std::vector<double> yp(static_cast<std::size_t>(d) + 1, 1.0);
  for (int k = 1; k <= d; ++k) {
    xp[static_cast<std::size_t>(k)] = xp[static_cast<std::size_t>(k - 1)] * x;
    yp[static_cast<std::size_t>(k)] = yp[static_cast<std::size_t>(k - 1)] * y;
  }
  double acc = 0.0;
  for (int total = d; total >= 0; --total) {
    for (const auto& [k, c] : terms_) {
      if (k.first + k.second != total) continue;
      acc += c * xp[static_cast<std::size_t>(k.first)] *
             yp[static_cast<std::size_t>(k.second)];
    }
  }
  return acc;
}

Poly2 Poly2::dx() const {
  Poly2 r;
  for (const auto& [k, c] : terms_)
    if (k.first > 0) r.set(k.first - 1, k.second, c * k.first);
  return r;
}

Poly2 Poly2::dy() const {
  Poly2 r;
  for (const auto& [k, c] : terms_)
    if (k.second > 0) r.set(k.first, k.second - 1, c * k.second);
  return r;
}

Poly2 Poly2::operator-() const {
  Poly2 r;
  for (const auto& [k, c] : terms_) r.terms_[k] = -c;
  return r;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [k, c] : o.terms_) set(k.first, k.second, coeff(k.first, k.second) + c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [k, c] : o.terms_) set(k.first, k.second, coeff(k.first, k.second) - c);
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      int i = ka.first + kb.first;
      int j = ka.second + kb.second;
      r.set(i, j, r.coeff(i, j) + ca * cb);
    }
  return r;
}

Poly2 operator*(double s, const Poly2& p) {
  Poly2 r;
  for (const auto& [k, c] : p.terms_) r.set(k.first, k.second, s * c);
  return r;
}

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    if (k.first > 0) os << "*x^" << k.first;
    if (k.second > 0) os << "*y^" << k.second;
  }
  return os.str();
}

PolyJacobian jacobian(const VectorField2& v) {
  return PolyJacobian{v.p.dx(), v.p.dy(), v.q.dx(), v.q.dy()};
}

PowerSeries1 PowerSeries1::operator-() const {
  PowerSeries1 r(truncation_order());
  for (int k = 0; k <= truncation_order(); ++k) r[k] = -(*this)[k];
  return r;
}

PowerSeries1 operator+(const PowerSeries1& a, const PowerSeries1& b) {
  if (a.truncation_order() != b.truncation_order())
    throw SpecError("PowerSeries1: mismatched truncation orders");
  PowerSeries1 r(a.truncation_order());
  for (int k = 0; k <= r.truncation_order(); ++k) r[k] = a[k] + b[k];
  return r;
}

PowerSeries1 operator-(const PowerSeries1& a, const PowerSeries1& b) {
  return a + (-b);
}

PowerSeries1 operator*(const PowerSeries1& a, const PowerSeries1& b) {
  if (a.truncation_order() != b.truncation_order())
    throw SpecError("PowerSeries1: mismatched truncation orders");
  int K = a.truncation_order();
  PowerSeries1 r(K);
  for (int i = 0; i <= K; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; i + j <= K; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

PowerSeries1 eval_on_series(const Poly2& b, const PowerSeries1& f) {
  int K = f.truncation_order();
  PowerSeries1 acc(K);
  // Powers of f built incrementally; x^i is a coefficient shift.
  int maxj = 0;
  for (const auto& [k, c] : b.terms()) maxj = std::max(maxj, k.second);
  std::vector<PowerSeries1> fpow;
  fpow.reserve(static_cast<std::size_t>(maxj) + 1);
  PowerSeries1 one(K);
  one[0] = 1.0;
  fpow.push_back(one);
  for (int j = 1; j <= maxj; ++j) fpow.push_back(fpow.back() * f);
  for (const auto& [k, c] : b.terms()) {
    const PowerSeries1& fj = fpow[static_cast<std::size_t>(k.second)];
    for (int m = 0; m + k.first <= K; ++m) acc[m + k.first] += c * fj[m];
  }
  return acc;
}

PowerSeries1 series_solve_implicit(const Poly2& a, int order) {
  if (a.coeff(0, 0) != 0.0 || a.coeff(1, 0) != 0.0 || a.coeff(0, 1) != 0.0)
    throw SpecError("series_solve_implicit: A has constant or linear part");
  PowerSeries1 f(order);
  // Each pass fixes at least one further order, so `order` passes
  // settle everything through x^order.
  for (int it = 0; it < order; ++it) f = -eval_on_series(a, f);
  return f;
}

PowerSeries1 compose_series(const Poly2& b, const PowerSeries1& f) {
  if (f[0] != 0.0) throw SpecError("compose_series: f(0) != 0");
  return eval_on_series(b, f);
}

std::optional<LeadingTerm> leading_term(const PowerSeries1& s, double tau0) {
  for (int k = 0; k <= s.truncation_order(); ++k)
    if (std::abs(s[k]) > tau0) return LeadingTerm{s[k], k};
  return std::nullopt;
}

}  // namespace quadradyn
