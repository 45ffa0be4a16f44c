#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quadradyn {

/// Error for inputs that violate a documented precondition.
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Bivariate real polynomial in canonical form: no stored zero
/// coefficients.  Degree of the zero polynomial is -1.
class Poly2 {
public:
  using Key = std::pair<int, int>;  // (i, j) exponents of x^i y^j

  Poly2() = default;

  static Poly2 zero() { return Poly2{}; }

  static Poly2 constant(double c) { return monomial(0, 0, c); }

  static Poly2 monomial(int i, int j, double c) {
    if (i < 0 || j < 0) throw SpecError("Poly2: negative exponent");
    Poly2 p;
    if (c != 0.0) p.terms_[{i, j}] = c;
    return p;
  }

  const std::map<Key, double>& terms() const { return terms_; }

  double coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? 0.0 : it->second;
  }

  void set(int i, int j, double c) {
    if (i < 0 || j < 0) throw SpecError("Poly2: negative exponent");
    if (c == 0.0)
      terms_.erase({i, j});
    else
      terms_[{i, j}] = c;
  }

  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
    return d;
  }

  // Evaluation sums terms in increasing total degree (the map's
  // lexicographic order groups powers of x; powers are built
  // incrementally per key).
  double eval(double x, double y) const;

  Poly2 dx() const;
  Poly2 dy() const;

  Poly2 operator-() const;
  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(double s, const Poly2& p);

  bool operator==(const Poly2& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

private:
  std::map<Key, double> terms_;
};

/// Planar polynomial vector field X = (P, Q).
struct VectorField2 {
  Poly2 p;
  Poly2 q;

  VectorField2(Poly2 p_, Poly2 q_) : p(std::move(p_)), q(std::move(q_)) {
    if (p.is_zero() && q.is_zero())
      throw SpecError("VectorField2: both components zero");
  }

  int degree() const { return std::max(p.degree(), q.degree()); }
};

/// Formal Jacobian of a field: [[dP/dx, dP/dy], [dQ/dx, dQ/dy]].
struct PolyJacobian {
  Poly2 px, py, qx, qy;
};

PolyJacobian jacobian(const VectorField2& v);

/// Truncated univariate power series; coefficients 0..K are exact,
/// everything above K is discarded.
class PowerSeries1 {
public:
  explicit PowerSeries1(int truncation_order)
      : c_(static_cast<std::size_t>(truncation_order) + 1, 0.0) {
    if (truncation_order < 0) throw SpecError("PowerSeries1: negative order");
  }

  int truncation_order() const { return static_cast<int>(c_.size()) - 1; }

  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  PowerSeries1 operator-() const;
  friend PowerSeries1 operator+(const PowerSeries1& a, const PowerSeries1& b);
  friend PowerSeries1 operator-(const PowerSeries1& a, const PowerSeries1& b);
  friend PowerSeries1 operator*(const PowerSeries1& a, const PowerSeries1& b);

  bool operator==(const PowerSeries1& o) const { return c_ == o.c_; }

private:
  std::vector<double> c_;
};

/// Default truncation order for series work on the quadratic families.
inline constexpr int kDefaultSeriesOrder = 12;

/// Zero threshold for leading-term detection on series built from
/// exact coefficients.
inline constexpr double kZeroThreshold = 1e-12;

/// Evaluates a bivariate polynomial at (x-series, f) truncated at the
/// order of f.  Used both by the implicit solver and compose_series.
PowerSeries1 eval_on_series(const Poly2& b, const PowerSeries1& f);

/// Solves f(x) + A(x, f(x)) = O(x^{K+1}) with f(0) = f'(0) = 0 by
/// fixed-point iteration f <- -A(x, f).  A must have no constant or
/// linear part.
PowerSeries1 series_solve_implicit(const Poly2& a, int order);

/// B(x, f(x)) truncated at the order of f.  Requires f(0) = 0.
PowerSeries1 compose_series(const Poly2& b, const PowerSeries1& f);

struct LeadingTerm {
  double coefficient;
  int exponent;
};

/// First coefficient with |c| > tau0, or nullopt when the series is
/// identically zero through its truncation order.
std::optional<LeadingTerm> leading_term(const PowerSeries1& s,
                                        double tau0 = kZeroThreshold);

}  // namespace quadradyn
