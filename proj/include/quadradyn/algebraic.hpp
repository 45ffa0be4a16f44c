#pragma once

#include <array>
#include <string>
#include <utility>

#include "quadradyn/families.hpp"
#include "quadradyn/poly.hpp"

namespace quadradyn {

/// Evaluation too close to a real pole of the P-function.
struct PoleProximityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class IntegralKind { Hamiltonian, LinearInY };

struct FirstIntegral {
  IntegralKind kind;
  Poly2 expression;
  std::string galois_note;  // static metadata, no computation behind it
};

/// Conserved quantity of the family; IV/V only in the p = -4 / s = -4
/// sub-case where the damping term vanishes.
FirstIntegral first_integral(const FamilySpec& spec);

struct WeierstrassInvariants {
  double g2 = 0.0;
  double g3 = 0.0;
  double discriminant() const { return g2 * g2 * g2 - 27.0 * g3 * g3; }
};

/// P-function and its derivative on the real axis: Laurent series seed
/// near zero, then repeated duplication to reach t.
std::pair<double, double> wp_eval(double t, const WeierstrassInvariants& inv);

/// Real half-period of the lattice (the first pole of the real flow
/// past t = 0); used for pole guards and phase solves.
double wp_real_half_period(const WeierstrassInvariants& inv);

enum class CurveKind { PCurve, TanCurve };

/// Closed-form integral curve descriptor.
///
/// PCurve:  x(t) = scale * wp(t + k0; g2, g3) + shift,  y = dx/dt.
/// TanCurve: x(t) = amp * tan(freq (t + k2)),           y = dx/dt.
struct IntegralCurve {
  CurveKind kind;
  Family family;
  WeierstrassInvariants invariants;  // PCurve only
  double scale = 0.0;  // PCurve x-multiplier (-6/c)
  double shift = 0.0;  // PCurve affine shift removing the quadratic term
  double k0 = 0.0;     // PCurve phase
  double k1 = 0.0;     // TanCurve level constant y0 - b x0^2
  double k2 = 0.0;     // TanCurve phase
  double amp = 0.0;    // TanCurve sqrt(k1/b), signed frequency in freq
  double freq = 0.0;

  std::pair<double, double> eval(double t) const;
};

IntegralCurve integral_curve(const FamilySpec& spec, double x0, double y0);

/// Time-dependent linear system along a reference trajectory: the
/// field's Jacobian evaluated at (x0(t), y0(t)).
std::array<std::array<double, 2>, 2> variational_matrix(const FamilySpec& spec,
                                                        double x0, double y0);

}  // namespace quadradyn
