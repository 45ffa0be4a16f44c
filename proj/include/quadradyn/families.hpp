#pragma once

#include <string>

#include "quadradyn/poly.hpp"

namespace quadradyn {

enum class Family { I, II, III, IV, V };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Parameter record for the five quadratic families.
///
///   I:   (y, -c x^2)                                   c != 0
///   II:  (y, 2 b x y)                                  b != 0
///   III: (y, 2 a x y)                                  a != 0
///   IV:  (y, a (p+4)/2 y - 3/2 a^2 x - c x^2)          a != 0, c != 0
///   V:   (y, b (s+4)/2 y - 3/2 b x - c x^2)            b != 0; c = 0 allowed
///
/// p, s are integers >= 0 for vector-field work; p = -4 / s = -4 are
/// admitted only by the algebraic module (allow_rational).
struct FamilySpec {
  Family tag = Family::I;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  int p = 0;
  int s = 0;

  /// Throws SpecError naming the violated invariant.
  void validate(bool allow_rational = false) const;
};

/// Quantities the region and manifold analysis keys on (families IV, V).
struct DerivedParams {
  double d;                    // a(p+4) or b(s+4)
  double discriminant_origin;  // d^2 - 24 a^2  /  d^2 - 24 b
  double discriminant_second;  // d^2 + 24 a^2  /  d^2 + 24 b
  double second_point_x;       // -3a^2/(2c)  /  -3b/(2c)
};

VectorField2 build_family(const FamilySpec& spec, bool allow_rational = false);

DerivedParams derived_params(const FamilySpec& spec);

/// Family-V field from a free (b, c, d) triple, as swept by the
/// bifurcation analysis: (y, d/2 y - 3/2 b x - c x^2).  No spec
/// invariants are enforced here; b = 0 and c = 0 are legal sweeps.
VectorField2 family_v_free(double b, double c, double d);

}  // namespace quadradyn
