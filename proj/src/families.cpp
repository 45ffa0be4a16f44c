#include "quadradyn/families.hpp"

#include <limits>

namespace quadradyn {

std::string family_name(Family f) {
  switch (f) {
    case Family::I: return "I";
    case Family::II: return "II";
    case Family::III: return "III";
    case Family::IV: return "IV";
    case Family::V: return "V";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "I") return Family::I;
  if (name == "II") return Family::II;
  if (name == "III") return Family::III;
  if (name == "IV") return Family::IV;
  if (name == "V") return Family::V;
  throw SpecError("unknown family '" + name + "'");
}

void FamilySpec::validate(bool allow_rational) const {
  auto check_exponent = [&](int e, const char* name) {
    if (e >= 0) return;
    if (allow_rational && e == -4) return;
    throw SpecError(std::string("family ") + family_name(tag) + " requires " +
                    name + " >= 0");
  };
  switch (tag) {
    case Family::I:
      if (c == 0.0) throw SpecError("family I requires c != 0");
      break;
    case Family::II:
      if (b == 0.0) throw SpecError("family II requires b != 0");
      break;
    case Family::III:
      if (a == 0.0) throw SpecError("family III requires a != 0");
      break;
    case Family::IV:
      if (a == 0.0) throw SpecError("family IV requires a != 0");
      if (c == 0.0) throw SpecError("family IV requires c != 0");
      check_exponent(p, "p");
      break;
    case Family::V:
      if (b == 0.0) throw SpecError("family V requires b != 0");
      check_exponent(s, "s");
      break;
  }
}

VectorField2 build_family(const FamilySpec& spec, bool allow_rational) {
  spec.validate(allow_rational);
  Poly2 y = Poly2::monomial(0, 1, 1.0);
  switch (spec.tag) {
    case Family::I:
      return {y, Poly2::monomial(2, 0, -spec.c)};
    case Family::II:
      return {y, Poly2::monomial(1, 1, 2.0 * spec.b)};
    case Family::III:
      // Structurally family II with b renamed to a.
      return {y, Poly2::monomial(1, 1, 2.0 * spec.a)};
    case Family::IV: {
      Poly2 q = Poly2::monomial(0, 1, spec.a * (spec.p + 4) / 2.0) +
                Poly2::monomial(1, 0, -1.5 * spec.a * spec.a) +
                Poly2::monomial(2, 0, -spec.c);
      return {y, q};
    }
    case Family::V: {
      Poly2 q = Poly2::monomial(0, 1, spec.b * (spec.s + 4) / 2.0) +
                Poly2::monomial(1, 0, -1.5 * spec.b) +
                Poly2::monomial(2, 0, -spec.c);
      return {y, q};
    }
  }
  throw SpecError("unreachable family tag");
}

DerivedParams derived_params(const FamilySpec& spec) {
  spec.validate();
  if (spec.tag == Family::IV) {
    double d = spec.a * (spec.p + 4);
    double a2 = spec.a * spec.a;
    return {d, d * d - 24.0 * a2, d * d + 24.0 * a2,
            -3.0 * a2 / (2.0 * spec.c)};
  }
  if (spec.tag == Family::V) {
    double d = spec.b * (spec.s + 4);
    // c = 0: the second critical point escapes to infinity.
    double x2 = spec.c == 0.0
                    ? (spec.b > 0 ? -1.0 : 1.0) *
                          std::numeric_limits<double>::infinity()
                    : -3.0 * spec.b / (2.0 * spec.c);
    return {d, d * d - 24.0 * spec.b, d * d + 24.0 * spec.b, x2};
  }
  throw SpecError("derived_params: only families IV and V");
}

VectorField2 family_v_free(double b, double c, double d) {
  Poly2 y = Poly2::monomial(0, 1, 1.0);
  Poly2 q = Poly2::monomial(0, 1, d / 2.0) + Poly2::monomial(1, 0, -1.5 * b) +
            Poly2::monomial(2, 0, -c);
  return {y, q};
}

}  // namespace quadradyn
