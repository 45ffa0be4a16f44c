#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "quadradyn/families.hpp"
#include "quadradyn/poly.hpp"

namespace quadradyn {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Closed-form eigendata of a 2x2 real matrix.
struct EigenData {
  double trace = 0.0;
  double det = 0.0;
  double discriminant = 0.0;  // trace^2 - 4 det
  std::complex<double> lambda1;
  std::complex<double> lambda2;
  // Present only for real eigenvalues; unit length, first nonzero
  // component positive.
  std::optional<Vec2> eigvec1;
  std::optional<Vec2> eigvec2;

  static EigenData from_matrix(const Mat2& m);

  bool real() const { return discriminant >= 0.0; }
};

enum class Label {
  Saddle,
  StableNode,
  UnstableNode,
  StableFocus,
  UnstableFocus,
  LinearCenterOrFocusOrCenter,
  Cusp,
  SaddleNode,
  CenterOrFocus,
  EllipticHyperbolicSector,
  NonHypStableNode,
  NonHypUnstableNode,
  CriticalLine,
};

std::string label_name(Label l);

/// (m, n, a, b) data the non-hyperbolic decision tree branches on.
/// n = -1 and b = 0 encode G identically zero.
struct SeriesData {
  int m = 0;
  int n = -1;
  double a = 0.0;
  double b = 0.0;
};

struct Classification {
  Label label;
  std::vector<std::string> theorem_trace;
  std::optional<SeriesData> series;  // present when the degenerate tree ran
};

/// Quadratic invariant-curve data at a saddle, in the eigenbasis
/// (columns of C are the unstable and stable eigenvectors, scaled to
/// (1, w) and (1, v)).
struct ManifoldApprox {
  Vec2 point;
  double w;  // unstable eigenvalue
  double v;  // stable eigenvalue
  double stable_coeff;    // c / ((v-w)(v-2w)); curve y2 = k y1^2
  double unstable_coeff;  // 2c / ((v-w)(v-2w)); curve y1 = k y2^2
  Mat2 change_of_basis;
};

struct CriticalPointReport {
  Vec2 location{0.0, 0.0};
  std::optional<EigenData> eigen;
  Classification classification;
  std::optional<ManifoldApprox> manifold;
  std::vector<std::string> notes;
};

/// Finite critical points; critical_line means the whole axis y = 0.
struct FiniteCriticalPoints {
  bool critical_line = false;
  std::vector<Vec2> points;
};

FiniteCriticalPoints find_finite_critical_points(const FamilySpec& spec);

/// Theorem 2.1 dispatch.  Throws SpecError on the double-zero case
/// (route to the degenerate classifier instead).
Classification classify_hyperbolic(const EigenData& eigen);

/// Field with nilpotent rank-1 linear part rewritten so the linear
/// part is [[0,1],[0,0]] at the origin.
struct NormalFrame {
  VectorField2 field;
  Vec2 point;              // original critical point
  Mat2 basis;              // columns map frame coords to original offsets
};

NormalFrame normalize_frame(const VectorField2& v, const Vec2& point);

/// Degenerate (double-zero) classification from the series data of the
/// normal-form field x' = y + A, y' = B.
Classification classify_nonhyperbolic(const VectorField2& v,
                                      int order = kDefaultSeriesOrder,
                                      double tau0 = kZeroThreshold);

/// Full report for one critical point of an arbitrary field.
CriticalPointReport classify_field_point(const VectorField2& field,
                                         const Vec2& point);

/// Full report for one critical point of a family; attaches the
/// manifold approximation at family IV/V saddles.
CriticalPointReport classify_point(const FamilySpec& spec, const Vec2& point);

ManifoldApprox approximate_manifold(const FamilySpec& spec, const Vec2& saddle);

/// Reports for every finite critical point (single CriticalLine report
/// for families II/III).
std::vector<CriticalPointReport> classify_family(const FamilySpec& spec);

}  // namespace quadradyn
