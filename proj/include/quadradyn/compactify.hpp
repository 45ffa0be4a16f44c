#pragma once

#include <vector>

#include "quadradyn/classify.hpp"
#include "quadradyn/families.hpp"
#include "quadradyn/poly.hpp"

namespace quadradyn {

enum class Chart { U1, U2, U3 };

std::string chart_name(Chart c);

/// Vector field rewritten in a Poincare chart, after clearing the
/// v^d time-rescaling multiplier.
struct ChartSystem {
  Chart chart;
  VectorField2 field;  // in chart coordinates (u, v)
  int source_degree;   // the d used in the v^d multiplier
};

struct InfinitePointReport {
  Chart chart;
  Vec2 location;  // (u, 0)
  CriticalPointReport report;
  double direction;  // equator angle, radians (diametral pair implied)
};

/// Exact symbolic chart transform per the general-degree formulas;
/// U3 is the identity chart.
ChartSystem to_chart(const VectorField2& v, Chart chart);

/// Equator critical points: solve each chart system at v = 0 and
/// classify every root through the finite machinery.
std::vector<InfinitePointReport> infinite_singular_points(
    const FamilySpec& spec);

/// Real roots of the univariate restriction p(u, 0) (degree <= 3
/// closed form backed by Newton polish).
std::vector<double> real_roots_on_axis(const Poly2& p);

}  // namespace quadradyn
