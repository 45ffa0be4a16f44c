#pragma once

#include <string>
#include <vector>

#include "quadradyn/classify.hpp"
#include "quadradyn/families.hpp"
#include "quadradyn/poly.hpp"

namespace quadradyn {

enum class Termination { TimeLimit, BlowUp, PoleGuard, LeftWindow };

struct TrajectorySample {
  double t;
  double x;
  double y;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  Termination termination = Termination::TimeLimit;
};

struct IntegrateOptions {
  bool adaptive = false;
  double step = 1e-3;       // fixed RK4 step
  double rel_tol = 1e-9;    // RK45 tolerance
  double blowup = 1e6;      // |state| beyond this terminates
};

/// Forward integration; negative t_max integrates backward.
Trajectory integrate(const VectorField2& field, Vec2 start, double t_max,
                     const IntegrateOptions& opts = {});

struct Window {
  double xmin = -3.0, xmax = 3.0, ymin = -3.0, ymax = 3.0;
};

struct PortraitSpec {
  bool disk = false;       // Poincare disk instead of a finite window
  Window window;
  int seeds = 12;          // seed grid density per axis
  bool separatrices = true;
  double t_span = 8.0;
};

/// SVG phase portrait.  Glyphs carry class="glyph <label>", paths
/// class="trajectory" or class="separatrix"; disk mode adds the
/// equator circle and class="glyph-infinite" markers.
std::string render_portrait(const FamilySpec& spec,
                            const PortraitSpec& portrait);

/// Plane-to-disk radial map r -> r/(1+r); infinity lands on the unit
/// circle.
Vec2 to_disk(const Vec2& p);

}  // namespace quadradyn
