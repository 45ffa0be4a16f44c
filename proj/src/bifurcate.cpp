#include "quadradyn/bifurcate.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace quadradyn {

namespace {

constexpr double kCollisionTol = 1e-9;
constexpr double kParamTol = 1e-8;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool is_focus(const std::string& l) {
  return l == "StableFocus" || l == "UnstableFocus" ||
         l == "LinearCenterOrFocusOrCenter";
}

// +1 strictly unstable, -1 strictly stable, 0 otherwise.
int stability_sign(double re1, double re2) {
  if (re1 > 0.0 && re2 > 0.0) return 1;
  if (re1 < 0.0 && re2 < 0.0) return -1;
  return 0;
}

}  // namespace

ParameterRegion region_of(double b, double c, double d) {
  ParameterRegion r;
  r.b = b;
  r.c = c;
  r.d = d;
  double dor = d * d - 24.0 * b;   // origin discriminant
  double dsc = d * d + 24.0 * b;   // second-point discriminant
  r.boundary_distances = {
      {"d2-24b", dor}, {"c", c}, {"b", b}, {"d", d}};

  auto add_if = [&](bool cond, const char* name,
                    std::vector<std::string>& dst) {
    if (cond) dst.emplace_back(name);
  };
  add_if(dor > 0.0, "R1", r.all_r_labels);
  add_if(dor == 0.0, "R2", r.all_r_labels);
  add_if(dor < 0.0 && c > 0.0, "R3", r.all_r_labels);
  add_if(c == 0.0 && dor > 0.0, "R4", r.all_r_labels);
  add_if(c == 0.0 && dor == 0.0, "R5", r.all_r_labels);
  add_if(c == 0.0 && dor < 0.0, "R6", r.all_r_labels);
  add_if(b == 0.0 && d == 0.0 && c > 0.0, "R7", r.all_r_labels);
  add_if(c < 0.0, "R8", r.all_r_labels);

  // Precedence restores a function over the overlapping printed sets.
  static const char* kPrecedence[] = {"R7", "R8", "R4", "R5",
                                      "R6", "R1", "R2", "R3"};
  r.r_label = "none";
  for (const char* name : kPrecedence) {
    for (const auto& have : r.all_r_labels)
      if (have == name) {
        r.r_label = name;
        goto done;
      }
  }
done:
  add_if(dor < 0.0 && d > 0.0 && c > 0.0, "E1", r.e_labels);
  add_if(dor < 0.0 && d < 0.0 && c > 0.0, "E2", r.e_labels);
  add_if(dsc < 0.0 && d > 0.0 && c > 0.0, "E3", r.e_labels);
  add_if(dor < 0.0 && d < 0.0 && c > 0.0, "E4", r.e_labels);  // printed = E2
  add_if(dor < 0.0 && d > 0.0 && c < 0.0, "E5", r.e_labels);
  add_if(dor < 0.0 && d < 0.0 && c < 0.0, "E6", r.e_labels);
  add_if(dsc < 0.0 && d > 0.0 && c < 0.0, "E7", r.e_labels);
  add_if(dor < 0.0 && d < 0.0 && c < 0.0, "E8", r.e_labels);  // printed = E6
  add_if(dor > 0.0 && d > 0.0 && c > 0.0, "E9", r.e_labels);
  add_if(dor > 0.0 && d < 0.0 && c > 0.0, "E10", r.e_labels);
  add_if(dor > 0.0 && d < 0.0 && c < 0.0, "E11", r.e_labels);
  add_if(dor > 0.0 && d > 0.0 && c < 0.0, "E12", r.e_labels);
  return r;
}

SweepRow evaluate_triple(double b, double c, double d, double param) {
  SweepRow row;
  row.param = param;
  row.b = b;
  row.c = c;
  row.d = d;
  row.region = region_of(b, c, d);
  VectorField2 field = family_v_free(b, c, d);

  auto classify_at = [&](const Vec2& pt, std::string& label, double& l1re,
                         double& l1im, double& l2re, double& l2im) {
    try {
      CriticalPointReport rep = classify_field_point(field, pt);
      label = label_name(rep.classification.label);
      if (rep.eigen) {
        l1re = rep.eigen->lambda1.real();
        l1im = rep.eigen->lambda1.imag();
        l2re = rep.eigen->lambda2.real();
        l2im = rep.eigen->lambda2.imag();
      }
    } catch (const SpecError&) {
      label = "Degenerate";
    }
  };

  classify_at({0.0, 0.0}, row.p1_label, row.p1_lambda1_re, row.p1_lambda1_im,
              row.p1_lambda2_re, row.p1_lambda2_im);

  if (c == 0.0) {
    row.p2_label = "EscapedToInfinity";
    return row;
  }
  double x2 = -3.0 * b / (2.0 * c);
  row.p2_x = x2;
  if (std::abs(x2) <= kCollisionTol) {
    row.collision = true;
    row.p2_label = row.p1_label;
    row.p2_lambda1_re = row.p1_lambda1_re;
    row.p2_lambda1_im = row.p1_lambda1_im;
    row.p2_lambda2_re = row.p1_lambda2_re;
    row.p2_lambda2_im = row.p1_lambda2_im;
    return row;
  }
  classify_at({x2, 0.0}, row.p2_label, row.p2_lambda1_re, row.p2_lambda1_im,
              row.p2_lambda2_re, row.p2_lambda2_im);
  return row;
}

std::vector<SweepRow> sweep(double base_b, double base_c, double base_d,
                            const SweepPath& path) {
  if (path.steps < 2) throw SpecError("sweep: step count < 2");
  if (path.param != 'b' && path.param != 'c' && path.param != 'd')
    throw SpecError("sweep: path must vary one of b, c, d");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(path.steps));
  for (int i = 0; i < path.steps; ++i) {
    double t = path.from +
               (path.to - path.from) * i / static_cast<double>(path.steps - 1);
    double b = path.param == 'b' ? t : base_b;
    double c = path.param == 'c' ? t : base_c;
    double d = path.param == 'd' ? t : base_d;
    rows.push_back(evaluate_triple(b, c, d, t));
  }
  return rows;
}

namespace {

// The crossing functions are affine in the path parameter, so plain
// bisection reaches kParamTol quickly.
double bisect_crossing(double lo, double hi, double flo,
                       const std::function<double(double)>& f) {
  for (int it = 0; it < 200 && hi - lo > kParamTol; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<BifurcationEvent> detect_events(const std::vector<SweepRow>& rows) {
  std::vector<BifurcationEvent> events;
  if (rows.size() < 2) return events;

  // Coordinates as affine functions of the sweep parameter.
  const SweepRow& r0 = rows.front();
  const SweepRow& rn = rows.back();
  double span = rn.param - r0.param;
  auto coord = [&](double p, double c0, double cn) {
    return span == 0.0 ? c0 : c0 + (cn - c0) * (p - r0.param) / span;
  };
  auto b_of = [&](double p) { return coord(p, r0.b, rn.b); };
  auto c_of = [&](double p) { return coord(p, r0.c, rn.c); };
  auto d_of = [&](double p) { return coord(p, r0.d, rn.d); };

  auto flank = [&](std::size_t i, int dir) -> const SweepRow* {
    // Nearest row in direction dir where both points exist and are
    // non-degenerate (skips collision rows and c = 0 escape rows).
    for (std::size_t j = i;;) {
      const SweepRow& r = rows[j];
      if (!r.collision && r.p2_x && r.p1_label != "Degenerate" &&
          r.p2_label != "Degenerate")
        return &r;
      if (dir < 0 && j == 0) return nullptr;
      j = static_cast<std::size_t>(static_cast<long>(j) + dir);
      if (j >= rows.size()) return nullptr;
    }
  };

  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const SweepRow& a = rows[i];
    const SweepRow& b = rows[i + 1];

    bool b_cross = (a.b < 0.0) != (b.b < 0.0) || a.b == 0.0 || b.b == 0.0;
    bool c_cross = (a.c < 0.0) != (b.c < 0.0) || a.c == 0.0 || b.c == 0.0;
    if (a.b == 0.0 && i > 0) b_cross = false;    // counted at the previous step
    if (a.c == 0.0 && i > 0) c_cross = false;

    const SweepRow* before = flank(i, -1);
    const SweepRow* after = flank(i + 1, +1);

    if (before && after && b_cross && a.c != 0.0 && b.c != 0.0) {
      // Collision of P1 and P2 at b = 0 with label exchange.
      bool exchanged = before->p1_label == after->p2_label &&
                       before->p2_label == after->p1_label &&
                       before->p1_label != after->p1_label;
      if (exchanged) {
        BifurcationEvent ev;
        ev.kind = EventKind::Transcritical;
        ev.parameter_value =
            bisect_crossing(a.param, b.param, b_of(a.param), b_of);
        ev.before_labels = {before->p1_label, before->p2_label};
        ev.after_labels = {after->p1_label, after->p2_label};
        ev.evidence = {"P2 crosses P1 at b=0",
                       "P1 lambda1 re: " + fmt(before->p1_lambda1_re) + " -> " +
                           fmt(after->p1_lambda1_re)};
        events.push_back(ev);
        continue;
      }
    }

    if (before && after && c_cross) {
      double dor = before->d * before->d - 24.0 * before->b;
      bool sfs = dor < 0.0 && is_focus(before->p1_label) &&
                 before->p2_label == "Saddle" && is_focus(after->p1_label) &&
                 after->p2_label == "Saddle";
      BifurcationEvent ev;
      ev.kind = sfs ? EventKind::SaddleFocusSaddle
                    : EventKind::CollisionAtInfinity;
      ev.parameter_value =
          bisect_crossing(a.param, b.param, c_of(a.param), c_of);
      auto side = [](const SweepRow& r) {
        return r.p2_x && *r.p2_x > 0.0 ? std::string("(x>0)")
                                       : std::string("(x<0)");
      };
      ev.before_labels = {before->p1_label, before->p2_label + side(*before)};
      ev.after_labels = {after->p1_label, after->p2_label + side(*after)};
      ev.evidence = {"P2 escapes through infinity at c=0"};
      events.push_back(ev);
      continue;
    }

    // Local stability change of a single tracked point.  Rows sitting
    // exactly on the boundary (zero real parts) are skipped over when
    // pairing the two sides.
    auto next_sign = [&](std::size_t start, auto get) -> std::pair<int, std::size_t> {
      for (std::size_t j = start; j < rows.size(); ++j) {
        int s = get(rows[j]);
        if (s != 0) return {s, j};
      }
      return {0, rows.size()};
    };
    auto s1 = [](const SweepRow& r) {
      return stability_sign(r.p1_lambda1_re, r.p1_lambda2_re);
    };
    auto s2 = [](const SweepRow& r) {
      return r.p2_x ? stability_sign(r.p2_lambda1_re, r.p2_lambda2_re) : 0;
    };
    int s1a = s1(a);
    int s2a = s2(a);
    auto [s1n, j1] = next_sign(i + 1, s1);
    auto [s2n, j2] = next_sign(i + 1, s2);
    bool p1_flip = s1a != 0 && s1n != 0 && s1a != s1n;
    bool p2_flip = a.p2_x && s2a != 0 && s2n != 0 && s2a != s2n;
    if (p1_flip || p2_flip) {
      std::size_t j = p1_flip ? j1 : j2;
      const SweepRow& after_row = rows[j];
      BifurcationEvent ev;
      ev.kind = EventKind::LocalStabilityChange;
      ev.parameter_value =
          bisect_crossing(a.param, after_row.param, d_of(a.param), d_of);
      ev.before_labels = {a.p1_label, a.p2_label};
      ev.after_labels = {after_row.p1_label, after_row.p2_label};
      ev.evidence = {std::string(p1_flip ? "P1" : "P2") +
                     " real parts change sign across d=0"};
      events.push_back(ev);
      i = j - 1;  // do not re-report inside the same gap
    }
  }
  return events;
}

std::string event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Transcritical: return "Transcritical";
    case EventKind::SaddleFocusSaddle: return "SaddleFocusSaddle";
    case EventKind::LocalStabilityChange: return "LocalStabilityChange";
    case EventKind::CollisionAtInfinity: return "CollisionAtInfinity";
  }
  return "?";
}

}  // namespace quadradyn
