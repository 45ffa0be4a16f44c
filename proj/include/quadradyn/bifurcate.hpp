#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadradyn/classify.hpp"
#include "quadradyn/families.hpp"

namespace quadradyn {

/// Membership record for a free (b, c, d) triple of family V.
///
/// The printed R-sets overlap; the reported r_label follows the
/// precedence R7, R8, then the c = 0 slices R4-R6, then R1-R3.
/// all_r_labels keeps every satisfied set.
struct ParameterRegion {
  std::string r_label;                 // "R1".."R8" or "none"
  std::vector<std::string> e_labels;   // satisfied E1..E12, as printed
  std::vector<std::string> all_r_labels;
  double b = 0.0, c = 0.0, d = 0.0;    // witness
  std::map<std::string, double> boundary_distances;
};

ParameterRegion region_of(double b, double c, double d);

enum class EventKind {
  Transcritical,
  SaddleFocusSaddle,
  LocalStabilityChange,
  CollisionAtInfinity,
};

std::string event_kind_name(EventKind k);

struct BifurcationEvent {
  EventKind kind;
  double parameter_value;
  std::vector<std::string> before_labels;
  std::vector<std::string> after_labels;
  std::vector<std::string> evidence;
};

/// One sweep sample: both tracked points of family V classified at a
/// free (b, c, d) triple.
struct SweepRow {
  double param;          // the varied coordinate
  double b, c, d;
  ParameterRegion region;
  std::string p1_label;
  std::optional<double> p2_x;  // absent when c = 0 (escaped to infinity)
  std::string p2_label;        // "EscapedToInfinity" when c = 0
  bool collision = false;      // P2 coincides with P1
  double p1_lambda1_re = 0.0, p1_lambda1_im = 0.0;
  double p1_lambda2_re = 0.0, p1_lambda2_im = 0.0;
  double p2_lambda1_re = 0.0, p2_lambda1_im = 0.0;
  double p2_lambda2_re = 0.0, p2_lambda2_im = 0.0;
};

struct SweepPath {
  char param = 'b';      // one of 'b', 'c', 'd'
  double from = 0.0;
  double to = 0.0;
  int steps = 0;         // number of samples, >= 2
};

/// Classifies P1 = (0,0) and P2 = (-3b/2c, 0) at each step of a
/// one-parameter path; the two non-varied coordinates come from base.
std::vector<SweepRow> sweep(double base_b, double base_c, double base_d,
                            const SweepPath& path);

std::vector<BifurcationEvent> detect_events(const std::vector<SweepRow>& rows);

/// Classifies one tracked point of the free triple (used by sweep and
/// the event bisection).
SweepRow evaluate_triple(double b, double c, double d, double param);

}  // namespace quadradyn
