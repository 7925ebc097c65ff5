#pragma once

#include <limits>
#include <string>
#include <vector>

#include "lg/boundary.hpp"

namespace lg {

enum class Verdict { Pass, Fail, NotApplicable };

const char* to_string(Verdict v);

/// Which reading of the companion neighborhood condition (dcc2) to enforce.
/// Monotone: the branch on the hump side approaches the hump value strictly
/// monotonically and the far branch never crosses it.  Paper: the companion is
/// a strict one-sided extremum of the opposite kind.
enum class DccOrientation { Monotone, Paper };

/// One recomputable probe into the datum: a one-sided limit ('L'), the
/// representative value ('V'), or the right limit ('R') at arc position s.
struct WitnessSample {
  double s = 0.0;
  char which = 'V';
  double value = 0.0;
};

/// Machine-checkable record of a violated condition.  `lhs relation rhs` is
/// the requirement that failed; samples and points carry enough data to
/// recompute both sides from the raw datum.
struct Witness {
  std::string check;  // "D1", "D2", "D3", "OPC", "DCC1", "DCC2"
  int side_index = -1;
  std::string detail;
  std::vector<WitnessSample> samples;
  std::vector<Point2> points;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  std::string relation;  // required relation: "<", "<=", ">=", "==", "monotone", "disjoint"
};

struct CheckResult {
  Verdict verdict = Verdict::Pass;
  std::vector<Witness> witnesses;
};

struct SideVerdict {
  int side_index = 0;
  Verdict d1 = Verdict::NotApplicable;
  Verdict d2 = Verdict::NotApplicable;
  Verdict d3 = Verdict::Pass;
  std::vector<Witness> witnesses;
};

struct AdmissibilityReport {
  std::vector<SideVerdict> sides;
  Verdict opc = Verdict::Pass;
  Verdict dcc = Verdict::Pass;
  bool overall = true;
  std::vector<Hump> humps;
  std::vector<Witness> witnesses;  // all failures, in check order
};

/// Side restricted to a hump-free side: weak monotonicity on the open side and
/// a monotone two-sided neighborhood (representative included) around each
/// endpoint where the data jumps.
CheckResult check_D1(const BoundaryDatum& f, int side);

/// Side carrying humps: each hump needs companions strictly closer than the
/// hump is long, with some minimizing choice off the side, and the outer
/// remainder pieces of the side must behave like D1 sides.
CheckResult check_D2(const BoundaryDatum& f, int side, const std::vector<Hump>& humps);

/// Every interior discontinuity of the side sits in a weakly monotone
/// neighborhood (left limit, representative, right limit in order).
CheckResult check_D3(const BoundaryDatum& f, int side);

/// Companion segments of distinct humps are pairwise disjoint for every
/// choice of distance minimizers.
CheckResult check_OPC(const std::vector<Hump>& humps);

/// Distance comparison condition: for some companion choice the far arc never
/// crosses the hump value (dcc1) and the data behaves correctly near both
/// companions (dcc2, per the configured orientation).
CheckResult check_DCC(const BoundaryDatum& f, const std::vector<Hump>& humps,
                      DccOrientation orientation = DccOrientation::Monotone);

/// Runs every check and aggregates verdicts and witnesses.  Humps are
/// extracted once and shared; extraction errors propagate.
AdmissibilityReport classify(const BoundaryDatum& f,
                             DccOrientation orientation = DccOrientation::Monotone);

}  // namespace lg
