#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lg/admissibility.hpp"
#include "lg/boundary.hpp"
#include "lg/geometry.hpp"

namespace lg {

/// Level grid of a solution together with the chords realizing each level set
/// boundary.  `levels` is increasing; `chords_at[k]` holds the chords of
/// ∂{u >= levels[k]} with `p` the up-crossing endpoint and `q` the
/// down-crossing endpoint (CCW sense of the boundary data).  `high_arcs[k]`
/// caches the boundary arcs where the data exceeds the level (pairs (lo, hi),
/// hi may exceed the perimeter for the wrapping arc), sorted by decreasing
/// length; evaluation uses them as reference cells for parity tests.
struct LevelChordFamily {
  std::vector<double> levels;
  std::vector<std::vector<Chord>> chords_at;
  std::vector<std::vector<std::pair<double, double>>> high_arcs;
};

/// Region conv(a, b, y, z) of a hump on which the solution is constant.
struct PlateauRegion {
  ConvexPolygon hull;
  double value = 0.0;
};

/// Constant continuation outside a truncated domain: on the side of `cut`
/// containing `excluded` (the accumulation point) the solution equals `value`.
/// `ambient` is a deep truncation standing in for the full domain; points
/// beyond it are outside.
struct ExteriorPatch {
  Chord cut;
  Point2 excluded;
  double value = 0.0;
  std::shared_ptr<const ConvexPolygon> ambient;
};

/// Geometric least-gradient solution: chords per level plus plateau hulls.
struct SolutionField {
  LevelChordFamily chords;
  std::vector<PlateauRegion> plateaus;
  double range_min = 0.0;  // [min f, max f]
  double range_max = 0.0;
  double tv = 0.0;  // coarea total variation (clipped to the true domain
                    // when an exterior patch is present)
  double sup_norm = 0.0;
  std::shared_ptr<const ConvexPolygon> domain;
  std::optional<ExteriorPatch> exterior;
};

struct EstimateReport {
  double sup_u = 0.0;
  double sup_f = 0.0;
  double tv_u = 0.0;
  double diam_times_tvf = 0.0;
  bool sup_ok = false;  // sup_u <= sup_f + 1e-12
  bool tv_ok = false;   // tv_u <= diam_times_tvf + 1e-9
};

/// Upper and lower solutions obtained from the monotone approximants, plus the
/// probe-grid convergence certificate between the last two schedule entries.
struct BVSolution {
  SolutionField upper;
  SolutionField lower;
  double certificate_upper = 0.0;
  double certificate_lower = 0.0;
  std::vector<int> schedule;
};

enum class InfiniteMode { TdNsk, Main3 };

/// Solution of a truncated infinite-polygon problem at depth N: the field is
/// the depth-N solution extended by the cut constant outside, `tv_ledger[n-1]`
/// is the total variation of the depth-n solution over the true domain, and
/// `estimates` verifies the a-priori bounds per truncation.
struct InfiniteSolution {
  SolutionField field;
  std::vector<double> tv_ledger;
  std::vector<double> e_values;
  std::vector<EstimateReport> estimates;
};

/// One hull per hump with the hump value.  Throws DegenerateHull when the
/// four defining points are collinear (unresolved companions).
std::vector<PlateauRegion> plateau_regions(const std::vector<Hump>& humps);

/// Level-set construction for continuous admissible data: m regular levels
/// across the range, boundary crossings per level, minimum-total-length
/// non-crossing pairing into chords, plateau hulls for every hump.  The datum
/// carries its polygon.  Throws Inadmissible when classify fails or the datum
/// has jumps, CrossingPairingFailure when chords at neighboring levels cross.
SolutionField solve_continuous(const BoundaryDatum& f, int m = 1024);

/// Upper/lower solutions of a BV datum via the monotone approximants g_n, h_n
/// along `schedule` (strictly increasing, every entry >= the datum's feature
/// resolution).  The returned fields are the last-schedule solutions with the
/// datum's own plateau hulls attached; the certificates bound |u_last -
/// u_prev| on an interior probe grid, skipping probes within 3/n_prev of
/// chords whose level lies inside a jump's gap (pointwise convergence holds
/// only at continuity points).  Throws NotConverged when a certificate
/// exceeds (1e-3 + 1/m) times the data range; the 1/m term absorbs level
/// quantization, which bounds eval agreement from below.
BVSolution solve_bv(const BoundaryDatum& f, const std::vector<int>& schedule, int m = 1024);

/// Truncation pipeline for the built-in infinite polygons: for n = 1..N cut,
/// extend, solve, and record the total variation over the true domain.  TdNsk
/// mode requires hump-free truncation data (monotone arms); Main3 mode
/// requires the humps to accumulate (depth-n data carry n-1 humps).  Throws
/// NotConverged when the last two ledger entries differ by more than
/// cauchy_tol relative to the final value (N >= 2).
InfiniteSolution solve_infinite(const InfinitePolygonGenerator& gen, InfiniteMode mode, int N,
                                int m = 1024, double cauchy_tol = 1e-3);

/// Value of the field at p: exterior constant if p lies beyond the cut,
/// plateau value on hull interiors, otherwise the largest grid level whose
/// super-level set contains p (a point on a chord gets the chord's level; a
/// point below every level gets the range minimum).  Throws OutsideDomain.
double evaluate(const SolutionField& field, Point2 p);

/// Midpoint-rule coarea integral: sum over levels of chord length times the
/// level cell width.  Chords are clipped at the exterior cut when present.
double tv_coarea(const SolutionField& field);

/// Evaluates the a-priori bounds sup|u| <= sup|f| and |Du|(Omega) <=
/// diam(Omega) TV(f) for the field against its boundary data.
EstimateReport verify_estimates(const SolutionField& field, const BoundaryDatum& f);

/// k x k interior probe points: bounding-box grid filtered to the open domain.
std::vector<Point2> interior_probe_grid(const ConvexPolygon& poly, int k);

}  // namespace lg
