#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lg/core.hpp"
#include "lg/geometry.hpp"

namespace lg {

enum class PieceKind { Increasing, Decreasing, Constant };

const char* to_string(PieceKind k);

/// One weakly monotone stretch of boundary data on the arc interval [s0, s1),
/// given as a piecewise-linear profile.  Breakpoints are (arc, value) pairs
/// with arcs covering [s0, s1]; the profile is continuous on the closed
/// interval, so one-sided limits at the ends are just the first/last values.
struct MonotonePiece {
  double s0 = 0.0;
  double s1 = 0.0;
  PieceKind kind = PieceKind::Constant;
  std::vector<std::pair<double, double>> breakpoints;

  double left_limit() const { return breakpoints.front().second; }
  double right_limit() const { return breakpoints.back().second; }
  double eval(double s) const;  // linear interpolation, clamped to [s0, s1]
};

/// Discontinuity record: one-sided limits and the stored representative value.
struct JumpPoint {
  double s = 0.0;
  double left = 0.0;
  double value = 0.0;
  double right = 0.0;
};

/// Maximal constant stretch of the data at a locally extremal value, interior
/// to one polygon side, plus the nearest equal-value boundary points off the
/// stretch (the companions y, z).
struct Hump {
  double a_s = 0.0;  // arc coordinates of the closed interval [a, b]
  double b_s = 0.0;
  double e = 0.0;
  bool is_max = true;
  int side_index = 0;
  Point2 a, b;    // endpoints in the plane
  Point2 y, z;    // chosen companions (first minimizer in CCW order)
  double y_s = 0.0, z_s = 0.0;        // arc coordinates of the chosen companions
  double dist_a = 0.0, dist_b = 0.0;  // realized minimal distances
  std::vector<Point2> y_candidates, z_candidates;  // all distance minimizers
  std::vector<double> y_candidate_arcs, z_candidate_arcs;
  double far_lo = 0.0, far_hi = 0.0;  // far arc [lo, hi] CCW, hi may exceed L

  bool has_companions() const { return !y_candidates.empty() && !z_candidates.empty(); }
};

/// Closed level set {x : e between the one-sided limits near x}, stored as
/// maximal closed arcs [lo, hi] (degenerate arcs are single points).  An arc
/// crossing the seam is stored with hi > L.
struct LevelSetP {
  double e = 0.0;
  std::vector<std::pair<double, double>> components;
};

struct Crossing {
  double s = 0.0;
  bool up = false;  // f passes from below t to above t in CCW direction
};

/// BV boundary data on a convex polygon: ordered monotone pieces partitioning
/// [0, L) plus jump records at the piece seams.  Values at jumps are good
/// representatives: they lie between the one-sided limits.
class BoundaryDatum {
 public:
  /// Validates coverage, monotonicity, and representatives.  `jumps` may
  /// carry representative overrides; a seam with distinct one-sided limits
  /// and no override defaults to the midpoint value.
  static BoundaryDatum build(ConvexPolygon poly, std::vector<MonotonePiece> pieces,
                             std::vector<JumpPoint> jumps = {});
  static BoundaryDatum build(std::shared_ptr<const ConvexPolygon> poly,
                             std::vector<MonotonePiece> pieces, std::vector<JumpPoint> jumps = {});

  const ConvexPolygon& polygon() const { return *poly_; }
  std::shared_ptr<const ConvexPolygon> polygon_ptr() const { return poly_; }
  const std::vector<MonotonePiece>& pieces() const { return pieces_; }
  const std::vector<JumpPoint>& jumps() const { return jumps_; }

  double tv() const { return tv_; }
  double sup_norm() const { return sup_norm_; }
  double min_value() const { return min_value_; }
  double max_value() const { return max_value_; }

  /// One-sided limits and representative value at arc coordinate s.
  struct Triple {
    double left, value, right;
  };
  Triple eval(double s) const;
  double value(double s) const { return eval(s).value; }

  LevelSetP level_set_P(double e) const;

  /// Boundary points where the data crosses the regular level t, CCW-ordered
  /// with strictly alternating directions.  Throws IrregularLevel when t hits
  /// a breakpoint value, jump limit, or representative, or when alternation
  /// fails.
  std::vector<Crossing> level_crossings(double t) const;

  /// Values whose level sets may be fat or tangent: all breakpoint values,
  /// jump limits and representatives.  Sorted, deduplicated.
  const std::vector<double>& irregular_values() const { return irregular_values_; }

  /// Sorted, deduplicated arc positions of all piece breakpoints and jumps,
  /// in [0, L).  Between consecutive nodes the data is linear and continuous.
  std::vector<double> node_arcs() const;

  std::vector<Hump> extract_humps() const;

  /// Maximal constant stretches of the profile at locally extremal values
  /// (humps before side classification).  Exposed for the approximation
  /// pipeline, which needs vertex-touching stretches too.
  struct ExtremalRun {
    double lo = 0.0, hi = 0.0;  // hi may exceed L when the run wraps
    double e = 0.0;
    bool is_max = false;
    bool left_continuous = true;   // approach at lo is continuous
    bool right_continuous = true;  // approach at hi
  };
  std::vector<ExtremalRun> extremal_runs() const;

  /// Vertices (arc coordinates) at which the data attains a strict local
  /// extremum through continuous approach on both sides.
  struct VertexExtremum {
    double s = 0.0;
    double value = 0.0;
    bool is_max = false;
  };
  std::vector<VertexExtremum> strict_vertex_extrema() const;

  /// Pointwise negation -f (kinds flipped); used to mirror constructions.
  BoundaryDatum negate() const;

  /// Pointwise a*f + b; kinds flip when a is negative.  Throws OutOfRange for
  /// a == 0 (the result would need re-deriving piece kinds).
  BoundaryDatum affine(double a, double b) const;

 private:
  std::shared_ptr<const ConvexPolygon> poly_;
  std::vector<MonotonePiece> pieces_;
  std::vector<JumpPoint> jumps_;
  double tv_ = 0.0, sup_norm_ = 0.0, min_value_ = 0.0, max_value_ = 0.0;
  std::vector<double> irregular_values_;

  int piece_index(double s) const;
  std::optional<JumpPoint> jump_at(double s) const;
  friend class DatumScan;
};

double total_variation(const BoundaryDatum& f);

/// Euclidean distance from p to the boundary arc [lo, hi] (hi may exceed L),
/// together with every point realizing the minimum within tolerance.
struct ArcDistance {
  double d = 0.0;
  std::vector<Point2> minimizers;
  std::vector<double> minimizer_arcs;
};
ArcDistance distance_to_arc(const ConvexPolygon& poly, Point2 p, double lo, double hi,
                            double tie_tol = 1e-9);

}  // namespace lg
