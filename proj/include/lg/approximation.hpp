#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lg/boundary.hpp"
#include "lg/geometry.hpp"

namespace lg {

/// Weakly increasing scalar function on [0, L], given by nodes carrying left
/// and right values (a node with left < right is an upward step).  Between
/// nodes the function interpolates linearly; outside [0, L] it is extended by
/// its boundary values.  Used for the cumulative-variation factors of a
/// Jordan decomposition.
class MonotoneStepFn {
 public:
  struct Node {
    double sigma = 0.0;
    double left = 0.0;
    double right = 0.0;
  };

  /// Validates ordering and weak monotonicity of the node list.
  static MonotoneStepFn from_nodes(std::vector<Node> nodes);

  double domain_length() const { return nodes_.back().sigma; }
  const std::vector<Node>& nodes() const { return nodes_; }

  /// Right-continuous value at sigma, clamped outside the domain.
  double operator()(double sigma) const;
  /// Left limit at sigma (differs from operator() only at step nodes).
  double left_value(double sigma) const;

 private:
  std::vector<Node> nodes_;
};

/// Jordan decomposition f = f_plus - f_minus of boundary data along the arc
/// coordinate sigma measured forward from a rooted global minimum.  f_plus
/// carries the cumulative positive variation offset by f(root), f_minus the
/// cumulative negative variation starting at zero.
struct JordanPair {
  double root_arc = 0.0;  ///< arc coordinate of the root on the original datum
  MonotoneStepFn plus;
  MonotoneStepFn minus;
  /// Sigma positions where the growth sets of both parts meet (the finite set
  /// Z; strict local extrema reached from both sides without a plateau).
  std::vector<double> meeting_points;
};

/// Decomposes f rooted at the given boundary point.  The root must be a
/// continuity point attaining the global minimum of f.
/// Throws RootNotMinimum / RootDiscontinuous otherwise.
JordanPair jordan_decompose(const BoundaryDatum& f, const ArcCoord& root);

/// Geometric feature scales controlling the admissible mollification width:
/// alpha = shortest polygon side, beta = shortest hump, gamma = shortest
/// positive-length component of a side minus the constant extremal stretches.
/// beta/gamma are absent when no hump (resp. no component) exists.  n_min is
/// the smallest n with min{alpha, beta, gamma} >= 8/n.
struct FeatureScales {
  double alpha = 0.0;
  std::optional<double> beta;
  std::optional<double> gamma;
  int n_min = 0;
};

FeatureScales min_feature_scale(const BoundaryDatum& f);

enum class MollifyKind { Lower, Upper };

/// Continuous piecewise-linear approximant of a BV datum: the shifted
/// mollification of the Jordan factors, with corrective wedges at strict
/// vertex extrema and plateau pinning on fully covered sides.
struct MollifiedDatum {
  BoundaryDatum base;
  int n = 0;
  MollifyKind kind = MollifyKind::Lower;
  /// Corrective zones [b - 3/n, b + 3/n] (hi may exceed L when wrapping).
  std::vector<std::pair<double, double>> wedge_intervals;
};

/// Lower approximant g_n <= f; increasing in n toward f at continuity points.
/// Requires n >= min_feature_scale(f).n_min (throws TooCoarse).
MollifiedDatum mollify_lower(const BoundaryDatum& f, int n);
/// Upper approximant h_n >= f (mirror construction).
MollifiedDatum mollify_upper(const BoundaryDatum& f, int n);

/// Extension of a truncated problem across its cut chord: the chord is
/// replaced by the intersection point p_bar of the supporting lines of its
/// two neighboring sides, and the datum continues with the constant cut
/// value on the added triangle's boundary.
struct ExtendedDomain {
  ConvexPolygon omega_tilde;
  BoundaryDatum f_bar;
  Point2 p_bar;
};

/// One step of a domain truncation toward an accumulation vertex: the domain
/// is cut along the chord [cut_a, cut_b], the datum keeps its boundary values
/// on the retained arc and takes the constant value e on the chord.
struct TruncatedProblem {
  int n = 0;
  Point2 cut_a, cut_b;  ///< chord endpoints, CCW along the new polygon
  ConvexPolygon omega;
  int chord_side = -1;  ///< side index of omega lying on the chord
  BoundaryDatum f;
  double e = 0.0;
  std::optional<ExtendedDomain> extended;
};

/// Cuts the domain of f along the chord [p, q], keeping the part away from
/// `excluded`.  Both chord endpoints must be continuity points of f with
/// equal values (throws NoValidCut); the common value becomes e.
TruncatedProblem truncate_along(const BoundaryDatum& f, Point2 p, Point2 q,
                                Point2 excluded, int n = 0);

/// n-th truncation of an infinite-polygon problem.  For the "hex" rule the
/// datum is the trace of 1 - x and the cut is the vertical continuity-level
/// chord at distance (3/4) * 2^{-n} / 2 from the accumulation vertex; for the
/// "cascade" rule the cut runs from the n-th hump's left endpoint to its
/// companion on the opposite arm.
TruncatedProblem truncate_domain(const InfinitePolygonGenerator& gen, int n);

/// Fills the extended fields of tp.  Throws ParallelSupportLines when the two
/// sides meeting the chord have parallel supporting lines.
TruncatedProblem extend_domain(TruncatedProblem tp);

}  // namespace lg
