#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lg/core.hpp"

namespace lg {

/// Position on the boundary of a convex polygon, identified both by total arc
/// length s from vertex 0 (CCW) and by (side_index, local_t).  A vertex is
/// canonically the start of its outgoing side (local_t = 0).
struct ArcCoord {
  double s = 0.0;
  int side_index = 0;
  double local_t = 0.0;
};

/// Chord of a convex polygon: a segment between two boundary points whose open
/// interior lies inside the domain.  `level` optionally tags the solution
/// level the chord belongs to.
struct Chord {
  Point2 p;
  Point2 q;
  double level = 0.0;
};

/// Immutable CCW convex polygon with a cached arc-length table.
class ConvexPolygon {
 public:
  /// Validates and builds: >= 3 vertices, no duplicates, strictly convex,
  /// positively oriented.  Throws NotConvex / DuplicateVertex.
  static ConvexPolygon from_vertices(std::vector<Point2> vertices);

  int num_sides() const { return int(vertices_.size()); }
  const std::vector<Point2>& vertices() const { return vertices_; }
  Point2 vertex(int i) const { return vertices_[mod(i)]; }
  Point2 side_start(int i) const { return vertices_[mod(i)]; }
  Point2 side_end(int i) const { return vertices_[mod(i + 1)]; }
  double side_length(int i) const { return side_len_[mod(i)]; }
  /// Arc coordinate of vertex i (start of side i).
  double vertex_arc(int i) const { return cum_len_[mod(i)]; }
  double perimeter() const { return perimeter_; }
  double diameter() const { return diameter_; }
  double area() const { return area_; }
  Point2 centroid() const { return centroid_; }

  /// Wraps an arc coordinate into [0, L).
  double wrap(double s) const;
  /// Arc length traveled CCW from `from` to `to` (in [0, L)).
  double forward_dist(double from, double to) const;

  Point2 arc_to_point(double s) const;  // throws OutOfRange if s outside [0, L)
  ArcCoord arc_coord(double s) const;   // throws OutOfRange
  ArcCoord point_to_arc(Point2 p) const;  // throws NotOnBoundary

  bool contains(Point2 p, double eps = kGeomEps) const;           // closed region
  bool strictly_contains(Point2 p, double eps = kGeomEps) const;  // open region
  /// Distance from p to the boundary (0 if on it, positive otherwise).
  double boundary_distance(Point2 p) const;

 private:
  int mod(int i) const {
    int n = int(vertices_.size());
    return ((i % n) + n) % n;
  }

  std::vector<Point2> vertices_;
  std::vector<double> side_len_;
  std::vector<double> cum_len_;  // cum_len_[i] = arc coordinate of vertex i
  double perimeter_ = 0.0;
  double diameter_ = 0.0;
  double area_ = 0.0;
  Point2 centroid_;
};

/// Cuts `poly` by the line through chord (p, q), keeping the closed side that
/// does not contain `excluded`.  The chord becomes a new side.  Throws
/// DegenerateCut when either the kept or removed part has zero area.
ConvexPolygon half_plane_cut(const ConvexPolygon& poly, Point2 p, Point2 q, Point2 excluded);

/// Andrew monotone chain; throws DegenerateHull when the points are collinear.
ConvexPolygon convex_hull(std::vector<Point2> points);

/// Closed-segment intersection test: true iff the segments share at least one
/// point (a shared endpoint counts).
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d, double eps = kGeomEps);

inline bool chords_intersect(const Chord& c1, const Chord& c2, double eps = kGeomEps) {
  return segments_intersect(c1.p, c1.q, c2.p, c2.q, eps);
}

/// Strict transversal crossing: the open segments share exactly one interior
/// point.  Touching at an endpoint or collinear overlap returns false.
bool segments_properly_cross(Point2 a, Point2 b, Point2 c, Point2 d);

inline bool chords_properly_cross(const Chord& c1, const Chord& c2) {
  return segments_properly_cross(c1.p, c1.q, c2.p, c2.q);
}

double point_segment_distance(Point2 p, Point2 a, Point2 b);

/// Clips segment [a, b] to the (closed) polygon; returns the surviving
/// sub-segment, or nullopt when the segment misses the polygon.
std::optional<std::pair<Point2, Point2>> clip_segment(const ConvexPolygon& poly, Point2 a,
                                                      Point2 b);

/// Deterministic vertex generator for the two built-in infinite polygons.
///
///   hex:      v_k = (cos θ_k, sin θ_k), θ_k = (π/2)·2^{-k}; accumulation at
///             p0 = (1, 0); closing chain [(-1, 0)].
///   cascade:  v_k = (0.95·4^{-k}, A·4^{-k} - B·16^{-k}) with A = 0.628/3,
///             B = 0.064/3; accumulation at p0 = (0, 0); closing chain
///             [(1, 0), (1.2, 0.2), (0.875, 0.175)].
///
/// Truncations become numerically degenerate near the accumulation point, so
/// each rule carries a hard depth cap past which GeneratorExhausted is thrown.
class InfinitePolygonGenerator {
 public:
  InfinitePolygonGenerator(std::string rule, Point2 p0, std::vector<Point2> closing);

  /// Built-in instances with the canonical closing chains.
  static InfinitePolygonGenerator hex();
  static InfinitePolygonGenerator cascade();

  const std::string& rule() const { return rule_; }
  Point2 p0() const { return p0_; }
  const std::vector<Point2>& closing() const { return closing_; }
  int depth_cap() const { return depth_cap_; }

  /// k-th generated vertex, k >= 1.  Throws GeneratorExhausted past the cap.
  Point2 generated_vertex(int k) const;

  /// Finite convex polygon on the first n generated vertices plus the closing
  /// chain (and p0 itself).  Successive truncations grow toward the limit
  /// region.  Throws GeneratorExhausted when n exceeds the depth cap.
  ConvexPolygon truncation(int n) const;

 private:
  std::string rule_;
  Point2 p0_;
  std::vector<Point2> closing_;
  int depth_cap_ = 0;
};

}  // namespace lg
