#include "lg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lg {

const char* to_string(Err e) {
  switch (e) {
    case Err::NotConvex: return "NotConvex";
    case Err::DuplicateVertex: return "DuplicateVertex";
    case Err::OutOfRange: return "OutOfRange";
    case Err::NotOnBoundary: return "NotOnBoundary";
    case Err::DegenerateCut: return "DegenerateCut";
    case Err::DegenerateHull: return "DegenerateHull";
    case Err::GeneratorExhausted: return "GeneratorExhausted";
    case Err::CoverageGap: return "CoverageGap";
    case Err::BadRepresentative: return "BadRepresentative";
    case Err::NonMonotonePiece: return "NonMonotonePiece";
    case Err::IrregularLevel: return "IrregularLevel";
    case Err::HumpTouchesVertex: return "HumpTouchesVertex";
    case Err::RootNotMinimum: return "RootNotMinimum";
    case Err::RootDiscontinuous: return "RootDiscontinuous";
    case Err::NoHumps: return "NoHumps";
    case Err::TooCoarse: return "TooCoarse";
    case Err::NoValidCut: return "NoValidCut";
    case Err::ParallelSupportLines: return "ParallelSupportLines";
    case Err::Inadmissible: return "Inadmissible";
    case Err::CrossingPairingFailure: return "CrossingPairingFailure";
    case Err::NotConverged: return "NotConverged";
    case Err::OutsideDomain: return "OutsideDomain";
    case Err::HypothesisViolation: return "HypothesisViolation";
    case Err::ResolutionTooLow: return "ResolutionTooLow";
    case Err::IoError: return "IoError";
    case Err::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

namespace {

std::string fmt_point(Point2 p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

}  // namespace

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Point2> vertices) {
  const int n = int(vertices.size());
  if (n < 3) fail(Err::NotConvex, "need at least 3 vertices, got " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (dist(vertices[i], vertices[j]) <= kGeomEps)
        fail(Err::DuplicateVertex, "vertices " + std::to_string(i) + " and " + std::to_string(j) +
                                       " coincide at " + fmt_point(vertices[i]));
    }
  }
  // Strict convexity + positive orientation: every turn is a left turn.  The
  // cross product is compared against a tolerance scaled by the side lengths
  // so that uniformly tiny polygons are treated the same as unit-sized ones.
  for (int i = 0; i < n; ++i) {
    Point2 a = vertices[i];
    Point2 b = vertices[(i + 1) % n];
    Point2 c = vertices[(i + 2) % n];
    double cr = cross(b - a, c - b);
    double scale = dist(a, b) * dist(b, c);
    if (cr <= kGeomEps * scale)
      fail(Err::NotConvex, "non-left turn at vertex " + std::to_string((i + 1) % n) + " " +
                               fmt_point(b) + " (cross=" + std::to_string(cr) + ")");
  }

  ConvexPolygon poly;
  poly.vertices_ = std::move(vertices);
  poly.side_len_.resize(n);
  poly.cum_len_.resize(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    poly.cum_len_[i] = acc;
    poly.side_len_[i] = dist(poly.vertices_[i], poly.vertices_[(i + 1) % n]);
    acc += poly.side_len_[i];
  }
  poly.perimeter_ = acc;
  double d = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d = std::max(d, dist(poly.vertices_[i], poly.vertices_[j]));
  poly.diameter_ = d;
  double a2 = 0.0;
  Point2 cen{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    Point2 p = poly.vertices_[i], q = poly.vertices_[(i + 1) % n];
    double w = cross(p, q);
    a2 += w;
    cen = cen + w * (p + q);
  }
  poly.area_ = 0.5 * a2;
  poly.centroid_ = (1.0 / (3.0 * a2)) * cen;
  return poly;
}

double ConvexPolygon::wrap(double s) const {
  double r = std::fmod(s, perimeter_);
  if (r < 0) r += perimeter_;
  if (r >= perimeter_) r = 0.0;  // guard fmod rounding at the seam
  return r;
}

double ConvexPolygon::forward_dist(double from, double to) const {
  return wrap(to - from);
}

ArcCoord ConvexPolygon::arc_coord(double s) const {
  if (s < 0.0 || s >= perimeter_ + kGeomEps)
    fail(Err::OutOfRange, "arc coordinate " + std::to_string(s) + " outside [0, " +
                              std::to_string(perimeter_) + ")");
  s = wrap(s);
  // cum_len_ is sorted; find the side containing s.
  int i = int(std::upper_bound(cum_len_.begin(), cum_len_.end(), s) - cum_len_.begin()) - 1;
  if (i < 0) i = 0;
  ArcCoord c;
  c.s = s;
  c.side_index = i;
  c.local_t = (s - cum_len_[i]) / side_len_[i];
  if (c.local_t >= 1.0) {  // landed on the next vertex within rounding
    c.side_index = (i + 1) % int(vertices_.size());
    c.local_t = 0.0;
  }
  return c;
}

Point2 ConvexPolygon::arc_to_point(double s) const {
  ArcCoord c = arc_coord(s);
  Point2 a = side_start(c.side_index), b = side_end(c.side_index);
  return a + c.local_t * (b - a);
}

ArcCoord ConvexPolygon::point_to_arc(Point2 p) const {
  const int n = num_sides();
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double d = point_segment_distance(p, side_start(i), side_end(i));
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (best_d > kGeomEps)
    fail(Err::NotOnBoundary,
         "point " + fmt_point(p) + " is " + std::to_string(best_d) + " away from the boundary");
  Point2 a = side_start(best), b = side_end(best);
  double len = side_len_[best];
  double t = dot(p - a, b - a) / (len * len);
  t = std::clamp(t, 0.0, 1.0);
  if (t * len >= len - kGeomEps) {  // canonical vertex convention: outgoing side
    best = (best + 1) % n;
    t = 0.0;
  }
  ArcCoord c;
  c.side_index = best;
  c.local_t = t;
  c.s = wrap(cum_len_[best] + t * side_len_[best]);
  return c;
}

bool ConvexPolygon::contains(Point2 p, double eps) const {
  const int n = num_sides();
  for (int i = 0; i < n; ++i) {
    Point2 a = side_start(i), b = side_end(i);
    if (cross(b - a, p - a) < -eps * side_len_[i]) return false;
  }
  return true;
}

bool ConvexPolygon::strictly_contains(Point2 p, double eps) const {
  const int n = num_sides();
  for (int i = 0; i < n; ++i) {
    Point2 a = side_start(i), b = side_end(i);
    if (cross(b - a, p - a) <= eps * side_len_[i]) return false;
  }
  return true;
}

double ConvexPolygon::boundary_distance(Point2 p) const {
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < num_sides(); ++i)
    d = std::min(d, point_segment_distance(p, side_start(i), side_end(i)));
  return d;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  Point2 ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 == 0.0) return dist(p, a);
  double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return dist(p, a + t * ab);
}

ConvexPolygon half_plane_cut(const ConvexPolygon& poly, Point2 p, Point2 q, Point2 excluded) {
  Point2 d = q - p;
  double dl = norm(d);
  if (dl <= kGeomEps) fail(Err::DegenerateCut, "chord endpoints coincide");
  double side_e = cross(d, excluded - p) / dl;
  if (std::abs(side_e) <= kGeomEps)
    fail(Err::DegenerateCut, "excluded point lies on the cut line");
  // Keep the side with the opposite sign of the excluded point.  orient() is
  // the signed distance of v from the cut line, positive on the kept side.
  double flip = side_e > 0 ? -1.0 : 1.0;
  auto orient = [&](Point2 v) { return flip * cross(d, v - p) / dl; };

  std::vector<Point2> out;
  const int n = poly.num_sides();
  for (int i = 0; i < n; ++i) {
    Point2 a = poly.vertex(i), b = poly.vertex(i + 1);
    double oa = orient(a), ob = orient(b);
    bool ka = oa >= -kGeomEps, kb = ob >= -kGeomEps;
    if (ka) out.push_back(a);
    if (ka != kb) {
      double t = oa / (oa - ob);  // crossing parameter along [a, b]
      out.push_back(a + t * (b - a));
    }
  }
  // Drop near-duplicate consecutive points introduced by crossings at vertices.
  std::vector<Point2> dedup;
  for (Point2 v : out) {
    if (dedup.empty() || dist(dedup.back(), v) > 10 * kGeomEps) dedup.push_back(v);
  }
  while (dedup.size() > 1 && dist(dedup.front(), dedup.back()) <= 10 * kGeomEps) dedup.pop_back();
  // Collinear points may appear where the cut line grazes a side; remove them
  // so from_vertices sees a strictly convex cycle.
  std::vector<Point2> cleaned;
  int m = int(dedup.size());
  for (int i = 0; i < m; ++i) {
    Point2 a = dedup[(i + m - 1) % m], b = dedup[i], c = dedup[(i + 1) % m];
    double cr = cross(b - a, c - b);
    if (cr > kGeomEps * dist(a, b) * dist(b, c)) cleaned.push_back(b);
  }
  if (cleaned.size() < 3) fail(Err::DegenerateCut, "cut leaves no area on the kept side");
  ConvexPolygon result = ConvexPolygon::from_vertices(std::move(cleaned));
  if (poly.area() - result.area() <= kGeomEps)
    fail(Err::DegenerateCut, "cut removes no area (chord lies along the boundary)");
  return result;
}

ConvexPolygon convex_hull(std::vector<Point2> points) {
  if (points.size() < 3) fail(Err::DegenerateHull, "need at least 3 points");
  std::sort(points.begin(), points.end(), [](Point2 a, Point2 b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](Point2 a, Point2 b) { return dist(a, b) <= kGeomEps; }),
               points.end());
  int n = int(points.size());
  if (n < 3) fail(Err::DegenerateHull, "fewer than 3 distinct points");
  std::vector<Point2> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower hull
    while (k >= 2 && cross(h[k - 1] - h[k - 2], points[i] - h[k - 1]) <= kGeomEps) --k;
    h[k++] = points[i];
  }
  for (int i = n - 2, lo = k + 1; i >= 0; --i) {  // upper hull
    while (k >= lo && cross(h[k - 1] - h[k - 2], points[i] - h[k - 1]) <= kGeomEps) --k;
    h[k++] = points[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) fail(Err::DegenerateHull, "points are collinear");
  return ConvexPolygon::from_vertices(std::move(h));
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d, double eps) {
  auto orient = [eps](Point2 p, Point2 q, Point2 r) -> int {
    double v = cross(q - p, r - p);
    double scale = std::max(1.0, dist(p, q) * std::max(dist(p, r), dist(q, r)));
    if (v > eps * scale) return 1;
    if (v < -eps * scale) return -1;
    return 0;
  };
  auto on_segment = [eps](Point2 p, Point2 q, Point2 r) {
    // r collinear with [p, q]: does it lie within the closed box?
    return r.x >= std::min(p.x, q.x) - eps && r.x <= std::max(p.x, q.x) + eps &&
           r.y >= std::min(p.y, q.y) - eps && r.y <= std::max(p.y, q.y) + eps;
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool segments_properly_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double o1 = cross(b - a, c - a), o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c), o4 = cross(d - c, b - c);
  return ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0)) &&
         ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0));
}

std::optional<std::pair<Point2, Point2>> clip_segment(const ConvexPolygon& poly, Point2 a,
                                                      Point2 b) {
  // Parametric clipping of a + t(b-a), t in [0,1], against each side's inner
  // half-plane.
  double t0 = 0.0, t1 = 1.0;
  Point2 d = b - a;
  for (int i = 0; i < poly.num_sides(); ++i) {
    Point2 v = poly.side_start(i);
    Point2 e = poly.side_end(i) - v;
    double denom = cross(e, d);
    double num = cross(e, v - a);  // inside requires cross(e, x - v) >= 0
    if (std::abs(denom) <= kGeomEps) {
      if (cross(e, a - v) < -kGeomEps * poly.side_length(i)) return std::nullopt;
      continue;
    }
    double t = num / denom;
    if (denom > 0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 > t1) return std::nullopt;
  }
  return std::make_pair(a + t0 * d, a + t1 * d);
}

InfinitePolygonGenerator::InfinitePolygonGenerator(std::string rule, Point2 p0,
                                                   std::vector<Point2> closing)
    : rule_(std::move(rule)), p0_(p0), closing_(std::move(closing)) {
  if (rule_ == "hex")
    depth_cap_ = 32;
  else if (rule_ == "cascade")
    depth_cap_ = 12;
  else
    fail(Err::SchemaError, "unknown generator rule '" + rule_ + "'");
  if (closing_.empty()) fail(Err::SchemaError, "generator closing chain is empty");
}

InfinitePolygonGenerator InfinitePolygonGenerator::hex() {
  return InfinitePolygonGenerator("hex", {1.0, 0.0}, {{-1.0, 0.0}});
}

InfinitePolygonGenerator InfinitePolygonGenerator::cascade() {
  return InfinitePolygonGenerator("cascade", {0.0, 0.0},
                                  {{1.0, 0.0}, {1.2, 0.2}, {0.875, 0.175}});
}

Point2 InfinitePolygonGenerator::generated_vertex(int k) const {
  if (k < 1) fail(Err::OutOfRange, "generator index must be >= 1");
  if (k > depth_cap_)
    fail(Err::GeneratorExhausted, "rule '" + rule_ + "' supports depth <= " +
                                      std::to_string(depth_cap_) + ", requested " +
                                      std::to_string(k));
  if (rule_ == "hex") {
    double th = (std::numbers::pi / 2.0) * std::pow(2.0, -k);
    return {std::cos(th), std::sin(th)};
  }
  // cascade
  const double A = 0.628 / 3.0, B = 0.064 / 3.0;
  double q4 = std::pow(4.0, -k), q16 = q4 * q4;
  return {0.95 * q4, A * q4 - B * q16};
}

ConvexPolygon InfinitePolygonGenerator::truncation(int n) const {
  if (n < 1) fail(Err::OutOfRange, "truncation depth must be >= 1");
  std::vector<Point2> vs;
  vs.push_back(p0_);
  if (rule_ == "hex") {
    // CCW from p0=(1,0): generated vertices in decreasing index, then closing.
    for (int k = n; k >= 1; --k) vs.push_back(generated_vertex(k));
    for (Point2 c : closing_) vs.push_back(c);
  } else {
    // cascade: CCW from p0=(0,0): closing chain first, then the generated
    // vertices descending toward p0.
    for (Point2 c : closing_) vs.push_back(c);
    for (int k = 1; k <= n; ++k) vs.push_back(generated_vertex(k));
  }
  return ConvexPolygon::from_vertices(std::move(vs));
}

}  // namespace lg
