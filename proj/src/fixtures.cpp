#include "lg/fixtures.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace lg {
namespace fixtures {

namespace {

MonotonePiece piece(PieceKind kind, std::vector<std::pair<double, double>> bps) {
  MonotonePiece p;
  p.kind = kind;
  p.s0 = bps.front().first;
  p.s1 = bps.back().first;
  p.breakpoints = std::move(bps);
  return p;
}

using Pieces = std::vector<MonotonePiece>;

// Cascade data parameters: humps H_k = [0.45, 1.45]*4^-k on the bottom side
// at alternating extremal values, chain vertices v_k above the bottom with
// companion breakpoints vertically over the hump edges.
double hump_value(int k) {
  double q = std::pow(4.0, -k);
  return 0.5 + q * (k % 2 == 0 ? 3.0 : -1.0);
}

double vertex_value(int k) {
  double q = std::pow(4.0, -k);
  return hump_value(k) + (k % 2 == 0 ? q : -q);
}

double hump_left(int k) { return 0.45 * std::pow(4.0, -k); }
double hump_right(int k) { return 1.45 * std::pow(4.0, -k); }

// Arc coordinate of the point with abscissa x on side `side` of poly.
double arc_at_x(const ConvexPolygon& poly, int side, double x) {
  Point2 a = poly.side_start(side);
  Point2 b = poly.side_end(side);
  double t = (a.x - x) / (a.x - b.x);
  return poly.vertex_arc(side) + t * poly.side_length(side);
}

Pieces cascade_pieces(const ConvexPolygon& poly, int K) {
  Pieces ps;
  // Bottom side: arc == x.  Walk humps from the deepest (nearest p0) out.
  {
    double x0 = 0.0, v0 = 0.5;
    for (int k = K; k >= 1; --k) {
      double e = hump_value(k);
      ps.push_back(piece(e > v0 ? PieceKind::Increasing : PieceKind::Decreasing,
                         {{x0, v0}, {hump_left(k), e}}));
      ps.push_back(piece(PieceKind::Constant, {{hump_left(k), e}, {hump_right(k), e}}));
      x0 = hump_right(k);
      v0 = e;
    }
    ps.push_back(piece(PieceKind::Increasing, {{x0, v0}, {1.0, 1.0}}));
  }
  // Right-hand closing chain p1 -> q1 -> q2.
  ps.push_back(piece(PieceKind::Decreasing,
                     {{poly.vertex_arc(1), 1.0}, {poly.vertex_arc(2), 0.95}}));
  ps.push_back(piece(PieceKind::Decreasing,
                     {{poly.vertex_arc(2), 0.95}, {poly.vertex_arc(3), 0.8}}));
  // q2 -> v_1 with the companion breakpoint above b_1.
  ps.push_back(piece(PieceKind::Decreasing, {{poly.vertex_arc(3), 0.8},
                                             {arc_at_x(poly, 3, hump_right(1)), hump_value(1)},
                                             {poly.vertex_arc(4), vertex_value(1)}}));
  // Chain sides v_k -> v_{k+1}: companion breakpoints above a_k and b_{k+1}.
  for (int k = 1; k + 1 <= K; ++k) {
    int side = 3 + k;
    ps.push_back(piece(k % 2 == 0 ? PieceKind::Decreasing : PieceKind::Increasing,
                       {{poly.vertex_arc(side), vertex_value(k)},
                        {arc_at_x(poly, side, hump_left(k)), hump_value(k)},
                        {arc_at_x(poly, side, hump_right(k + 1)), hump_value(k + 1)},
                        {poly.vertex_arc(side + 1), vertex_value(k + 1)}}));
  }
  // Closing side v_K -> p0 with the companion breakpoint above a_K.
  {
    int side = 3 + K;
    ps.push_back(piece(K % 2 == 0 ? PieceKind::Decreasing : PieceKind::Increasing,
                       {{poly.vertex_arc(side), vertex_value(K)},
                        {arc_at_x(poly, side, hump_left(K)), hump_value(K)},
                        {poly.perimeter(), 0.5}}));
  }
  return ps;
}

}  // namespace

ConvexPolygon unit_square() {
  return ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

BoundaryDatum f_const(double c) {
  return BoundaryDatum::build(unit_square(),
                              {piece(PieceKind::Constant, {{0, c}, {4, c}})});
}

BoundaryDatum f_x() {
  return BoundaryDatum::build(unit_square(), {
                                                 piece(PieceKind::Increasing, {{0, 0}, {1, 1}}),
                                                 piece(PieceKind::Constant, {{1, 1}, {2, 1}}),
                                                 piece(PieceKind::Decreasing, {{2, 1}, {3, 0}}),
                                                 piece(PieceKind::Constant, {{3, 0}, {4, 0}}),
                                             });
}

BoundaryDatum f_jump() {
  return BoundaryDatum::build(unit_square(), {
                                                 piece(PieceKind::Constant, {{0, 0}, {1.5, 0}}),
                                                 piece(PieceKind::Constant, {{1.5, 1}, {3.5, 1}}),
                                                 piece(PieceKind::Constant, {{3.5, 0}, {4, 0}}),
                                             });
}

BoundaryDatum f_hump() {
  return BoundaryDatum::build(unit_square(),
                              {
                                  piece(PieceKind::Increasing, {{0, 0}, {0.1, 1}}),
                                  piece(PieceKind::Constant, {{0.1, 1}, {0.9, 1}}),
                                  piece(PieceKind::Decreasing, {{0.9, 1}, {1, 0}}),
                                  piece(PieceKind::Increasing, {{1, 0}, {1.2, 1}}),
                                  piece(PieceKind::Constant, {{1.2, 1}, {2, 1}}),
                                  piece(PieceKind::Constant, {{2, 1}, {3, 1}}),
                                  piece(PieceKind::Constant, {{3, 1}, {3.8, 1}}),
                                  piece(PieceKind::Decreasing, {{3.8, 1}, {4, 0}}),
                              });
}

BoundaryDatum f_hump_far() {
  return BoundaryDatum::build(unit_square(),
                              {
                                  piece(PieceKind::Increasing, {{0, 0}, {0.4, 1}}),
                                  piece(PieceKind::Constant, {{0.4, 1}, {0.6, 1}}),
                                  piece(PieceKind::Decreasing, {{0.6, 1}, {1, 0.1}}),
                                  piece(PieceKind::Increasing, {{1, 0.1}, {2, 0.2}}),
                                  piece(PieceKind::Increasing, {{2, 0.2}, {3, 1}}),
                                  piece(PieceKind::Decreasing, {{3, 1}, {4, 0}}),
                              });
}

ConvexPolygon cascade_truncation(int K) {
  return InfinitePolygonGenerator::cascade().truncation(K);
}

BoundaryDatum cascade_datum(int K) {
  ConvexPolygon poly = cascade_truncation(K);
  Pieces ps = cascade_pieces(poly, K);
  return BoundaryDatum::build(std::move(poly), std::move(ps));
}

BoundaryDatum f_twohump() { return cascade_datum(2); }

BoundaryDatum gallery_d1() {
  return BoundaryDatum::build(unit_square(), {
                                                 piece(PieceKind::Increasing, {{0, 0}, {1, 1}}),
                                                 piece(PieceKind::Constant, {{1, 0.2}, {2, 0.2}}),
                                                 piece(PieceKind::Decreasing, {{2, 0.2}, {3, 0}}),
                                                 piece(PieceKind::Constant, {{3, 0}, {4, 0}}),
                                             });
}

BoundaryDatum gallery_d2_far() { return f_hump_far(); }

BoundaryDatum gallery_d2_companions() {
  return BoundaryDatum::build(unit_square(),
                              {
                                  piece(PieceKind::Increasing, {{0, 0}, {0.1, 1}}),
                                  piece(PieceKind::Constant, {{0.1, 1}, {0.3, 1}}),
                                  piece(PieceKind::Decreasing, {{0.3, 1}, {0.31, 0.95}}),
                                  piece(PieceKind::Increasing, {{0.31, 0.95}, {0.32, 1}}),
                                  piece(PieceKind::Constant, {{0.32, 1}, {0.8, 1}}),
                                  piece(PieceKind::Decreasing, {{0.8, 1}, {1, 0.6}}),
                                  piece(PieceKind::Increasing, {{1, 0.6}, {2, 1}}),
                                  piece(PieceKind::Constant, {{2, 1}, {3.9, 1}}),
                                  piece(PieceKind::Decreasing, {{3.9, 1}, {4, 0}}),
                              });
}

BoundaryDatum gallery_d3() {
  ConvexPolygon poly = cascade_truncation(2);
  Pieces ps = cascade_pieces(poly, 2);
  // Split the gap piece between H_2 and H_1 and insert an upward jump at
  // s = 0.1 against the surrounding decrease.
  Pieces out;
  for (auto& p : ps) {
    if (p.kind == PieceKind::Decreasing && std::abs(p.s0 - hump_right(2)) < 1e-12 &&
        std::abs(p.s1 - hump_left(1)) < 1e-12) {
      out.push_back(piece(PieceKind::Decreasing, {{p.s0, hump_value(2)}, {0.1, 0.4}}));
      out.push_back(piece(PieceKind::Decreasing, {{0.1, 0.6}, {p.s1, hump_value(1)}}));
    } else {
      out.push_back(std::move(p));
    }
  }
  return BoundaryDatum::build(std::move(poly), std::move(out));
}

BoundaryDatum gallery_opc() {
  ConvexPolygon rect = ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 0.15}, {0, 0.15}});
  return BoundaryDatum::build(std::move(rect),
                              {
                                  piece(PieceKind::Increasing, {{0, 0}, {0.2, 1}}),
                                  piece(PieceKind::Constant, {{0.2, 1}, {0.8, 1}}),
                                  piece(PieceKind::Decreasing, {{0.8, 1}, {1, 0}}),
                                  piece(PieceKind::Constant, {{1, 0}, {1.15, 0}}),
                                  piece(PieceKind::Increasing, {{1.15, 0}, {1.35, 1}}),
                                  piece(PieceKind::Constant, {{1.35, 1}, {1.95, 1}}),
                                  piece(PieceKind::Decreasing, {{1.95, 1}, {2.15, 0}}),
                                  piece(PieceKind::Constant, {{2.15, 0}, {2.3, 0}}),
                              });
}

BoundaryDatum gallery_dcc_far() {
  return BoundaryDatum::build(unit_square(),
                              {
                                  piece(PieceKind::Increasing, {{0, 0}, {0.1, 1}}),
                                  piece(PieceKind::Constant, {{0.1, 1}, {0.9, 1}}),
                                  piece(PieceKind::Decreasing, {{0.9, 1}, {1, 0}}),
                                  piece(PieceKind::Increasing, {{1, 0}, {1.2, 1}}),
                                  piece(PieceKind::Constant, {{1.2, 1}, {2.4, 1}}),
                                  piece(PieceKind::Decreasing, {{2.4, 1}, {2.5, 0.9}}),
                                  piece(PieceKind::Increasing, {{2.5, 0.9}, {2.6, 1}}),
                                  piece(PieceKind::Constant, {{2.6, 1}, {3.8, 1}}),
                                  piece(PieceKind::Decreasing, {{3.8, 1}, {4, 0}}),
                              });
}

BoundaryDatum gallery_dcc_companion() {
  return BoundaryDatum::build(unit_square(),
                              {
                                  piece(PieceKind::Increasing, {{0, 0}, {0.1, 1}}),
                                  piece(PieceKind::Constant, {{0.1, 1}, {0.9, 1}}),
                                  piece(PieceKind::Decreasing, {{0.9, 1}, {1, 0}}),
                                  piece(PieceKind::Increasing, {{1, 0}, {1.15, 0.98}}),
                                  piece(PieceKind::Constant, {{1.15, 0.98}, {1.2, 0.98}}),
                                  piece(PieceKind::Constant, {{1.2, 1}, {2, 1}}),
                                  piece(PieceKind::Constant, {{2, 1}, {3, 1}}),
                                  piece(PieceKind::Constant, {{3, 1}, {3.8, 1}}),
                                  piece(PieceKind::Decreasing, {{3.8, 1}, {4, 0}}),
                              },
                              {JumpPoint{1.2, 0.98, 1.0, 1.0}});
}

BoundaryDatum hump_touching_vertex() {
  return BoundaryDatum::build(unit_square(),
                              {
                                  piece(PieceKind::Constant, {{0, 1}, {0.2, 1}}),
                                  piece(PieceKind::Decreasing, {{0.2, 1}, {0.5, 0.5}}),
                                  piece(PieceKind::Increasing, {{0.5, 0.5}, {1, 0.8}}),
                                  piece(PieceKind::Constant, {{1, 0.8}, {2, 0.8}}),
                                  piece(PieceKind::Decreasing, {{2, 0.8}, {3, 0.3}}),
                                  piece(PieceKind::Increasing, {{3, 0.3}, {4, 1}}),
                              });
}

ConvexPolygon random_polygon(Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Point2> pts;
    for (int i = 0; i < 12; ++i) {
      double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0);
      if (x * x + y * y <= 1.0)
        pts.push_back({x, y});
      else
        --i;
    }
    ConvexPolygon hull = convex_hull(pts);
    if (hull.num_sides() < 5 || hull.num_sides() > 9) continue;
    double min_side = hull.side_length(0);
    for (int i = 1; i < hull.num_sides(); ++i) min_side = std::min(min_side, hull.side_length(i));
    if (min_side >= 0.1) return hull;
  }
  fail(Err::DegenerateHull, "no acceptable random polygon after 1000 draws");
}

BoundaryDatum random_unimodal_datum(Rng& rng, const ConvexPolygon& poly, double lo, double hi) {
  const int n = poly.num_sides();
  int imin = rng.uniform_int(0, n - 1);
  int imax = imin;
  while (imax == imin) imax = rng.uniform_int(0, n - 1);
  const double L = poly.perimeter();
  const double s0 = poly.vertex_arc(imin);
  double s1 = poly.vertex_arc(imax);
  if (s1 < s0) s1 += L;
  Pieces ps;
  ps.push_back(piece(PieceKind::Increasing, {{s0, lo}, {s1, hi}}));
  ps.push_back(piece(PieceKind::Decreasing, {{s1, hi}, {s0 + L, lo}}));
  // Rotate pieces back into [0, L): shift a fully wrapped piece, split one
  // that straddles the seam.
  Pieces out;
  for (auto& p : ps) {
    const double va = p.breakpoints.front().second;
    const double vb = p.breakpoints.back().second;
    if (p.s0 >= L - 1e-15) {
      out.push_back(piece(p.kind, {{p.s0 - L, va}, {p.s1 - L, vb}}));
    } else if (p.s1 <= L + 1e-15) {
      out.push_back(std::move(p));
    } else {
      const double v_seam = p.eval(L);
      out.push_back(piece(p.kind, {{p.s0, va}, {L, v_seam}}));
      out.push_back(piece(p.kind, {{0.0, v_seam}, {p.s1 - L, vb}}));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const MonotonePiece& a, const MonotonePiece& b) { return a.s0 < b.s0; });
  return BoundaryDatum::build(poly, std::move(out));
}

}  // namespace fixtures
}  // namespace lg
