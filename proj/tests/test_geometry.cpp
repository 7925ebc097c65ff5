#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lg/core.hpp"
#include "lg/geometry.hpp"

using namespace lg;

namespace {

ConvexPolygon square() {
  return ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

#define CHECK_ERR(expr, errc)                       \
  do {                                              \
    bool caught_ = false;                           \
    try {                                           \
      (void)(expr);                                 \
    } catch (const Error& e_) {                     \
      caught_ = true;                               \
      CHECK(e_.code() == (errc));                   \
    }                                               \
    CHECK_MESSAGE(caught_, "expected " #errc);      \
  } while (0)

}  // namespace

TEST_CASE("square basics") {
  ConvexPolygon sq = square();
  CHECK(sq.num_sides() == 4);
  CHECK(sq.perimeter() == doctest::Approx(4.0));
  CHECK(sq.area() == doctest::Approx(1.0));
  CHECK(sq.diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(sq.centroid().x == doctest::Approx(0.5));
  CHECK(sq.centroid().y == doctest::Approx(0.5));
}

TEST_CASE("construction rejects bad input") {
  CHECK_ERR(ConvexPolygon::from_vertices({{0, 0}, {1, 0}}), Err::NotConvex);
  CHECK_ERR(ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {2, 0}, {0, 1}}), Err::NotConvex);
  CHECK_ERR(ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), Err::DuplicateVertex);
  CHECK_ERR(ConvexPolygon::from_vertices({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), Err::NotConvex);
}

TEST_CASE("arc coordinates") {
  ConvexPolygon sq = square();
  Point2 p = sq.arc_to_point(1.5);
  CHECK(p.x == doctest::Approx(1.0));
  CHECK(p.y == doctest::Approx(0.5));
  CHECK(sq.point_to_arc({1, 0.5}).s == doctest::Approx(1.5));
  CHECK(sq.point_to_arc({1, 0}).s == doctest::Approx(1.0));
  CHECK(sq.wrap(5.0) == doctest::Approx(1.0));
  CHECK(sq.wrap(-0.5) == doctest::Approx(3.5));
  CHECK(sq.forward_dist(3.5, 0.5) == doctest::Approx(1.0));
  CHECK_ERR(sq.arc_to_point(4.5), Err::OutOfRange);
  CHECK_ERR(sq.point_to_arc({0.5, 0.5}), Err::NotOnBoundary);

  ArcCoord ac = sq.arc_coord(2.25);
  CHECK(ac.side_index == 2);
  CHECK(ac.local_t == doctest::Approx(0.25));
}

TEST_CASE("containment") {
  ConvexPolygon sq = square();
  CHECK(sq.contains({0.5, 0.5}));
  CHECK(sq.contains({0.0, 0.5}));
  CHECK(!sq.strictly_contains({0.0, 0.5}));
  CHECK(!sq.contains({1.2, 0.5}));
  CHECK(sq.boundary_distance({0.5, 0.25}) == doctest::Approx(0.25));
}

TEST_CASE("half plane cut") {
  ConvexPolygon sq = square();
  ConvexPolygon right = half_plane_cut(sq, {0.5, 0.0}, {0.5, 1.0}, {0.1, 0.5});
  CHECK(right.num_sides() == 4);
  CHECK(right.area() == doctest::Approx(0.5));
  for (const Point2& v : right.vertices()) CHECK(v.x >= 0.5 - 1e-12);
  CHECK_ERR(half_plane_cut(sq, {5.0, 0.0}, {5.0, 1.0}, {0.5, 0.5}), Err::DegenerateCut);
}

TEST_CASE("convex hull") {
  std::vector<Point2> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.2, 0.8}};
  ConvexPolygon h = convex_hull(pts);
  CHECK(h.num_sides() == 4);
  CHECK(h.area() == doctest::Approx(1.0));
  CHECK_ERR(convex_hull({{0, 0}, {1, 1}, {2, 2}}), Err::DegenerateHull);
}

TEST_CASE("segment predicates") {
  CHECK(segments_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
  CHECK(!segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  CHECK(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 1}));  // closed: shared endpoint
  ConvexPolygon sq = square();
  auto clip = clip_segment(sq, {-1, 0.5}, {2, 0.5});
  REQUIRE(clip.has_value());
  CHECK(clip->first.x == doctest::Approx(0.0));
  CHECK(clip->second.x == doctest::Approx(1.0));
  CHECK(!clip_segment(sq, {-1, 2}, {2, 2}).has_value());
}

TEST_CASE("hex generator") {
  auto gen = InfinitePolygonGenerator::hex();
  Point2 v1 = gen.generated_vertex(1);
  CHECK(v1.x == doctest::Approx(std::cos(std::numbers::pi / 4)));
  CHECK(v1.y == doctest::Approx(std::sin(std::numbers::pi / 4)));
  ConvexPolygon t3 = gen.truncation(3);
  CHECK(t3.num_sides() == 5);
  ConvexPolygon t4 = gen.truncation(4);
  for (const Point2& v : t3.vertices()) CHECK(t4.contains(v));
  CHECK(std::abs(gen.truncation(10).diameter() - 2.0) <= 1e-6);
  CHECK_ERR(gen.generated_vertex(gen.depth_cap() + 1), Err::GeneratorExhausted);
}

TEST_CASE("cascade generator") {
  auto gen = InfinitePolygonGenerator::cascade();
  ConvexPolygon t2 = gen.truncation(2);
  CHECK(t2.num_sides() == 6);
  Point2 v2 = gen.generated_vertex(2);
  CHECK(v2.x == doctest::Approx(0.059375));
  CHECK(v2.y == doctest::Approx(0.013));
  // every truncation up to the cap stays convex (from_vertices validates)
  for (int n = 1; n <= gen.depth_cap(); ++n) CHECK(gen.truncation(n).num_sides() == n + 4);
}

TEST_CASE("rng determinism") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(c.uniform_int(3, 5) >= 3);
  CHECK(c.uniform_int(3, 5) <= 5);
}
