#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lg/admissibility.hpp"
#include "lg/approximation.hpp"
#include "lg/fixtures.hpp"
#include "lg/solver.hpp"

using namespace lg;
namespace fx = lg::fixtures;

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

namespace {

Point2 hull_centroid(const ConvexPolygon& hull) {
  Point2 c{0.0, 0.0};
  for (const Point2& v : hull.vertices()) c = c + v;
  return (1.0 / hull.num_sides()) * c;
}

}  // namespace

TEST_CASE("constant datum: empty chord family, zero variation") {
  const SolutionField F = solve_continuous(fx::f_const(2.0));
  CHECK(F.chords.levels.empty());
  CHECK(F.tv == 0.0);
  CHECK(F.sup_norm == 2.0);
  CHECK(F.plateaus.empty());
  CHECK(evaluate(F, {0.5, 0.5}) == 2.0);
  CHECK(evaluate(F, {0.01, 0.99}) == 2.0);

  const EstimateReport est = verify_estimates(F, fx::f_const(2.0));
  CHECK(est.sup_ok);
  CHECK(est.tv_ok);
  CHECK(est.sup_u == 2.0);
  CHECK(est.tv_u == 0.0);
}

TEST_CASE("trace of x: vertical chords, unit variation, linear field") {
  const BoundaryDatum f = fx::f_x();
  const SolutionField F = solve_continuous(f, 256);

  REQUIRE(F.chords.levels.size() == 256);
  for (size_t k = 0; k < F.chords.levels.size(); ++k) {
    const double t = F.chords.levels[k];
    REQUIRE(F.chords.chords_at[k].size() == 1);
    const Chord& c = F.chords.chords_at[k][0];
    CHECK(std::abs(c.p.x - t) <= 1e-12);
    CHECK(std::abs(c.q.x - t) <= 1e-12);
    CHECK(std::abs(dist(c.p, c.q) - 1.0) <= 1e-12);
    CHECK(c.level == t);
  }
  CHECK(F.tv == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(F.plateaus.empty());

  // field equals x up to one level-cell width
  for (double x : {0.07, 0.3, 0.52, 0.81, 0.96})
    for (double y : {0.2, 0.77})
      CHECK(std::abs(evaluate(F, {x, y}) - x) <= 1.0 / 256 + 1e-12);

  const EstimateReport est = verify_estimates(F, f);
  CHECK(est.sup_ok);
  CHECK(est.tv_ok);
  CHECK(est.diam_times_tvf == doctest::Approx(std::sqrt(2.0) * 2.0));

  CHECK_ERR(evaluate(F, {2.0, 2.0}), Err::OutsideDomain);
  CHECK_ERR(evaluate(F, {0.5, 0.0}), Err::OutsideDomain);
}

TEST_CASE("one-hump datum: corner formula, plateau, coarea variation") {
  const BoundaryDatum f = fx::f_hump();
  const SolutionField F = solve_continuous(f);

  REQUIRE(F.plateaus.size() == 1);
  CHECK(F.plateaus[0].value == 1.0);
  const auto& hv = F.plateaus[0].hull.vertices();
  REQUIRE(hv.size() == 4);
  for (Point2 want : {Point2{0.1, 0.0}, Point2{0.9, 0.0}, Point2{1.0, 0.2}, Point2{0.0, 0.2}}) {
    double best = 1.0;
    for (const Point2& v : hv) best = std::min(best, dist(v, want));
    CHECK(best <= 1e-12);
  }

  // plateau interior evaluates to the hump value exactly
  CHECK(evaluate(F, {0.5, 0.1}) == 1.0);
  CHECK(evaluate(F, {0.15, 0.05}) == 1.0);

  // closed form min(1, 10x + 5y, 10(1-x) + 5y) away from the interfaces
  auto closed_form = [](double x, double y) {
    return std::min({1.0, 10.0 * x + 5.0 * y, 10.0 * (1.0 - x) + 5.0 * y});
  };
  const double tol = 4.0 / 1024;
  CHECK(std::abs(evaluate(F, {0.05, 0.05}) - 0.75) <= tol);
  for (double x : {0.02, 0.06, 0.5, 0.94})
    for (double y : {0.03, 0.12, 0.5, 0.9})
      CHECK(std::abs(evaluate(F, {x, y}) - closed_form(x, y)) <= tol);

  CHECK(std::abs(F.tv - std::sqrt(5.0) / 10.0) <= 2.0 / 1024);

  const EstimateReport est = verify_estimates(F, f);
  CHECK(est.sup_ok);
  CHECK(est.tv_ok);

  // every level keeps exactly the two corner chords
  for (size_t k = 0; k < F.chords.levels.size(); ++k)
    CHECK(F.chords.chords_at[k].size() == 2);
}

TEST_CASE("two-hump datum: disjoint plateaus carry their hump values") {
  const BoundaryDatum f = fx::f_twohump();
  const SolutionField F = solve_continuous(f, 512);

  REQUIRE(F.plateaus.size() == 2);
  std::vector<double> values{F.plateaus[0].value, F.plateaus[1].value};
  std::sort(values.begin(), values.end());
  CHECK(values[0] == 0.25);
  CHECK(values[1] == 0.6875);

  for (const auto& pl : F.plateaus) {
    const Point2 c = hull_centroid(pl.hull);
    CHECK(pl.hull.strictly_contains(c));
    CHECK(evaluate(F, c) == pl.value);
  }
  // the hulls are disjoint
  CHECK(!F.plateaus[0].hull.strictly_contains(hull_centroid(F.plateaus[1].hull)));
  CHECK(!F.plateaus[1].hull.strictly_contains(hull_centroid(F.plateaus[0].hull)));

  const EstimateReport est = verify_estimates(F, f);
  CHECK(est.sup_ok);
  CHECK(est.tv_ok);
}

TEST_CASE("plateau_regions maps humps to hulls") {
  const AdmissibilityReport rep = classify(fx::f_hump());
  REQUIRE(rep.overall);
  REQUIRE(rep.humps.size() == 1);
  const auto regions = plateau_regions(rep.humps);
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].value == 1.0);
  CHECK(regions[0].hull.num_sides() == 4);
  CHECK(regions[0].hull.strictly_contains({0.5, 0.1}));
}

TEST_CASE("inadmissible or jump data are rejected by solve_continuous") {
  CHECK_ERR(solve_continuous(fx::f_jump()), Err::Inadmissible);
  CHECK_ERR(solve_continuous(fx::gallery_d2_far()), Err::Inadmissible);
  CHECK_ERR(solve_continuous(fx::f_x(), 0), Err::OutOfRange);
}

TEST_CASE("level colliding with a breakpoint value is nudged off it") {
  // bottom rises 0 -> 1 with a kink at value 0.5; with m = 3 the middle
  // midpoint level would hit it exactly
  const ConvexPolygon sq = fx::unit_square();
  std::vector<MonotonePiece> pieces;
  pieces.push_back({0.0, 1.0, PieceKind::Increasing, {{0.0, 0.0}, {0.25, 0.5}, {1.0, 1.0}}});
  pieces.push_back({1.0, 2.0, PieceKind::Constant, {{1.0, 1.0}, {2.0, 1.0}}});
  pieces.push_back({2.0, 3.0, PieceKind::Decreasing, {{2.0, 1.0}, {3.0, 0.0}}});
  pieces.push_back({3.0, 4.0, PieceKind::Constant, {{3.0, 0.0}, {4.0, 0.0}}});
  const BoundaryDatum f = BoundaryDatum::build(sq, pieces);

  const SolutionField F = solve_continuous(f, 3);
  REQUIRE(F.chords.levels.size() == 3);
  CHECK(F.chords.levels[1] != 0.5);
  CHECK(std::abs(F.chords.levels[1] - 0.5) <= 1e-7);
  CHECK(F.chords.levels[0] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("solve_bv: jump datum converges to the indicator of the upper half") {
  const BoundaryDatum f = fx::f_jump();
  const BVSolution sol = solve_bv(f, {16, 32, 64, 128});

  CHECK(sol.schedule == std::vector<int>{16, 32, 64, 128});
  CHECK(sol.certificate_lower <= 1e-12);
  CHECK(sol.certificate_upper <= 1e-12);
  CHECK(sol.upper.plateaus.empty());
  CHECK(sol.lower.plateaus.empty());

  for (const SolutionField* F : {&sol.lower, &sol.upper}) {
    CHECK(std::abs(F->tv - 1.0) <= 1e-9);
    // away from the interface band the field is the indicator
    CHECK(std::abs(evaluate(*F, {0.5, 0.75}) - 1.0) <= 2.0 / 1024);
    CHECK(std::abs(evaluate(*F, {0.2, 0.9}) - 1.0) <= 2.0 / 1024);
    CHECK(evaluate(*F, {0.5, 0.25}) == 0.0);
    CHECK(evaluate(*F, {0.9, 0.1}) == 0.0);
    const EstimateReport est = verify_estimates(*F, f);
    CHECK(est.sup_ok);
    CHECK(est.tv_ok);
  }
}

TEST_CASE("solve_bv: continuous data reproduce the continuous solution") {
  const BoundaryDatum f = fx::f_x();
  const BVSolution sol = solve_bv(f, {1024, 2048, 4096});
  CHECK(sol.certificate_lower <= 1e-3);
  CHECK(sol.certificate_upper <= 1e-3);
  for (double x : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(evaluate(sol.lower, {x, 0.4}) - x) <= 2e-3);
    CHECK(std::abs(evaluate(sol.upper, {x, 0.4}) - x) <= 2e-3);
  }
}

TEST_CASE("solve_bv: hump datum keeps its plateau and corner formula") {
  const BoundaryDatum f = fx::f_hump();
  // slope-10 ramps shift by O(1/n) under mollification, so the schedule must
  // be fine enough for the drift to sit inside the certificate tolerance
  const BVSolution sol = solve_bv(f, {8192, 16384});
  const double cert_tol = (1e-3 + 1.0 / 1024) * 1.0;
  CHECK(sol.certificate_lower <= cert_tol);
  CHECK(sol.certificate_upper <= cert_tol);

  REQUIRE(sol.upper.plateaus.size() == 1);
  REQUIRE(sol.lower.plateaus.size() == 1);
  CHECK(evaluate(sol.upper, {0.5, 0.1}) == 1.0);
  CHECK(evaluate(sol.lower, {0.5, 0.1}) == 1.0);
  CHECK(std::abs(evaluate(sol.upper, {0.05, 0.05}) - 0.75) <= 4.0 / 1024);
  CHECK(std::abs(evaluate(sol.lower, {0.05, 0.05}) - 0.75) <= 4.0 / 1024);
  CHECK(std::abs(sol.upper.tv - std::sqrt(5.0) / 10.0) <= 2.0 / 1024);
  CHECK(std::abs(sol.lower.tv - std::sqrt(5.0) / 10.0) <= 2.0 / 1024);

  // lower solution never exceeds the upper one
  for (const Point2& p : interior_probe_grid(f.polygon(), 12))
    CHECK(evaluate(sol.lower, p) <= evaluate(sol.upper, p) + 1e-9);
}

TEST_CASE("solve_bv schedule validation") {
  const BoundaryDatum f = fx::f_hump();
  CHECK_ERR(solve_bv(f, {}), Err::OutOfRange);
  CHECK_ERR(solve_bv(f, {128, 128}), Err::OutOfRange);
  CHECK_ERR(solve_bv(f, {256, 128}), Err::OutOfRange);
  CHECK_ERR(solve_bv(f, {16, 32}), Err::TooCoarse);  // needs n >= 80
  CHECK_ERR(solve_bv(fx::f_jump(), {4, 8}), Err::TooCoarse);
  CHECK_ERR(solve_bv(fx::gallery_d2_far(), {64, 128}), Err::Inadmissible);
}

TEST_CASE("comparison principle on random ordered pairs") {
  Rng rng(20240817u);
  for (int trial = 0; trial < 3; ++trial) {
    const ConvexPolygon poly = fx::random_polygon(rng);
    const BoundaryDatum f1 = fx::random_unimodal_datum(rng, poly, 1.0, 2.0);
    const BoundaryDatum f2 = f1.affine(1.0, 0.3);   // f1 + 0.3
    const BoundaryDatum f3 = f1.affine(1.25, 0.0);  // 1.25 f1 >= f1 since f1 >= 1
    const SolutionField F1 = solve_continuous(f1, 256);
    const SolutionField F2 = solve_continuous(f2, 256);
    const SolutionField F3 = solve_continuous(f3, 256);
    for (const Point2& p : interior_probe_grid(poly, 8)) {
      const double u1 = evaluate(F1, p);
      CHECK(u1 <= evaluate(F2, p) + 1e-9);
      CHECK(u1 <= evaluate(F3, p) + 1e-9);
    }
  }
}

TEST_CASE("infinite hex polygon: ledger, cut values, trace recovery") {
  const auto gen = InfinitePolygonGenerator::hex();
  const InfiniteSolution sol = solve_infinite(gen, InfiniteMode::TdNsk, 3, 1024, 1.0);

  REQUIRE(sol.tv_ledger.size() == 3);
  REQUIRE(sol.e_values.size() == 3);
  REQUIRE(sol.estimates.size() == 3);
  CHECK(sol.tv_ledger[0] < sol.tv_ledger[1]);
  CHECK(sol.tv_ledger[1] < sol.tv_ledger[2]);
  CHECK(sol.e_values[0] == 0.1875);
  CHECK(sol.e_values[1] == 0.09375);
  CHECK(sol.e_values[2] == 0.046875);
  for (const EstimateReport& est : sol.estimates) {
    CHECK(est.sup_ok);
    CHECK(est.tv_ok);
  }

  // the field recovers the trace 1 - x away from the accumulation vertex
  const double range = sol.field.range_max - sol.field.range_min;
  const double tol = 2.0 * range / 1024;
  for (Point2 p : {Point2{0.0, 0.3}, Point2{-0.5, 0.2}, Point2{0.4, 0.4}})
    CHECK(std::abs(evaluate(sol.field, p) - (1.0 - p.x)) <= tol);

  // beyond the cut the solution is the cut constant
  REQUIRE(sol.field.exterior.has_value());
  CHECK(evaluate(sol.field, {0.98, 0.01}) == 0.046875);
  CHECK_ERR(evaluate(sol.field, {2.0, 0.0}), Err::OutsideDomain);
  CHECK_ERR(evaluate(sol.field, {0.0, -0.5}), Err::OutsideDomain);
}

TEST_CASE("infinite cascade polygon: accumulating humps and plateau values") {
  const auto gen = InfinitePolygonGenerator::cascade();
  const InfiniteSolution sol = solve_infinite(gen, InfiniteMode::Main3, 2, 1024, 1.0);

  REQUIRE(sol.tv_ledger.size() == 2);
  for (const EstimateReport& est : sol.estimates) {
    CHECK(est.sup_ok);
    CHECK(est.tv_ok);
  }

  // depth 2 retains exactly the first hump; its plateau carries e_1 = 0.25
  REQUIRE(sol.field.plateaus.size() == 1);
  CHECK(sol.field.plateaus[0].value == 0.25);
  const Point2 c = hull_centroid(sol.field.plateaus[0].hull);
  CHECK(evaluate(sol.field, c) == 0.25);
}

TEST_CASE("infinite mode hypotheses are enforced") {
  const auto hex = InfinitePolygonGenerator::hex();
  const auto cas = InfinitePolygonGenerator::cascade();
  CHECK_ERR(solve_infinite(hex, InfiniteMode::Main3, 2, 256, 1.0), Err::HypothesisViolation);
  CHECK_ERR(solve_infinite(cas, InfiniteMode::TdNsk, 2, 256, 1.0), Err::HypothesisViolation);
  CHECK_ERR(solve_infinite(hex, InfiniteMode::TdNsk, 0), Err::OutOfRange);
  // a tiny Cauchy tolerance flags the still-moving ledger
  CHECK_ERR(solve_infinite(hex, InfiniteMode::TdNsk, 2, 256, 1e-9), Err::NotConverged);
}

TEST_CASE("solver output is deterministic") {
  const SolutionField A = solve_continuous(fx::f_hump(), 512);
  const SolutionField B = solve_continuous(fx::f_hump(), 512);
  CHECK(A.tv == B.tv);
  REQUIRE(A.chords.levels.size() == B.chords.levels.size());
  for (size_t k = 0; k < A.chords.levels.size(); ++k) {
    CHECK(A.chords.levels[k] == B.chords.levels[k]);
    REQUIRE(A.chords.chords_at[k].size() == B.chords.chords_at[k].size());
    for (size_t i = 0; i < A.chords.chords_at[k].size(); ++i) {
      CHECK(A.chords.chords_at[k][i].p.x == B.chords.chords_at[k][i].p.x);
      CHECK(A.chords.chords_at[k][i].q.y == B.chords.chords_at[k][i].q.y);
    }
  }
}

TEST_CASE("interior probe grid stays strictly inside") {
  const ConvexPolygon sq = fx::unit_square();
  const auto probes = interior_probe_grid(sq, 32);
  CHECK(probes.size() == 1024);
  for (const Point2& p : probes) CHECK(sq.strictly_contains(p));
  CHECK_ERR(interior_probe_grid(sq, 0), Err::OutOfRange);
}
