// Acceptance gate: ten end-to-end criteria, each reported as one PASS/FAIL
// line with its runtime.  Tolerances are pinned in-line; budgets are part of
// the criterion.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "lg/admissibility.hpp"
#include "lg/approximation.hpp"
#include "lg/fixtures.hpp"
#include "lg/io.hpp"
#include "lg/oracle.hpp"
#include "lg/solver.hpp"

using namespace lg;
namespace fs = std::filesystem;
namespace fx = lg::fixtures;

namespace {

class Criterion {
 public:
  Criterion(int number, std::string title, double budget_seconds)
      : number_(number),
        title_(std::move(title)),
        budget_(budget_seconds),
        start_(std::chrono::steady_clock::now()) {}

  void expect(bool cond, const std::string& what) {
    if (!cond) failures_.push_back(what);
  }

  void finish() {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    expect(elapsed < budget_, "runtime " + std::to_string(elapsed) +
                                  "s exceeds budget " + std::to_string(budget_) + "s");
    std::printf("[acceptance] criterion %d (%s): %s (%.1fs)\n", number_, title_.c_str(),
                failures_.empty() ? "PASS" : "FAIL", elapsed);
    for (const std::string& f : failures_) std::printf("    - %s\n", f.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(failures_.empty(), "criterion ", number_, " failed");
  }

 private:
  int number_;
  std::string title_;
  double budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> failures_;
};

double field_at(const SolutionField& u, double x, double y) {
  return evaluate(u, {x, y});
}

const fs::path kFixtures = fs::path(LG_SOURCE_DIR) / "fixtures";

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(LG_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("criterion 1") {
  Criterion c(1, "estimate suite", 60.0);
  const int m = 1024;

  for (const auto& [name, f] :
       {std::pair{"f_const", fx::f_const(2.0)}, {"f_x", fx::f_x()},
        {"f_hump", fx::f_hump()}, {"f_twohump", fx::f_twohump()}}) {
    const EstimateReport er = verify_estimates(solve_continuous(f, m), f);
    c.expect(er.sup_ok && er.tv_ok, std::string(name) + ": estimates fail");
  }
  const BVSolution jump = solve_bv(fx::f_jump(), {16, 32, 64, 128}, m);
  for (const SolutionField* u : {&jump.lower, &jump.upper}) {
    const EstimateReport er = verify_estimates(*u, fx::f_jump());
    c.expect(er.sup_ok && er.tv_ok, "f_jump: estimates fail");
  }

  Rng rng(20260823u);
  for (int trial = 0; trial < 20; ++trial) {
    const ConvexPolygon poly = fx::random_polygon(rng);
    const double lo = rng.uniform(-2.0, 1.0);
    const double hi = lo + rng.uniform(0.5, 3.0);
    const BoundaryDatum f = fx::random_unimodal_datum(rng, poly, lo, hi);
    const EstimateReport er = verify_estimates(solve_continuous(f, m), f);
    c.expect(er.sup_ok && er.tv_ok,
             "random trial " + std::to_string(trial) + ": estimates fail");
  }
  c.finish();
}

TEST_CASE("criterion 2") {
  Criterion c(2, "closed forms", 30.0);
  const int m = 1024;

  {  // F_JUMP: indicator of {y > 1/2}, L1 off a 3h band, tv within 2/m
    const BVSolution sol = solve_bv(fx::f_jump(), {16, 32, 64, 128}, m);
    const GridProblem gp = rasterize(fx::f_jump().polygon(), fx::f_jump(), 64);
    double l1 = 0.0;
    for (int j = 0; j < gp.N; ++j)
      for (int i = 0; i < gp.N; ++i) {
        if (!gp.mask[gp.idx(i, j)]) continue;
        const Point2 x = gp.center(i, j);
        if (std::abs(x.y - 0.5) <= 3.0 * gp.h) continue;
        l1 += std::abs(field_at(sol.lower, x.x, x.y) - (x.y > 0.5 ? 1.0 : 0.0));
      }
    l1 *= gp.h * gp.h;
    c.expect(l1 <= 2.0 / m, "f_jump off-band L1 " + std::to_string(l1));
    c.expect(std::abs(sol.lower.tv - 1.0) <= 2.0 / m,
             "f_jump tv " + std::to_string(sol.lower.tv));
  }
  {  // F_X: field is the x coordinate, sup within 2/m
    const SolutionField u = solve_continuous(fx::f_x(), m);
    double sup = 0.0;
    for (Point2 p : interior_probe_grid(fx::f_x().polygon(), 32))
      sup = std::max(sup, std::abs(field_at(u, p.x, p.y) - p.x));
    c.expect(sup <= 2.0 / m, "f_x sup " + std::to_string(sup));
  }
  {  // F_HUMP: corner formula min(1, 10x + 5y) and its mirror, tv = sqrt(5)/10
    const SolutionField u = solve_continuous(fx::f_hump(), m);
    double sup = 0.0;
    for (Point2 p : interior_probe_grid(fx::f_hump().polygon(), 24)) {
      const double want = std::min({1.0, 10.0 * p.x + 5.0 * p.y,
                                    10.0 * (1.0 - p.x) + 5.0 * p.y});
      sup = std::max(sup, std::abs(field_at(u, p.x, p.y) - want));
    }
    c.expect(sup <= 4.0 / m, "f_hump corner sup " + std::to_string(sup));
    c.expect(std::abs(u.tv - std::sqrt(5.0) / 10.0) <= 4.0 / m,
             "f_hump tv " + std::to_string(u.tv));
  }
  c.finish();
}

TEST_CASE("criterion 3") {
  Criterion c(3, "oracle agreement", 360.0);
  const struct {
    const char* name;
    double l1_bound;
  } bounds[] = {{"f_jump", 0.02}, {"f_x", 0.01}, {"f_hump", 0.03}};
  for (const auto& b : bounds) {
    const BoundaryDatum f = b.name == std::string("f_jump") ? fx::f_jump()
                            : b.name == std::string("f_x") ? fx::f_x()
                                                           : fx::f_hump();
    const SolutionField u = f.jumps().empty()
                                ? solve_continuous(f, 1024)
                                : solve_bv(f, {16, 32, 64, 128}, 1024).lower;
    const GridProblem gp = rasterize(f.polygon(), f, 128);
    const GridField v = tv_minimize(gp, 20000);
    const OracleComparison cmp = compare(u, v, gp);
    c.expect(cmp.l1 <= b.l1_bound,
             std::string(b.name) + " l1 " + std::to_string(cmp.l1));
    c.expect(cmp.sup_off_band <= 0.05,
             std::string(b.name) + " sup_off_band " + std::to_string(cmp.sup_off_band));
  }
  c.finish();
}

TEST_CASE("criterion 4") {
  Criterion c(4, "approximant properties", 30.0);
  for (const auto& [name, f] : {std::pair{"f_jump", fx::f_jump()},
                                {"f_hump", fx::f_hump()},
                                {"f_twohump", fx::f_twohump()}}) {
    const std::string tag(name);
    const int n0 = min_feature_scale(f).n_min;
    const double L = f.polygon().perimeter();
    const double tol = 1e-12 * std::max(1.0, f.sup_norm());

    // (1) pointwise monotone squeeze against the one-sided envelope
    for (int n : {n0, 2 * n0, 4 * n0}) {
      const BoundaryDatum g = mollify_lower(f, n).base;
      const BoundaryDatum g8 = mollify_lower(f, n + 8).base;
      const BoundaryDatum h = mollify_upper(f, n).base;
      const BoundaryDatum h8 = mollify_upper(f, n + 8).base;
      Rng rng(101);
      bool ok = true;
      for (int i = 0; i < 500 && ok; ++i) {
        const double s = rng.uniform(0.0, L);
        const auto t = f.eval(s);
        const double fmin = std::min({t.left, t.value, t.right});
        const double fmax = std::max({t.left, t.value, t.right});
        ok = g.value(s) <= g8.value(s) + tol && g8.value(s) <= fmax + tol &&
             fmin <= h8.value(s) + tol && h8.value(s) <= h.value(s) + tol;
      }
      c.expect(ok, tag + ": squeeze fails at n=" + std::to_string(n));
    }

    // (2) |g_n - f| bounded by the oscillation over B(x, 2/n), shrinking in n
    std::vector<double> jump_arcs;
    for (const JumpPoint& jp : f.jumps()) jump_arcs.push_back(jp.s);
    Rng rng2(202);
    std::vector<double> samples;
    while (samples.size() < 400) {
      const double s = rng2.uniform(0.0, L);
      bool clear = true;
      for (double js : jump_arcs)
        if (std::abs(s - js) < 2.5 / n0 || std::abs(std::abs(s - js) - L) < 2.5 / n0)
          clear = false;
      if (clear) samples.push_back(s);
    }
    double prev_err = -1.0;
    for (int n : {n0, 2 * n0, 4 * n0}) {
      const BoundaryDatum g = mollify_lower(f, n).base;
      const BoundaryDatum h = mollify_upper(f, n).base;
      double max_err = 0.0;
      bool ok = true;
      for (double s : samples) {
        double osc_lo = f.value(s), osc_hi = osc_lo;
        for (int k = 0; k <= 80; ++k) {
          const auto t = f.eval(s - 2.0 / n + (4.0 / n) * k / 80.0);
          osc_lo = std::min({osc_lo, t.left, t.value, t.right});
          osc_hi = std::max({osc_hi, t.left, t.value, t.right});
        }
        const double osc = osc_hi - osc_lo;
        const double err =
            std::max(std::abs(g.value(s) - f.value(s)), std::abs(h.value(s) - f.value(s)));
        if (err > osc + 1e-9) ok = false;
        max_err = std::max(max_err, err);
      }
      c.expect(ok, tag + ": oscillation bound fails at n=" + std::to_string(n));
      if (prev_err >= 0.0)
        c.expect(max_err <= 0.75 * prev_err + 1e-12,
                 tag + ": error does not shrink at n=" + std::to_string(n));
      prev_err = max_err;
    }

    // (3) extremum preservation at hump midpoints, exact
    for (int n : {n0, 2 * n0, 4 * n0}) {
      const BoundaryDatum g = mollify_lower(f, n).base;
      const BoundaryDatum h = mollify_upper(f, n).base;
      for (const Hump& hump : classify(f).humps) {
        const double mid = 0.5 * (hump.a_s + hump.b_s);
        if (hump.is_max)
          c.expect(h.value(mid) == hump.e,
                   tag + ": max hump value not preserved at n=" + std::to_string(n));
        else
          c.expect(g.value(mid) == hump.e,
                   tag + ": min hump value not preserved at n=" + std::to_string(n));
      }
    }

    // (4) D1 survives mollification on every side where f satisfies it
    for (int n : {n0, 2 * n0, 4 * n0}) {
      const BoundaryDatum g = mollify_lower(f, n).base;
      const BoundaryDatum h = mollify_upper(f, n).base;
      for (int side = 0; side < f.polygon().num_sides(); ++side) {
        if (check_D1(f, side).verdict != Verdict::Pass) continue;
        c.expect(check_D1(g, side).verdict == Verdict::Pass,
                 tag + ": D1 lost on g_n side " + std::to_string(side));
        c.expect(check_D1(h, side).verdict == Verdict::Pass,
                 tag + ": D1 lost on h_n side " + std::to_string(side));
      }
    }
  }
  c.finish();
}

TEST_CASE("criterion 5") {
  Criterion c(5, "approximant admissibility", 10.0);
  for (const auto& [name, f] :
       {std::pair{"f_const", fx::f_const(2.0)}, {"f_x", fx::f_x()},
        {"f_jump", fx::f_jump()}, {"f_hump", fx::f_hump()},
        {"f_twohump", fx::f_twohump()}}) {
    const int n0 = min_feature_scale(f).n_min;
    for (int n : {n0, 2 * n0, 4 * n0}) {
      for (const MollifiedDatum& m : {mollify_lower(f, n), mollify_upper(f, n)}) {
        const AdmissibilityReport rep = classify(m.base);
        c.expect(rep.overall && rep.witnesses.empty(),
                 std::string(name) + ": approximant inadmissible at n=" +
                     std::to_string(n));
      }
    }
  }
  c.finish();
}

TEST_CASE("criterion 6") {
  Criterion c(6, "comparison principle", 120.0);
  Rng rng(61u);
  const int m = 256;
  for (int trial = 0; trial < 50; ++trial) {
    const ConvexPolygon poly = fx::random_polygon(rng);
    const double lo = rng.uniform(0.0, 1.0);
    const double hi = lo + rng.uniform(0.5, 2.0);
    const BoundaryDatum f1 = fx::random_unimodal_datum(rng, poly, lo, hi);
    // three ordered constructions: shift, power-of-two scaling, domination
    BoundaryDatum f2 = f1;
    switch (trial % 3) {
      case 0: f2 = f1.affine(1.0, rng.uniform(0.05, 0.5)); break;
      case 1: f2 = f1.affine(2.0, 0.0); break;
      case 2: f2 = fx::random_unimodal_datum(rng, poly, hi + 0.1, hi + 1.0); break;
    }
    const SolutionField u1 = solve_continuous(f1, m);
    const SolutionField u2 = solve_continuous(f2, m);
    bool ok = true;
    for (Point2 p : interior_probe_grid(poly, 64))
      if (field_at(u1, p.x, p.y) > field_at(u2, p.x, p.y) + 1e-9) {
        ok = false;
        break;
      }
    c.expect(ok, "order violated in trial " + std::to_string(trial));
  }
  c.finish();
}

TEST_CASE("criterion 7") {
  Criterion c(7, "plateau exactness", 30.0);
  Rng rng(77u);
  for (const auto& [name, f, m] : {std::tuple{"f_hump", fx::f_hump(), 1024},
                                   {"f_twohump", fx::f_twohump(), 512}}) {
    const SolutionField u = solve_continuous(f, m);
    c.expect(!u.plateaus.empty(), std::string(name) + ": no plateau regions");
    for (const PlateauRegion& reg : u.plateaus) {
      const auto& hv = reg.hull.vertices();
      for (int i = 0; i < 100; ++i) {
        // random convex combination with weights bounded away from zero
        std::vector<double> w(hv.size());
        double total = 0.0;
        for (double& wk : w) total += wk = rng.uniform(0.05, 1.0);
        Point2 p{0.0, 0.0};
        for (std::size_t k = 0; k < hv.size(); ++k)
          p = p + (w[k] / total) * hv[k];
        if (std::abs(field_at(u, p.x, p.y) - reg.value) > 1e-12) {
          c.expect(false, std::string(name) + ": plateau value off at sample " +
                              std::to_string(i));
          break;
        }
      }
    }
  }
  c.finish();
}

TEST_CASE("criterion 8") {
  Criterion c(8, "truncation pipelines", 180.0);
  const int depth = 6, m = 1024;
  for (const auto& [name, gen, mode] :
       {std::tuple{"hex", InfinitePolygonGenerator::hex(), InfiniteMode::TdNsk},
        {"cascade", InfinitePolygonGenerator::cascade(), InfiniteMode::Main3}}) {
    const std::string tag(name);
    InfiniteSolution sol;
    try {
      sol = solve_infinite(gen, mode, depth, m);
    } catch (const Error& e) {
      c.expect(false, tag + ": " + e.what());
      continue;
    }
    for (int k = 1; k < depth; ++k)
      c.expect(sol.tv_ledger[k] > sol.tv_ledger[k - 1],
               tag + ": ledger not strictly increasing at depth " + std::to_string(k + 1));
    c.expect(std::abs(sol.tv_ledger[depth - 1] - sol.tv_ledger[depth - 2]) <=
                 1e-3 * sol.tv_ledger[depth - 1],
             tag + ": Cauchy gap too large");
    for (int k = 0; k < depth; ++k)
      c.expect(sol.estimates[k].sup_ok && sol.estimates[k].tv_ok,
               tag + ": estimates fail at depth " + std::to_string(k + 1));

    // trace recovery outside B(p0, 0.1): probe just inside the boundary
    const ConvexPolygon dom = gen.truncation(depth);
    const Point2 p0 = gen.p0();
    const Point2 centroid = dom.centroid();
    const BoundaryDatum trace =
        tag == "hex" ? BoundaryDatum() : fx::cascade_datum(depth);
    bool traced = true;
    double worst = 0.0;
    for (int side = 0; side < dom.num_sides(); ++side) {
      for (double frac : {0.25, 0.5, 0.75}) {
        const double s = dom.vertex_arc(side) + frac * dom.side_length(side);
        const Point2 x = dom.arc_to_point(s);
        if (dist(x, p0) <= 0.12) continue;
        const Point2 probe = x + 1e-7 * (centroid - x);
        const double want = tag == "hex" ? 1.0 - x.x : trace.value(s);
        const double got = field_at(sol.field, probe.x, probe.y);
        worst = std::max(worst, std::abs(got - want));
        if (std::abs(got - want) > 2.0 / m) traced = false;
      }
    }
    c.expect(traced, tag + ": trace error " + std::to_string(worst));
  }
  c.finish();
}

TEST_CASE("criterion 9") {
  Criterion c(9, "counterexample gallery", 60.0);
  const std::pair<const char*, const char*> gallery[] = {
      {"gallery_d1", "D1"},           {"gallery_d2_far", "D2"},
      {"gallery_d2_companions", "D2"}, {"gallery_d3", "D3"},
      {"gallery_opc", "OPC"},          {"gallery_dcc_far", "DCC"},
      {"gallery_dcc_companion", "DCC"}};
  for (const auto& [name, check] : gallery) {
    const std::string tag(name);
    const BoundaryDatum f = parse_problem(read_text(kFixtures / (tag + ".json")))
                                .datum.value();
    const AdmissibilityReport rep = classify(f);
    c.expect(!rep.overall, tag + ": unexpectedly admissible");
    bool found = false;
    for (const Witness& w : rep.witnesses) {
      if (w.check.rfind(check, 0) != 0) continue;
      found = true;
      // the recorded inequality must itself be violated
      if (w.relation == "<")
        c.expect(!(w.lhs < w.rhs), tag + ": witness does not replay");
      else if (w.relation == "<=")
        c.expect(!(w.lhs <= w.rhs), tag + ": witness does not replay");
      else if (w.relation == ">=")
        c.expect(!(w.lhs >= w.rhs), tag + ": witness does not replay");
      else if (w.relation == "==")
        c.expect(w.lhs != w.rhs, tag + ": witness does not replay");
      break;
    }
    c.expect(found, tag + ": no " + std::string(check) + " witness");

    // witnesses replay identically on a fresh classification
    const AdmissibilityReport rep2 = classify(f);
    bool stable = rep2.witnesses.size() == rep.witnesses.size();
    for (std::size_t k = 0; stable && k < rep.witnesses.size(); ++k) {
      const Witness &a = rep.witnesses[k], &b = rep2.witnesses[k];
      const bool lhs_same = a.lhs == b.lhs || (std::isnan(a.lhs) && std::isnan(b.lhs));
      const bool rhs_same = a.rhs == b.rhs || (std::isnan(a.rhs) && std::isnan(b.rhs));
      stable = a.check == b.check && lhs_same && rhs_same && a.relation == b.relation;
    }
    c.expect(stable, tag + ": witnesses are not reproducible");

    const fs::path out = fs::temp_directory_path() / ("lg_acc9_" + tag);
    fs::remove_all(out);
    const int code = run_cli("--input " + (kFixtures / (tag + ".json")).string() +
                             " --mode check --out " + out.string());
    c.expect(code == 2, tag + ": CLI exit " + std::to_string(code));
  }
  c.finish();
}

TEST_CASE("criterion 10") {
  Criterion c(10, "determinism", 120.0);
  const fs::path a = fs::temp_directory_path() / "lg_acc10_a";
  const fs::path b = fs::temp_directory_path() / "lg_acc10_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const std::string base =
      "--input " + (kFixtures / "f_jump.json").string() + " --mode full --out ";
  c.expect(run_cli(base + a.string()) == 0, "first full run failed");
  c.expect(run_cli(base + b.string()) == 0, "second full run failed");
  for (const char* name : {"admissibility.json", "chords.json", "estimates.json",
                           "field.csv", "field.pgm", "oracle_compare.json"}) {
    const bool same = read_text(a / name) == read_text(b / name);
    c.expect(same, std::string(name) + " differs between runs");
  }

  const fs::path ia = fs::temp_directory_path() / "lg_acc10_inf_a";
  const fs::path ib = fs::temp_directory_path() / "lg_acc10_inf_b";
  fs::remove_all(ia);
  fs::remove_all(ib);
  const std::string inf = "--input " + (kFixtures / "hex.json").string() +
                          " --mode solve-infinite --out ";
  c.expect(run_cli(inf + ia.string()) == 0, "first infinite run failed");
  c.expect(run_cli(inf + ib.string()) == 0, "second infinite run failed");
  for (const char* name : {"estimates.json", "chords.json"}) {
    const bool same = read_text(ia / name) == read_text(ib / name);
    c.expect(same, std::string("infinite ") + name + " differs between runs");
  }
  c.finish();
}
