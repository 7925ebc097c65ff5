#include "lg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "lg/approximation.hpp"

namespace lg {

namespace {

double value_tol(double scale) { return 1e-12 * std::max(1.0, scale); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// Level grid
// ---------------------------------------------------------------------------

// m regular midpoint levels across [min f, max f], each nudged upward off any
// irregular value (breakpoint values, jump limits, representatives) so that
// level_crossings is well defined.  Nudges are 1e-9 of the range: far below
// the cell width, far above the collision tolerance.
std::vector<double> build_levels(const BoundaryDatum& f, int m) {
  const double lo = f.min_value();
  const double range = f.max_value() - lo;
  const auto& irr = f.irregular_values();
  const double ctol = std::max(1e-10 * range, 4.0 * value_tol(f.sup_norm()));
  std::vector<double> levels(static_cast<size_t>(m));
  for (int k = 1; k <= m; ++k) {
    double t = lo + (double(k) - 0.5) * range / double(m);
    for (int r = 0; r < 8; ++r) {
      auto it = std::lower_bound(irr.begin(), irr.end(), t - ctol);
      if (it == irr.end() || *it > t + ctol) break;
      t += 1e-9 * range;
    }
    levels[size_t(k) - 1] = t;
  }
  return levels;
}

// ---------------------------------------------------------------------------
// Chord pairing
// ---------------------------------------------------------------------------

struct CrossPt {
  double s = 0.0;
  bool up = false;
  Point2 pt;
};

// Minimum-total-length non-crossing perfect matching of the CCW crossing
// sequence.  Crossing directions strictly alternate, so within any block the
// odd-offset positions are exactly the opposite-direction ones and a nested
// (non-crossing) matching always exists; interval DP over the cyclic order cut
// at index 0 finds the cheapest.  The least-gradient solution minimizes total
// chord length level by level, which is what selects the paper's pairing.
std::vector<std::pair<int, int>> min_length_matching(const std::vector<CrossPt>& c) {
  const int n = int(c.size());
  std::vector<std::vector<double>> best(size_t(n), std::vector<double>(size_t(n), 0.0));
  std::vector<std::vector<int>> pick(size_t(n), std::vector<int>(size_t(n), -1));
  for (int len = 2; len <= n; len += 2) {
    for (int i = 0; i + len - 1 < n; ++i) {
      const int j = i + len - 1;
      double b = std::numeric_limits<double>::infinity();
      int arg = -1;
      for (int k = i + 1; k <= j; k += 2) {
        if (c[size_t(k)].up == c[size_t(i)].up) continue;
        double v = dist(c[size_t(i)].pt, c[size_t(k)].pt);
        if (k - 1 >= i + 1) v += best[size_t(i) + 1][size_t(k) - 1];
        if (k + 1 <= j) v += best[size_t(k) + 1][size_t(j)];
        if (v < b) {
          b = v;
          arg = k;
        }
      }
      if (arg < 0)
        fail(Err::CrossingPairingFailure, "no opposite-direction partner in crossing block");
      best[size_t(i)][size_t(j)] = b;
      pick[size_t(i)][size_t(j)] = arg;
    }
  }
  std::vector<std::pair<int, int>> out;
  std::vector<std::pair<int, int>> stack{{0, n - 1}};
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    if (i > j) continue;
    const int k = pick[size_t(i)][size_t(j)];
    out.push_back({i, k});
    if (i + 1 <= k - 1) stack.push_back({i + 1, k - 1});
    if (k + 1 <= j) stack.push_back({k + 1, j});
  }
  return out;
}

// Boundary arcs on which the data exceeds the level: from each up-crossing to
// the cyclically next crossing (a down-crossing by alternation).  Sorted by
// decreasing length so evaluation tries the fattest reference cell first.
std::vector<std::pair<double, double>> high_arcs_of(const std::vector<CrossPt>& c, double L) {
  std::vector<std::pair<double, double>> arcs;
  const size_t n = c.size();
  for (size_t i = 0; i < n; ++i) {
    if (!c[i].up) continue;
    const double lo = c[i].s;
    double hi = c[(i + 1) % n].s;
    if (hi <= lo) hi += L;
    arcs.push_back({lo, hi});
  }
  std::sort(arcs.begin(), arcs.end(), [](const auto& a, const auto& b) {
    return a.second - a.first > b.second - b.first;
  });
  return arcs;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

// Side of the exterior cut: +1 strictly on the excluded (accumulation) side,
// -1 strictly on the solved side, 0 within tolerance of the cut line.
int cut_side(const ExteriorPatch& ex, Point2 x) {
  const Point2 d = ex.cut.q - ex.cut.p;
  const double se = cross(d, ex.excluded - ex.cut.p);
  const double sx = cross(d, x - ex.cut.p);
  const double tol = 1e-12 * norm(d) * std::max(1.0, dist(x, ex.cut.p));
  if (std::abs(sx) <= tol) return 0;
  return (sx > 0.0) == (se > 0.0) ? 1 : -1;
}

// Is p in the closed super-level set at level index k?  A point on one of the
// level's chords counts as in (the set is closed).  Otherwise parity: segment
// from p to a boundary point b inside a {data > t} arc crosses the level's
// chords an even number of times exactly when p lies in the set, because the
// non-crossing chords split the domain into cells of alternating membership.
// Degenerate probes (an exactly collinear configuration) retry with other
// fractions and arcs.
bool member(const SolutionField& F, size_t k, Point2 p) {
  const auto& chords = F.chords.chords_at[k];
  const ConvexPolygon& poly = *F.domain;
  const double dtol = 1e-12 * std::max(1.0, poly.diameter());
  for (const auto& c : chords)
    if (point_segment_distance(p, c.p, c.q) <= dtol) return true;
  const auto& arcs = F.chords.high_arcs[k];
  const double L = poly.perimeter();
  static constexpr double kFracs[3] = {0.5, 0.25, 0.75};
  int tries = 0;
  for (size_t ai = 0; ai < arcs.size() && tries < 8; ++ai) {
    for (double fr : kFracs) {
      if (tries >= 8) break;
      ++tries;
      double ba = arcs[ai].first + fr * (arcs[ai].second - arcs[ai].first);
      if (ba >= L) ba -= L;
      const Point2 b = poly.arc_to_point(ba);
      int cnt = 0;
      bool degenerate = false;
      for (const auto& c : chords) {
        const double o1 = cross(b - p, c.p - p), o2 = cross(b - p, c.q - p);
        const double o3 = cross(c.q - c.p, p - c.p), o4 = cross(c.q - c.p, b - c.p);
        if (o1 == 0.0 || o2 == 0.0 || o3 == 0.0 || o4 == 0.0) {
          degenerate = true;
          break;
        }
        if (((o1 > 0.0) != (o2 > 0.0)) && ((o3 > 0.0) != (o4 > 0.0))) ++cnt;
      }
      if (degenerate) continue;
      return cnt % 2 == 0;
    }
  }
  fail(Err::OutOfRange, "level membership probe degenerate after retries");
}

// Chord length surviving on the solved side of the exterior cut (full length
// when there is no exterior patch).
double kept_length(const Chord& c, const std::optional<ExteriorPatch>& ex) {
  if (!ex) return dist(c.p, c.q);
  const Point2 A = ex->cut.p;
  const Point2 d = ex->cut.q - A;
  const double se = cross(d, ex->excluded - A);
  double fa = cross(d, c.p - A), fb = cross(d, c.q - A);
  if (se < 0.0) {
    fa = -fa;
    fb = -fb;
  }
  // positive = excluded side
  if (fa <= 0.0 && fb <= 0.0) return dist(c.p, c.q);
  if (fa >= 0.0 && fb >= 0.0) return 0.0;
  const double t = fa / (fa - fb);
  const Point2 xp = c.p + t * (c.q - c.p);
  return fa <= 0.0 ? dist(c.p, xp) : dist(xp, c.q);
}

}  // namespace

std::vector<PlateauRegion> plateau_regions(const std::vector<Hump>& humps) {
  std::vector<PlateauRegion> out;
  out.reserve(humps.size());
  for (const auto& h : humps) {
    std::vector<Point2> pts{h.a, h.b};
    if (h.has_companions()) {
      pts.push_back(h.y);
      pts.push_back(h.z);
    }
    PlateauRegion r;
    r.hull = convex_hull(std::move(pts));
    r.value = h.e;
    out.push_back(std::move(r));
  }
  return out;
}

SolutionField solve_continuous(const BoundaryDatum& f, int m) {
  if (m < 1) fail(Err::OutOfRange, "level count must be positive");
  if (!f.jumps().empty())
    fail(Err::Inadmissible, "datum has jump discontinuities; solve it through solve_bv");
  const AdmissibilityReport rep = classify(f);
  if (!rep.overall)
    fail(Err::Inadmissible,
         "datum fails admissibility with " + std::to_string(rep.witnesses.size()) + " witness(es)");

  SolutionField out;
  out.domain = f.polygon_ptr();
  out.range_min = f.min_value();
  out.range_max = f.max_value();
  out.sup_norm = std::max(std::abs(out.range_min), std::abs(out.range_max));
  out.plateaus = plateau_regions(rep.humps);

  const double range = out.range_max - out.range_min;
  if (range <= value_tol(f.sup_norm())) return out;  // constant datum: no chords, tv = 0

  const ConvexPolygon& poly = f.polygon();
  const double L = poly.perimeter();
  std::vector<double> levels = build_levels(f, m);
  out.chords.levels.reserve(levels.size());
  for (double& t : levels) {
    std::vector<Crossing> cr;
    for (int r = 0;; ++r) {
      try {
        cr = f.level_crossings(t);
        break;
      } catch (const Error& e) {
        if (e.code() != Err::IrregularLevel || r >= 8) throw;
        t += 1e-9 * range;
      }
    }
    if (cr.empty()) fail(Err::IrregularLevel, "no boundary crossing at interior level " + fmt(t));
    std::vector<CrossPt> pts(cr.size());
    for (size_t i = 0; i < cr.size(); ++i)
      pts[i] = CrossPt{cr[i].s, cr[i].up, poly.arc_to_point(cr[i].s)};
    std::vector<Chord> chords;
    for (auto [i, k] : min_length_matching(pts)) {
      const CrossPt& u = pts[size_t(pts[size_t(i)].up ? i : k)];
      const CrossPt& d = pts[size_t(pts[size_t(i)].up ? k : i)];
      chords.push_back(Chord{u.pt, d.pt, t});
    }
    out.chords.levels.push_back(t);
    out.chords.chords_at.push_back(std::move(chords));
    out.chords.high_arcs.push_back(high_arcs_of(pts, L));
  }

  // Chords of neighboring levels bound nested super-level sets and must not
  // cross; a crossing means the pairing leaked across an irregular structure.
  for (size_t k = 0; k + 1 < out.chords.levels.size(); ++k)
    for (const auto& a : out.chords.chords_at[k])
      for (const auto& b : out.chords.chords_at[k + 1])
        if (chords_properly_cross(a, b))
          fail(Err::CrossingPairingFailure,
               "chords at levels " + fmt(out.chords.levels[k]) + " and " +
                   fmt(out.chords.levels[k + 1]) + " cross");

  out.tv = tv_coarea(out);
  return out;
}

double evaluate(const SolutionField& field, Point2 p) {
  if (field.exterior) {
    const ExteriorPatch& ex = *field.exterior;
    const int side = cut_side(ex, p);
    if (side > 0) {
      if (ex.ambient && ex.ambient->contains(p)) return ex.value;
      fail(Err::OutsideDomain, "point lies beyond the ambient truncation");
    }
    if (side == 0 &&
        point_segment_distance(p, ex.cut.p, ex.cut.q) <=
            1e-9 * std::max(1.0, dist(ex.cut.p, ex.cut.q)))
      return ex.value;
  }
  if (!field.domain || !field.domain->strictly_contains(p))
    fail(Err::OutsideDomain, "point (" + fmt(p.x) + ", " + fmt(p.y) + ") is not interior");
  for (const auto& pl : field.plateaus)
    if (pl.hull.strictly_contains(p)) return pl.value;
  if (field.chords.levels.empty()) return field.range_min;
  if (!member(field, 0, p)) return field.range_min;
  size_t lo = 0, hi = field.chords.levels.size() - 1;
  while (lo < hi) {
    const size_t mid = (lo + hi + 1) / 2;
    if (member(field, mid, p))
      lo = mid;
    else
      hi = mid - 1;
  }
  return field.chords.levels[lo];
}

double tv_coarea(const SolutionField& field) {
  if (field.chords.levels.empty()) return 0.0;
  const double dt = (field.range_max - field.range_min) / double(field.chords.levels.size());
  double tv = 0.0;
  for (const auto& level_chords : field.chords.chords_at) {
    double len = 0.0;
    for (const auto& c : level_chords) len += kept_length(c, field.exterior);
    tv += len * dt;
  }
  return tv;
}

EstimateReport verify_estimates(const SolutionField& field, const BoundaryDatum& f) {
  EstimateReport r;
  r.sup_u = field.sup_norm;
  r.sup_f = f.sup_norm();
  r.tv_u = field.tv;
  r.diam_times_tvf = f.polygon().diameter() * f.tv();
  r.sup_ok = r.sup_u <= r.sup_f + 1e-12;
  r.tv_ok = r.tv_u <= r.diam_times_tvf + 1e-9;
  return r;
}

std::vector<Point2> interior_probe_grid(const ConvexPolygon& poly, int k) {
  if (k < 1) fail(Err::OutOfRange, "probe grid size must be positive");
  double x0 = poly.vertices()[0].x, x1 = x0, y0 = poly.vertices()[0].y, y1 = y0;
  for (const Point2& v : poly.vertices()) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  const double margin = 1e-9 * std::max(1.0, poly.diameter());
  std::vector<Point2> out;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Point2 p{x0 + (i + 0.5) * (x1 - x0) / k, y0 + (j + 0.5) * (y1 - y0) / k};
      if (poly.strictly_contains(p) && poly.boundary_distance(p) > margin) out.push_back(p);
    }
  }
  return out;
}

BVSolution solve_bv(const BoundaryDatum& f, const std::vector<int>& schedule, int m) {
  if (schedule.empty()) fail(Err::OutOfRange, "empty mollification schedule");
  for (size_t i = 0; i + 1 < schedule.size(); ++i)
    if (schedule[i] >= schedule[i + 1])
      fail(Err::OutOfRange, "mollification schedule must be strictly increasing");
  const AdmissibilityReport rep = classify(f);
  if (!rep.overall)
    fail(Err::Inadmissible,
         "datum fails admissibility with " + std::to_string(rep.witnesses.size()) + " witness(es)");
  const FeatureScales fs = min_feature_scale(f);
  for (int n : schedule)
    if (n < fs.n_min)
      fail(Err::TooCoarse, "schedule entry " + std::to_string(n) +
                               " cannot resolve the datum (needs n >= " +
                               std::to_string(fs.n_min) + ")");

  // The limit solution is constant on every hump hull (the approximants only
  // approach it from below/above there), so all returned fields carry the
  // datum's own plateau regions.
  const std::vector<PlateauRegion> plateaus = plateau_regions(rep.humps);

  BVSolution out;
  out.schedule = schedule;
  SolutionField lower_prev, upper_prev;
  for (size_t i = 0; i < schedule.size(); ++i) {
    const int n = schedule[i];
    SolutionField lo = solve_continuous(mollify_lower(f, n).base, m);
    SolutionField hi = solve_continuous(mollify_upper(f, n).base, m);
    lo.plateaus = plateaus;
    hi.plateaus = plateaus;
    if (i + 1 == schedule.size()) {
      out.lower = std::move(lo);
      out.upper = std::move(hi);
    } else if (i + 2 == schedule.size()) {
      lower_prev = std::move(lo);
      upper_prev = std::move(hi);
    }
  }

  if (schedule.size() >= 2) {
    const double range = f.max_value() - f.min_value();
    const int n_prev = schedule[schedule.size() - 2];
    std::vector<std::pair<double, double>> gaps;
    for (const auto& j : f.jumps()) {
      const double a = std::min(j.left, j.right), b = std::max(j.left, j.right);
      if (b - a > value_tol(f.sup_norm())) gaps.push_back({a, b});
    }
    auto in_gap = [&](double t) {
      for (const auto& [a, b] : gaps)
        if (t > a && t < b) return true;
      return false;
    };
    // Pointwise convergence only holds at continuity points of the datum:
    // probes close to a chord whose level sits inside a jump's gap see the
    // interface forever and are excluded from the certificate.
    const double band = 3.0 / n_prev;
    auto near_gap_chord = [&](Point2 p, const SolutionField& A, const SolutionField& B) {
      for (const SolutionField* F : {&A, &B})
        for (size_t k = 0; k < F->chords.levels.size(); ++k) {
          if (!in_gap(F->chords.levels[k])) continue;
          for (const auto& c : F->chords.chords_at[k])
            if (point_segment_distance(p, c.p, c.q) < band) return true;
        }
      return false;
    };
    const std::vector<Point2> probes = interior_probe_grid(f.polygon(), 32);
    auto certificate = [&](const SolutionField& last, const SolutionField& prev) {
      double worst = 0.0;
      for (const Point2& p : probes) {
        if (!gaps.empty() && near_gap_chord(p, last, prev)) continue;
        worst = std::max(worst, std::abs(evaluate(last, p) - evaluate(prev, p)));
      }
      return worst;
    };
    out.certificate_lower = certificate(out.lower, lower_prev);
    out.certificate_upper = certificate(out.upper, upper_prev);
    // Fields are quantized to m levels, so differences below one grid step
    // are resolution noise, not scheme drift; the tolerance carries both.
    const double tol = (1e-3 + 1.0 / double(m)) * range;
    if (out.certificate_lower > tol || out.certificate_upper > tol)
      fail(Err::NotConverged,
           "probe-grid gap " + fmt(std::max(out.certificate_lower, out.certificate_upper)) +
               " exceeds " + fmt(tol) + " at schedule end");
  }
  return out;
}

InfiniteSolution solve_infinite(const InfinitePolygonGenerator& gen, InfiniteMode mode, int N,
                                int m, double cauchy_tol) {
  if (N < 1) fail(Err::OutOfRange, "truncation depth must be >= 1");
  InfiniteSolution out;
  SolutionField last;
  for (int n = 1; n <= N; ++n) {
    TruncatedProblem tp = extend_domain(truncate_domain(gen, n));
    const size_t humps_n = tp.f.extract_humps().size();
    if (mode == InfiniteMode::TdNsk && humps_n != 0)
      fail(Err::HypothesisViolation,
           "monotone-arm mode, but the depth-" + std::to_string(n) + " datum carries " +
               std::to_string(humps_n) + " hump(s)");
    if (mode == InfiniteMode::Main3 && n >= 2 && humps_n != size_t(n - 1))
      fail(Err::HypothesisViolation,
           "accumulating-hump mode expects " + std::to_string(n - 1) + " hump(s) at depth " +
               std::to_string(n) + ", found " + std::to_string(humps_n));

    SolutionField field = solve_continuous(tp.extended->f_bar, m);
    out.estimates.push_back(verify_estimates(field, tp.extended->f_bar));

    // u_n equals the solved field on the truncated domain and the cut constant
    // beyond it, so its total variation over the true domain clips every chord
    // at the cut.
    ExteriorPatch ex;
    ex.cut = Chord{tp.cut_a, tp.cut_b, tp.e};
    ex.excluded = gen.p0();
    ex.value = tp.e;
    field.exterior = std::move(ex);
    field.tv = tv_coarea(field);
    out.tv_ledger.push_back(field.tv);
    out.e_values.push_back(tp.e);
    if (n == N) last = std::move(field);
  }
  const int J = std::min(N + 4, gen.depth_cap());
  last.exterior->ambient = std::make_shared<const ConvexPolygon>(gen.truncation(J));
  out.field = std::move(last);
  if (N >= 2) {
    const double tv_last = out.tv_ledger[size_t(N) - 1];
    const double gap = std::abs(tv_last - out.tv_ledger[size_t(N) - 2]);
    if (gap > cauchy_tol * std::max(std::abs(tv_last), 1e-300))
      fail(Err::NotConverged, "tv ledger gap " + fmt(gap) + " exceeds " +
                                  fmt(cauchy_tol * std::abs(tv_last)) + " at depth " +
                                  std::to_string(N));
  }
  return out;
}

}  // namespace lg
