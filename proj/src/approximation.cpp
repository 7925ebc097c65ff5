#include "lg/approximation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "lg/fixtures.hpp"

namespace lg {

namespace {

double value_tol(double scale) { return 1e-12 * std::max(1.0, scale); }
double arc_tol(double L) { return 1e-12 * std::max(1.0, L); }

}  // namespace

// ---------------------------------------------------------------------------
// MonotoneStepFn
// ---------------------------------------------------------------------------

MonotoneStepFn MonotoneStepFn::from_nodes(std::vector<Node> nodes) {
  if (nodes.size() < 2) fail(Err::SchemaError, "monotone factor needs at least two nodes");
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].left > nodes[i].right)
      fail(Err::NonMonotonePiece, "monotone factor has a negative atom at sigma=" +
                                      std::to_string(nodes[i].sigma));
    if (i + 1 < nodes.size()) {
      if (!(nodes[i + 1].sigma > nodes[i].sigma))
        fail(Err::SchemaError, "monotone factor nodes must have increasing sigma");
      if (nodes[i].right > nodes[i + 1].left)
        fail(Err::NonMonotonePiece, "monotone factor decreases between sigma=" +
                                        std::to_string(nodes[i].sigma) + " and " +
                                        std::to_string(nodes[i + 1].sigma));
    }
  }
  MonotoneStepFn fn;
  fn.nodes_ = std::move(nodes);
  return fn;
}

double MonotoneStepFn::operator()(double sigma) const {
  const Node& a = nodes_.front();
  const Node& b = nodes_.back();
  if (sigma <= a.sigma) return sigma < a.sigma ? a.left : a.right;
  if (sigma >= b.sigma) return b.right;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), sigma,
                             [](double s, const Node& n) { return s < n.sigma; });
  const Node& lo = *(it - 1);
  const Node& hi = *it;
  if (sigma == lo.sigma) return lo.right;
  if (hi.left == lo.right) return lo.right;
  const double t = (sigma - lo.sigma) / (hi.sigma - lo.sigma);
  return lo.right + t * (hi.left - lo.right);
}

double MonotoneStepFn::left_value(double sigma) const {
  const Node& a = nodes_.front();
  const Node& b = nodes_.back();
  if (sigma <= a.sigma) return a.left;
  if (sigma >= b.sigma) return sigma > b.sigma ? b.right : b.left;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), sigma,
                             [](double s, const Node& n) { return s < n.sigma; });
  const Node& lo = *(it - 1);
  const Node& hi = *it;
  if (sigma == lo.sigma) return lo.left;
  if (hi.left == lo.right) return lo.right;
  const double t = (sigma - lo.sigma) / (hi.sigma - lo.sigma);
  return lo.right + t * (hi.left - lo.right);
}

// ---------------------------------------------------------------------------
// Jordan decomposition
// ---------------------------------------------------------------------------

JordanPair jordan_decompose(const BoundaryDatum& f, const ArcCoord& root) {
  const ConvexPolygon& poly = f.polygon();
  const double L = poly.perimeter();
  const double vtol = value_tol(f.sup_norm());
  const BoundaryDatum::Triple tr = f.eval(root.s);
  if (std::abs(tr.left - tr.value) > vtol || std::abs(tr.value - tr.right) > vtol)
    fail(Err::RootDiscontinuous,
         "decomposition root at s=" + std::to_string(root.s) + " is a jump point");
  if (tr.value > f.min_value() + vtol)
    fail(Err::RootNotMinimum, "decomposition root at s=" + std::to_string(root.s) +
                                  " does not attain the global minimum");

  const double stol = arc_tol(L);
  std::vector<std::pair<double, double>> ev;  // (sigma, arc)
  ev.push_back({0.0, root.s});
  for (double s : f.node_arcs()) {
    const double sig = poly.forward_dist(root.s, s);
    if (sig > stol && sig < L - stol) ev.push_back({sig, s});
  }
  ev.push_back({L, root.s});
  std::sort(ev.begin(), ev.end());
  ev.erase(std::unique(ev.begin(), ev.end(),
                       [&](const auto& a, const auto& b) { return b.first - a.first <= stol; }),
           ev.end());

  const size_t m = ev.size();
  std::vector<int> seg(m, 0);   // growth sign on (ev[j-1], ev[j])
  std::vector<int> atom(m, 0);  // jump sign at ev[j]
  std::vector<MonotoneStepFn::Node> pn, mn;
  double cp = tr.value;
  double cm = 0.0;
  pn.push_back({0.0, cp, cp});
  mn.push_back({0.0, 0.0, 0.0});
  double prev_right = tr.right;
  for (size_t j = 1; j < m; ++j) {
    const BoundaryDatum::Triple u = f.eval(ev[j].second);
    const double d = u.left - prev_right;
    if (d > 0) {
      cp += d;
      seg[j] = 1;
    } else if (d < 0) {
      cm -= d;
      seg[j] = -1;
    }
    const double pl = cp;
    const double ml = cm;
    if (j + 1 < m) {
      const double dj = u.right - u.left;
      if (dj > 0) {
        cp += dj;
        atom[j] = 1;
      } else if (dj < 0) {
        cm -= dj;
        atom[j] = -1;
      }
    }
    pn.push_back({ev[j].first, pl, cp});
    mn.push_back({ev[j].first, ml, cm});
    prev_right = u.right;
  }

  JordanPair jp;
  jp.root_arc = root.s;
  jp.plus = MonotoneStepFn::from_nodes(std::move(pn));
  jp.minus = MonotoneStepFn::from_nodes(std::move(mn));
  for (size_t j = 0; j < m; ++j) {
    const bool in_p = (j > 0 && seg[j] == 1) || (j + 1 < m && seg[j + 1] == 1) || atom[j] == 1;
    const bool in_m = (j > 0 && seg[j] == -1) || (j + 1 < m && seg[j + 1] == -1) || atom[j] == -1;
    if (in_p && in_m) jp.meeting_points.push_back(ev[j].first);
  }
  return jp;
}

// ---------------------------------------------------------------------------
// Feature scales
// ---------------------------------------------------------------------------

FeatureScales min_feature_scale(const BoundaryDatum& f) {
  const ConvexPolygon& poly = f.polygon();
  const double L = poly.perimeter();
  FeatureScales fs;

  fs.alpha = std::numeric_limits<double>::infinity();
  for (int i = 0; i < poly.num_sides(); ++i) fs.alpha = std::min(fs.alpha, poly.side_length(i));

  const auto humps = f.extract_humps();
  if (!humps.empty()) {
    double b = std::numeric_limits<double>::infinity();
    for (const auto& h : humps) b = std::min(b, h.b_s - h.a_s);
    fs.beta = b;
  }

  // Shortest positive-length stretch of a side not covered by a constant
  // extremal run: the room available for ramps next to plateaus and corners.
  // A datum with no runs at all has no plateaus to leave room for, so the
  // scale does not apply.
  const auto runs = f.extremal_runs();
  const double atol = 1e-9 * std::max(1.0, L);
  double gamma = std::numeric_limits<double>::infinity();
  for (int i = 0; i < poly.num_sides() && !runs.empty(); ++i) {
    const double s0 = poly.vertex_arc(i);
    const double s1 = s0 + poly.side_length(i);
    std::vector<std::pair<double, double>> cov;
    for (const auto& r : runs) {
      const double pieces[2][2] = {{r.lo, std::min(r.hi, L)}, {0.0, r.hi > L ? r.hi - L : 0.0}};
      for (const auto& pc : pieces) {
        const double c0 = std::max(pc[0], s0);
        const double c1 = std::min(pc[1], s1);
        if (c1 > c0) cov.push_back({c0, c1});
      }
    }
    std::sort(cov.begin(), cov.end());
    double pos = s0;
    for (const auto& [c0, c1] : cov) {
      if (c0 - pos > atol) gamma = std::min(gamma, c0 - pos);
      pos = std::max(pos, c1);
    }
    if (s1 - pos > atol) gamma = std::min(gamma, s1 - pos);
  }
  if (gamma < std::numeric_limits<double>::infinity()) fs.gamma = gamma;

  double mn = fs.alpha;
  if (fs.beta) mn = std::min(mn, *fs.beta);
  if (fs.gamma) mn = std::min(mn, *fs.gamma);
  // Guard against the quotient landing an ulp above an integer when the
  // scale itself carries representation error (e.g. a gap of 1 - 0.9).
  fs.n_min = int(std::ceil(8.0 / mn * (1.0 - 1e-12)));
  return fs;
}

// ---------------------------------------------------------------------------
// Mollification
// ---------------------------------------------------------------------------

namespace {

// 64-node quadrature of the standard bump exp(-1/(1-t^2)) on [-1,1]: four
// panels of 16-point Gauss-Legendre, weights normalized to sum to one.
struct Kernel {
  std::array<double, 64> t{};
  std::array<double, 64> w{};
};

const Kernel& kernel() {
  static const Kernel K = [] {
    static constexpr double gx[8] = {
        0.0950125098376374402, 0.2816035507792589132, 0.4580167776572273863,
        0.6178762444026437484, 0.7554044083550030339, 0.8656312023878317439,
        0.9445750230732325761, 0.9894009349916499326};
    static constexpr double gw[8] = {
        0.1894506104550684963, 0.1826034150449235889, 0.1691565193950025382,
        0.1495959888165767320, 0.1246289712555338720, 0.0951585116824927848,
        0.0622535239386478929, 0.0271524594117540949};
    Kernel k;
    int m = 0;
    double sum = 0.0;
    for (int p = 0; p < 4; ++p) {
      const double c = -1.0 + 0.5 * p + 0.25;
      const double h = 0.25;
      for (int i = 0; i < 16; ++i) {
        const double x = i < 8 ? c - h * gx[7 - i] : c + h * gx[i - 8];
        const double wi = h * gw[i < 8 ? 7 - i : i - 8] * std::exp(-1.0 / (1.0 - x * x));
        k.t[m] = x;
        k.w[m] = wi;
        sum += wi;
        ++m;
      }
    }
    for (double& wi : k.w) wi /= sum;
    return k;
  }();
  return K;
}

// Kernel average of a monotone factor at scale 1/n.  When every sampled
// value agrees bitwise the common value is returned unchanged, so constant
// stretches pass through the mollifier exactly.
double convolve(const MonotoneStepFn& fn, double x, double inv_n) {
  const Kernel& K = kernel();
  std::array<double, 64> v;
  bool flat = true;
  for (int i = 0; i < 64; ++i) {
    v[i] = fn(x - K.t[i] * inv_n);
    flat = flat && v[i] == v[0];
  }
  if (flat) return v[0];
  double acc = 0.0;
  for (int i = 0; i < 64; ++i) acc += K.w[i] * v[i];
  return acc;
}

double pick_root_arc(const BoundaryDatum& f) {
  const ConvexPolygon& poly = f.polygon();
  const double vtol = value_tol(f.sup_norm());
  const double minv = f.min_value();
  double best_len = 0.0;
  double best_mid = 0.0;
  bool found = false;
  for (const auto& r : f.extremal_runs()) {
    if (r.is_max || std::abs(r.e - minv) > vtol) continue;
    const double len = r.hi - r.lo;
    if (len > best_len) {
      best_len = len;
      best_mid = poly.wrap(0.5 * (r.lo + r.hi));
      found = true;
    }
  }
  if (found) return best_mid;
  std::vector<double> cand = f.node_arcs();
  for (int i = 0; i < poly.num_sides(); ++i) cand.push_back(poly.vertex_arc(i));
  std::sort(cand.begin(), cand.end());
  for (double s : cand) {
    const auto t = f.eval(s);
    if (std::abs(t.left - minv) <= vtol && std::abs(t.value - minv) <= vtol &&
        std::abs(t.right - minv) <= vtol)
      return s;
  }
  fail(Err::RootDiscontinuous, "every global minimum of the datum sits at a jump");
}

}  // namespace

MollifiedDatum mollify_lower(const BoundaryDatum& f, int n) {
  const FeatureScales fs = min_feature_scale(f);
  if (n < fs.n_min)
    fail(Err::TooCoarse, "mollification scale 1/" + std::to_string(n) +
                             " is below the feature resolution (need n >= " +
                             std::to_string(fs.n_min) + ")");
  const ConvexPolygon& poly = f.polygon();
  const double L = poly.perimeter();
  const double stol = arc_tol(L);
  const double root = pick_root_arc(f);
  const JordanPair jp = jordan_decompose(f, poly.arc_coord(root));
  const double inv_n = 1.0 / n;
  const double inv8 = 1.0 / (8.0 * n);

  // Sample arcs: clusters of spacing 1/(8n) reaching 3/n to each side of
  // every node of the datum, plus all vertices and the root.
  std::vector<double> base = f.node_arcs();
  for (int i = 0; i < poly.num_sides(); ++i) base.push_back(poly.vertex_arc(i));
  base.push_back(root);
  std::vector<double> arcs;
  arcs.reserve(base.size() * 49 + 1);
  arcs.push_back(0.0);
  for (double s0 : base)
    for (int k = -24; k <= 24; ++k) arcs.push_back(poly.wrap(s0 + k * inv8));
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end(),
                         [&](double a, double b) { return b - a <= stol; }),
             arcs.end());

  const size_t M = arcs.size();
  auto gbar = [&](double s) {
    const double sig = poly.forward_dist(root, poly.wrap(s));
    return convolve(jp.plus, sig - inv_n, inv_n) - convolve(jp.minus, sig + inv_n, inv_n);
  };
  std::vector<double> val(M);
  for (size_t i = 0; i < M; ++i) val[i] = gbar(arcs[i]);

  // Pin the mollified values to the datum on its features so plateaus and
  // extreme values are preserved exactly, not merely to quadrature accuracy.
  auto snap_range = [&](double lo, double width, double value) {
    const double lo_w = poly.wrap(lo);
    for (size_t i = 0; i < M; ++i)
      if (poly.forward_dist(lo_w, arcs[i]) <= width + stol) val[i] = value;
  };
  const auto runs = f.extremal_runs();
  for (const auto& r : runs) {
    const double len = r.hi - r.lo;
    if (!r.is_max)
      snap_range(r.lo, len, r.e);
    else if (len > 4.0 * inv_n)
      snap_range(r.lo + 2.0 * inv_n, len - 4.0 * inv_n, r.e);
  }
  const auto extrema = f.strict_vertex_extrema();
  auto set_at = [&](double s, double value) {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), s - stol);
    if (it != arcs.end() && std::abs(*it - s) <= stol) val[size_t(it - arcs.begin())] = value;
  };
  for (const auto& vx : extrema)
    if (!vx.is_max) set_at(vx.s, vx.value);

  // A side fully covered by a continuous maximal run, up to at most 2/n of
  // slack at each vertex, keeps the run value across the whole side; the
  // ramps then live entirely on the neighboring sides.
  for (int i = 0; i < poly.num_sides(); ++i) {
    const double s0 = poly.vertex_arc(i);
    const double len = poly.side_length(i);
    for (const auto& r : runs) {
      if (!r.is_max || !r.left_continuous || !r.right_continuous) continue;
      const double rl = r.hi - r.lo;
      const double d0 = poly.forward_dist(poly.wrap(r.lo), s0);
      if (d0 <= 2.0 * inv_n + stol && d0 + len <= rl + stol && rl - d0 - len <= 2.0 * inv_n + stol)
        snap_range(s0, len, r.e);
    }
  }

  // Corrective wedges: near a strict vertex maximum the plain kernel average
  // need not peak at the vertex, so within 3/n of it the profile is replaced
  // by a tent whose apex sits at the vertex.  The tent stays below the datum:
  // its corners are kernel averages, hence below the datum at those points,
  // and the flanks of the datum are single linear pieces at this scale.  When
  // one approach is much shallower the apex degenerates to the flank value
  // and the tent flattens into a plateau touching the vertex, which the
  // admissibility rules treat as benign.
  MollifiedDatum out;
  for (const auto& vx : extrema) {
    if (!vx.is_max) continue;
    const double b = vx.s;
    const double zone = 24.0 * inv8;  // 3/n
    const double gm3 = gbar(b - zone);
    const double gp3 = gbar(b + zone);
    const double gm2 = gbar(b - 16.0 * inv8);
    const double gp2 = gbar(b + 16.0 * inv8);
    const double apex = std::max(std::max(gm3, gp3), std::min(gm2, gp2));
    for (size_t i = 0; i < M; ++i) {
      double d = poly.forward_dist(b, arcs[i]);
      if (d > 0.5 * L) d -= L;
      if (std::abs(d) >= zone - stol) continue;
      double tent;
      if (d == 0.0)
        tent = apex;
      else if (d < 0.0)
        tent = gm3 + (zone + d) / zone * (apex - gm3);
      else
        tent = apex + d / zone * (gp3 - apex);
      val[i] = tent;
    }
    const double lo = poly.wrap(b - zone);
    out.wedge_intervals.push_back({lo, lo + 2.0 * zone});
  }

  // Assemble a continuous piecewise-linear datum.  Direction changes are
  // detected with a dead band, and each monotone stretch is clamped into the
  // envelope of its endpoint values to absorb ulp-scale quadrature noise.
  std::vector<double> bs = arcs;
  bs.push_back(L);
  std::vector<double> bv = val;
  bv.push_back(val[0]);
  double vmax = 0.0;
  for (double v : bv) vmax = std::max(vmax, std::abs(v));
  const double band = 1e-12 * std::max(1.0, vmax);
  std::vector<size_t> starts{0};
  int dir = 0;
  for (size_t i = 0; i + 1 < bs.size(); ++i) {
    const double d = bv[i + 1] - bv[i];
    const int di = d > band ? 1 : d < -band ? -1 : 0;
    if (di == 0) continue;
    if (dir == 0)
      dir = di;
    else if (di != dir) {
      starts.push_back(i);
      dir = di;
    }
  }
  starts.push_back(bs.size() - 1);
  std::vector<MonotonePiece> pieces;
  for (size_t c = 0; c + 1 < starts.size(); ++c) {
    const size_t a = starts[c];
    const size_t b2 = starts[c + 1];
    if (b2 <= a) continue;
    MonotonePiece p;
    p.s0 = bs[a];
    p.s1 = bs[b2];
    if (bv[b2] > bv[a]) {
      p.kind = PieceKind::Increasing;
      double prev = bv[a];
      for (size_t j = a + 1; j < b2; ++j) {
        bv[j] = std::min(std::max(bv[j], prev), bv[b2]);
        prev = bv[j];
      }
    } else if (bv[b2] < bv[a]) {
      p.kind = PieceKind::Decreasing;
      double prev = bv[a];
      for (size_t j = a + 1; j < b2; ++j) {
        bv[j] = std::max(std::min(bv[j], prev), bv[b2]);
        prev = bv[j];
      }
    } else {
      p.kind = PieceKind::Constant;
      for (size_t j = a + 1; j < b2; ++j) bv[j] = bv[a];
    }
    p.breakpoints.reserve(b2 - a + 1);
    for (size_t j = a; j <= b2; ++j) p.breakpoints.push_back({bs[j], bv[j]});
    pieces.push_back(std::move(p));
  }
  out.base = BoundaryDatum::build(f.polygon_ptr(), std::move(pieces));
  out.n = n;
  out.kind = MollifyKind::Lower;
  return out;
}

MollifiedDatum mollify_upper(const BoundaryDatum& f, int n) {
  MollifiedDatum m = mollify_lower(f.negate(), n);
  MollifiedDatum out;
  out.base = m.base.negate();
  out.n = n;
  out.kind = MollifyKind::Upper;
  out.wedge_intervals = std::move(m.wedge_intervals);
  return out;
}

// ---------------------------------------------------------------------------
// Truncation
// ---------------------------------------------------------------------------

namespace {

// Re-emit the profile of f on the CCW stretch sa -> sb as pieces of a new
// datum covering [new0, new1].  Optional overrides replace the one-sided
// values at the stretch ends (used to glue exactly onto chord pieces).
void emit_profile(const BoundaryDatum& f, double sa, double sb, double new0, double new1,
                  std::optional<double> v_first, std::optional<double> v_last,
                  std::vector<MonotonePiece>& pieces, std::vector<JumpPoint>& jumps) {
  const ConvexPolygon& poly = f.polygon();
  const double len = poly.forward_dist(sa, sb);
  const double atol = 1e-9 * std::max(1.0, poly.perimeter());
  std::vector<std::pair<double, double>> inner;  // (offset from sa, orig arc)
  for (double s : f.node_arcs()) {
    const double d = poly.forward_dist(sa, s);
    if (d > atol && d < len - atol) inner.push_back({d, s});
  }
  std::sort(inner.begin(), inner.end());
  std::vector<std::pair<double, double>> seq;  // (new arc, orig arc)
  seq.push_back({new0, sa});
  for (const auto& [d, s] : inner) seq.push_back({new0 + d, s});
  seq.push_back({new1, sb});
  for (size_t i = 0; i + 1 < seq.size(); ++i) {
    const double v0 = (i == 0 && v_first) ? *v_first : f.eval(seq[i].second).right;
    const double v1 = (i + 2 == seq.size() && v_last) ? *v_last : f.eval(seq[i + 1].second).left;
    MonotonePiece p;
    p.s0 = seq[i].first;
    p.s1 = seq[i + 1].first;
    p.kind = v1 > v0   ? PieceKind::Increasing
             : v1 < v0 ? PieceKind::Decreasing
                       : PieceKind::Constant;
    p.breakpoints = {{p.s0, v0}, {p.s1, v1}};
    pieces.push_back(std::move(p));
  }
  for (const auto& j : f.jumps()) {
    const double d = poly.forward_dist(sa, j.s);
    if (d < len - atol) jumps.push_back({new0 + d, j.left, j.value, j.right});
  }
}

MonotonePiece const_piece(double s0, double s1, double e) {
  MonotonePiece p;
  p.s0 = s0;
  p.s1 = s1;
  p.kind = PieceKind::Constant;
  p.breakpoints = {{s0, e}, {s1, e}};
  return p;
}

}  // namespace

TruncatedProblem truncate_along(const BoundaryDatum& f, Point2 p, Point2 q, Point2 excluded,
                                int n) {
  const ConvexPolygon& poly = f.polygon();
  const double vtol = 1e-9 * std::max(1.0, f.sup_norm());
  const ArcCoord ap = poly.point_to_arc(p);
  const ArcCoord aq = poly.point_to_arc(q);
  const BoundaryDatum::Triple tp = f.eval(ap.s);
  const BoundaryDatum::Triple tq = f.eval(aq.s);
  if (std::abs(tp.left - tp.right) > vtol || std::abs(tq.left - tq.right) > vtol)
    fail(Err::NoValidCut, "cut endpoint sits on a jump of the boundary datum");
  if (std::abs(tp.value - tq.value) > vtol)
    fail(Err::NoValidCut, "cut endpoints carry different boundary values (" +
                              std::to_string(tp.value) + " vs " + std::to_string(tq.value) + ")");
  const double e = tp.value;

  const ConvexPolygon cut = half_plane_cut(poly, p, q, excluded);
  const int m = cut.num_sides();
  const double ptol = 1e-9 * std::max(1.0, poly.diameter());
  int chord = -1;
  for (int j = 0; j < m; ++j) {
    const Point2 A = cut.side_start(j);
    const Point2 B = cut.side_end(j);
    if ((dist(A, p) < ptol && dist(B, q) < ptol) || (dist(A, q) < ptol && dist(B, p) < ptol)) {
      chord = j;
      break;
    }
  }
  if (chord < 0) fail(Err::DegenerateCut, "cut chord does not survive as a side");

  std::vector<MonotonePiece> pieces;
  std::vector<JumpPoint> jumps;
  for (int j = 0; j < m; ++j) {
    const double s0 = cut.vertex_arc(j);
    const double s1 = j + 1 < m ? cut.vertex_arc(j + 1) : cut.perimeter();
    if (j == chord) {
      pieces.push_back(const_piece(s0, s1, e));
      continue;
    }
    const double sa = poly.point_to_arc(cut.side_start(j)).s;
    const double sb = poly.point_to_arc(cut.side_end(j)).s;
    std::optional<double> v_first, v_last;
    if (j == (chord + 1) % m) v_first = e;
    if ((j + 1) % m == chord) v_last = e;
    emit_profile(f, sa, sb, s0, s1, v_first, v_last, pieces, jumps);
  }

  TruncatedProblem tr;
  tr.n = n;
  tr.cut_a = cut.side_start(chord);
  tr.cut_b = cut.side_end(chord);
  tr.chord_side = chord;
  tr.e = e;
  tr.f = BoundaryDatum::build(cut, std::move(pieces), std::move(jumps));
  tr.omega = tr.f.polygon();
  return tr;
}

namespace {

// Trace of 1 - x on a finite truncation of the inscribed-polygon chain:
// increasing from p0 = (1, 0) to the far vertex (-1, 0), then linear back.
BoundaryDatum hex_trace_datum(const ConvexPolygon& poly) {
  int top = 0;
  for (int i = 1; i < poly.num_sides(); ++i)
    if (poly.vertex(i).x < poly.vertex(top).x) top = i;
  MonotonePiece up;
  up.s0 = 0.0;
  up.s1 = poly.vertex_arc(top);
  up.kind = PieceKind::Increasing;
  for (int i = 0; i <= top; ++i)
    up.breakpoints.push_back({poly.vertex_arc(i), 1.0 - poly.vertex(i).x});
  MonotonePiece dn;
  dn.s0 = up.s1;
  dn.s1 = poly.perimeter();
  dn.kind = PieceKind::Decreasing;
  dn.breakpoints = {{dn.s0, 1.0 - poly.vertex(top).x}, {dn.s1, 1.0 - poly.vertex(0).x}};
  return BoundaryDatum::build(poly, {std::move(up), std::move(dn)});
}

}  // namespace

TruncatedProblem truncate_domain(const InfinitePolygonGenerator& gen, int n) {
  if (n < 1) fail(Err::OutOfRange, "truncation depth must be at least 1");
  if (gen.rule() == "hex") {
    // Cut on the vertical line x = x_n, three quarters of the way from the
    // deepest generated vertex toward the accumulation point p0 = (1, 0).
    const double xn = 1.0 - 0.375 * std::ldexp(1.0, -n);
    int j = 1;
    while (std::cos(std::numbers::pi * std::ldexp(1.0, -(j + 2))) < xn) ++j;
    const ConvexPolygon amb = gen.truncation(j + 2);
    const BoundaryDatum fa = hex_trace_datum(amb);
    const Point2 va = gen.generated_vertex(j);
    const Point2 vb = gen.generated_vertex(j + 1);
    const double t = (xn - vb.x) / (va.x - vb.x);
    const Point2 qtop = vb + t * (va - vb);
    return truncate_along(fa, Point2{xn, 0.0}, qtop, gen.p0(), n);
  }
  if (gen.rule() == "cascade") {
    if (n + 1 > gen.depth_cap())
      fail(Err::GeneratorExhausted, "cascade truncation depth " + std::to_string(n) +
                                        " needs generator depth " + std::to_string(n + 1) +
                                        " beyond the cap " + std::to_string(gen.depth_cap()));
    // Cut along the companion chord of the deepest hump of the next-depth
    // datum, which removes the accumulation corner at p0 = (0, 0).
    const BoundaryDatum fa = fixtures::cascade_datum(n + 1);
    const double ax = 0.45 * std::pow(4.0, -n);
    const auto humps = fa.extract_humps();
    const Hump* h = nullptr;
    for (const auto& hh : humps)
      if (std::abs(hh.a.x - ax) < 1e-9) h = &hh;
    if (!h || !h->has_companions() || !(h->y.y > 0.0))
      fail(Err::HypothesisViolation, "cascade truncation: companion chord unavailable at depth " +
                                         std::to_string(n));
    return truncate_along(fa, h->a, h->y, gen.p0(), n);
  }
  fail(Err::SchemaError, "unknown generator rule '" + gen.rule() + "'");
}

TruncatedProblem extend_domain(TruncatedProblem tp) {
  const ConvexPolygon& omega = tp.omega;
  const int m = omega.num_sides();
  if (tp.chord_side < 0 || tp.chord_side >= m)
    fail(Err::OutOfRange, "truncated problem has no chord side to extend across");
  if (m < 4) fail(Err::DegenerateHull, "extension needs at least four sides");
  const int c = tp.chord_side;
  const int prev = (c + m - 1) % m;
  const int next = (c + 1) % m;
  const Point2 A0 = omega.side_start(prev);
  const Point2 A1 = omega.side_end(prev);
  const Point2 B0 = omega.side_start(next);
  const Point2 B1 = omega.side_end(next);
  const Point2 d1 = A1 - A0;
  const Point2 d2 = B1 - B0;
  const double den = cross(d1, d2);
  if (std::abs(den) <= 1e-12 * norm(d1) * norm(d2))
    fail(Err::ParallelSupportLines,
         "support lines adjacent to the chord are parallel; no extension vertex exists");
  const double t = cross(B0 - A0, d2) / den;
  const Point2 pbar = A0 + t * d1;

  // Replace the chord and its endpoints by the single vertex pbar.
  std::vector<Point2> verts;
  verts.push_back(pbar);
  for (int i = 0; i < m - 2; ++i) verts.push_back(omega.vertex((c + 2 + i) % m));
  const ConvexPolygon omt = ConvexPolygon::from_vertices(std::move(verts));

  std::vector<MonotonePiece> pieces;
  std::vector<JumpPoint> jumps;
  // Side 0 runs pbar -> V_{c+2} through the old chord endpoint B0; the datum
  // stays at the chord value e until B0, then follows the old profile.
  const double l0 = dist(pbar, B0);
  const double end0 = omt.num_sides() > 1 ? omt.vertex_arc(1) : omt.perimeter();
  pieces.push_back(const_piece(0.0, l0, tp.e));
  {
    const double sa = omega.point_to_arc(B0).s;
    const double sb = omega.point_to_arc(B1).s;
    emit_profile(tp.f, sa, sb, l0, end0, tp.e, std::nullopt, pieces, jumps);
  }
  // Middle sides carry over unchanged, only re-parametrized.
  for (int k = 1; k + 1 < omt.num_sides(); ++k) {
    const int oj = (next + k) % m;
    const double sa = omega.point_to_arc(omega.side_start(oj)).s;
    const double sb = omega.point_to_arc(omega.side_end(oj)).s;
    const double s0 = omt.vertex_arc(k);
    const double s1 = k + 1 < omt.num_sides() ? omt.vertex_arc(k + 1) : omt.perimeter();
    emit_profile(tp.f, sa, sb, s0, s1, std::nullopt, std::nullopt, pieces, jumps);
  }
  // Last side runs V_{c-1} -> pbar through the old chord endpoint A1.
  {
    const int last = omt.num_sides() - 1;
    const double s0 = omt.vertex_arc(last);
    const double sa = omega.point_to_arc(A0).s;
    const double sb = omega.point_to_arc(A1).s;
    const double mid = s0 + omega.side_length(prev);
    emit_profile(tp.f, sa, sb, s0, mid, std::nullopt, tp.e, pieces, jumps);
    pieces.push_back(const_piece(mid, omt.perimeter(), tp.e));
  }

  ExtendedDomain ext;
  ext.omega_tilde = omt;
  ext.p_bar = pbar;
  ext.f_bar = BoundaryDatum::build(omt, std::move(pieces), std::move(jumps));
  tp.extended = std::move(ext);
  return tp;
}

}  // namespace lg
