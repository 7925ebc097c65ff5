#include "lg/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace lg {

namespace {

constexpr double kArcTol = 1e-9;

double value_tol(double scale) { return 1e-12 * std::max(1.0, scale); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

const char* to_string(PieceKind k) {
  switch (k) {
    case PieceKind::Increasing: return "increasing";
    case PieceKind::Decreasing: return "decreasing";
    case PieceKind::Constant: return "constant";
  }
  return "?";
}

double MonotonePiece::eval(double s) const {
  if (s <= breakpoints.front().first) return breakpoints.front().second;
  if (s >= breakpoints.back().first) return breakpoints.back().second;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), s,
                             [](double v, const std::pair<double, double>& bp) { return v < bp.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (hi.first - lo.first <= 0.0) return hi.second;
  double t = (s - lo.first) / (hi.first - lo.first);
  return lo.second + t * (hi.second - lo.second);
}

BoundaryDatum BoundaryDatum::build(ConvexPolygon poly, std::vector<MonotonePiece> pieces,
                                   std::vector<JumpPoint> jumps) {
  return build(std::make_shared<const ConvexPolygon>(std::move(poly)), std::move(pieces),
               std::move(jumps));
}

BoundaryDatum BoundaryDatum::build(std::shared_ptr<const ConvexPolygon> poly,
                                   std::vector<MonotonePiece> pieces, std::vector<JumpPoint> jumps) {
  if (!poly) fail(Err::SchemaError, "boundary datum requires a polygon");
  const double L = poly->perimeter();
  if (pieces.empty()) fail(Err::CoverageGap, "no monotone pieces given");
  std::sort(pieces.begin(), pieces.end(),
            [](const MonotonePiece& a, const MonotonePiece& b) { return a.s0 < b.s0; });

  const double seam_tol = 1e-9 * std::max(1.0, L);
  if (std::abs(pieces.front().s0) > seam_tol)
    fail(Err::CoverageGap, "first piece starts at s=" + fmt(pieces.front().s0) + ", expected 0");
  pieces.front().s0 = 0.0;
  for (size_t i = 0; i < pieces.size(); ++i) {
    MonotonePiece& p = pieces[i];
    if (!(p.s1 > p.s0 + seam_tol))
      fail(Err::CoverageGap, "piece " + std::to_string(i) + " has nonpositive length");
    if (i + 1 < pieces.size()) {
      if (std::abs(p.s1 - pieces[i + 1].s0) > seam_tol)
        fail(Err::CoverageGap,
             "pieces " + std::to_string(i) + "," + std::to_string(i + 1) + " do not abut at s=" + fmt(p.s1));
      p.s1 = pieces[i + 1].s0;
    } else {
      if (std::abs(p.s1 - L) > seam_tol)
        fail(Err::CoverageGap, "last piece ends at s=" + fmt(p.s1) + ", expected perimeter " + fmt(L));
      p.s1 = L;
    }
    if (p.breakpoints.size() < 2)
      fail(Err::SchemaError, "piece " + std::to_string(i) + " needs at least two breakpoints");
    if (std::abs(p.breakpoints.front().first - p.s0) > seam_tol ||
        std::abs(p.breakpoints.back().first - p.s1) > seam_tol)
      fail(Err::SchemaError, "piece " + std::to_string(i) + " breakpoints do not span [s0, s1]");
    p.breakpoints.front().first = p.s0;
    p.breakpoints.back().first = p.s1;
    for (size_t j = 0; j + 1 < p.breakpoints.size(); ++j)
      if (!(p.breakpoints[j + 1].first > p.breakpoints[j].first - seam_tol) ||
          (j + 2 < p.breakpoints.size() && p.breakpoints[j + 1].first <= p.breakpoints[j].first))
        fail(Err::SchemaError, "piece " + std::to_string(i) + " breakpoint arcs not increasing");
  }

  double scale = 0.0;
  for (const auto& p : pieces)
    for (const auto& bp : p.breakpoints) scale = std::max(scale, std::abs(bp.second));
  for (const auto& j : jumps)
    scale = std::max({scale, std::abs(j.left), std::abs(j.value), std::abs(j.right)});
  const double vtol = value_tol(scale);

  for (size_t i = 0; i < pieces.size(); ++i) {
    const MonotonePiece& p = pieces[i];
    for (size_t j = 0; j + 1 < p.breakpoints.size(); ++j) {
      double dv = p.breakpoints[j + 1].second - p.breakpoints[j].second;
      bool ok = true;
      switch (p.kind) {
        case PieceKind::Increasing: ok = dv >= -vtol; break;
        case PieceKind::Decreasing: ok = dv <= vtol; break;
        case PieceKind::Constant: ok = std::abs(dv) <= vtol; break;
      }
      if (!ok)
        fail(Err::NonMonotonePiece, "piece " + std::to_string(i) + " (" + to_string(p.kind) +
                                        ") violates monotonicity at s=" + fmt(p.breakpoints[j + 1].first));
    }
  }

  // Resolve seams: default representatives at jumps, validate overrides.
  auto find_override = [&](double s) -> const JumpPoint* {
    for (const auto& j : jumps) {
      double d = std::abs(j.s - s);
      d = std::min(d, std::abs(d - L));
      if (d <= seam_tol) return &j;
    }
    return nullptr;
  };
  std::vector<bool> used(jumps.size(), false);
  std::vector<JumpPoint> resolved;
  for (size_t i = 0; i < pieces.size(); ++i) {
    double s = pieces[i].s0;
    const MonotonePiece& prev = pieces[(i + pieces.size() - 1) % pieces.size()];
    double ll = prev.right_limit();
    double rr = pieces[i].left_limit();
    const JumpPoint* ov = find_override(s);
    if (ov) used[ov - jumps.data()] = true;
    if (std::abs(ll - rr) <= vtol) {
      if (ov && std::abs(ov->value - rr) > vtol)
        fail(Err::BadRepresentative,
             "override " + fmt(ov->value) + " at continuity point s=" + fmt(s) + " must equal " + fmt(rr));
      continue;
    }
    double lo = std::min(ll, rr), hi = std::max(ll, rr);
    double rep = ov ? ov->value : 0.5 * (ll + rr);
    if (rep < lo - vtol || rep > hi + vtol)
      fail(Err::BadRepresentative, "representative " + fmt(rep) + " at s=" + fmt(s) +
                                       " outside [" + fmt(lo) + ", " + fmt(hi) + "]");
    resolved.push_back(JumpPoint{s, ll, rep, rr});
  }
  for (size_t i = 0; i < jumps.size(); ++i)
    if (!used[i])
      fail(Err::SchemaError, "jump record at s=" + fmt(jumps[i].s) + " is not at a piece boundary");
  std::sort(resolved.begin(), resolved.end(),
            [](const JumpPoint& a, const JumpPoint& b) { return a.s < b.s; });

  BoundaryDatum f;
  f.poly_ = std::move(poly);
  f.pieces_ = std::move(pieces);
  f.jumps_ = std::move(resolved);

  double tv = 0.0;
  double vmin = f.pieces_.front().breakpoints.front().second;
  double vmax = vmin;
  for (const auto& p : f.pieces_) {
    tv += std::abs(p.right_limit() - p.left_limit());
    for (const auto& bp : p.breakpoints) {
      vmin = std::min(vmin, bp.second);
      vmax = std::max(vmax, bp.second);
      f.irregular_values_.push_back(bp.second);
    }
  }
  for (const auto& j : f.jumps_) {
    tv += std::abs(j.right - j.left);
    f.irregular_values_.push_back(j.left);
    f.irregular_values_.push_back(j.value);
    f.irregular_values_.push_back(j.right);
  }
  f.tv_ = tv;
  f.min_value_ = vmin;
  f.max_value_ = vmax;
  f.sup_norm_ = std::max(std::abs(vmin), std::abs(vmax));
  std::sort(f.irregular_values_.begin(), f.irregular_values_.end());
  f.irregular_values_.erase(std::unique(f.irregular_values_.begin(), f.irregular_values_.end()),
                            f.irregular_values_.end());
  return f;
}

int BoundaryDatum::piece_index(double s) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), s,
                             [](double v, const MonotonePiece& p) { return v < p.s0; });
  if (it == pieces_.begin()) return 0;
  return int(it - pieces_.begin()) - 1;
}

std::optional<JumpPoint> BoundaryDatum::jump_at(double s) const {
  const double L = poly_->perimeter();
  for (const auto& j : jumps_) {
    double d = std::abs(j.s - s);
    d = std::min(d, std::abs(d - L));
    if (d <= kArcTol * std::max(1.0, L)) return j;
  }
  return std::nullopt;
}

BoundaryDatum::Triple BoundaryDatum::eval(double s) const {
  s = poly_->wrap(s);
  if (auto j = jump_at(s)) return Triple{j->left, j->value, j->right};
  double v = pieces_[piece_index(s)].eval(s);
  return Triple{v, v, v};
}

std::vector<double> BoundaryDatum::node_arcs() const {
  const double L = poly_->perimeter();
  const double atol = kArcTol * std::max(1.0, L);
  std::vector<double> arcs;
  for (const auto& p : pieces_)
    for (const auto& bp : p.breakpoints) arcs.push_back(poly_->wrap(bp.first));
  for (const auto& j : jumps_) arcs.push_back(poly_->wrap(j.s));
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end(),
                         [&](double a, double b) { return std::abs(a - b) <= atol; }),
             arcs.end());
  if (arcs.size() > 1 && std::abs(arcs.front() + L - arcs.back()) <= atol) arcs.pop_back();
  return arcs;
}

LevelSetP BoundaryDatum::level_set_P(double e) const {
  const double L = poly_->perimeter();
  const double vtol = value_tol(std::max(sup_norm_, std::abs(e)));
  const double atol = kArcTol * std::max(1.0, L);
  std::vector<std::pair<double, double>> comps;
  for (const auto& p : pieces_) {
    for (size_t j = 0; j + 1 < p.breakpoints.size(); ++j) {
      double x0 = p.breakpoints[j].first, v0 = p.breakpoints[j].second;
      double x1 = p.breakpoints[j + 1].first, v1 = p.breakpoints[j + 1].second;
      bool at0 = std::abs(v0 - e) <= vtol, at1 = std::abs(v1 - e) <= vtol;
      if (at0 && at1) {
        comps.emplace_back(x0, x1);
      } else if (at0) {
        comps.emplace_back(x0, x0);
      } else if (at1) {
        comps.emplace_back(x1, x1);
      } else if ((v0 - e) * (v1 - e) < 0.0) {
        double t = (e - v0) / (v1 - v0);
        double sx = x0 + t * (x1 - x0);
        comps.emplace_back(sx, sx);
      }
    }
  }
  for (const auto& j : jumps_) {
    double lo = std::min(j.left, j.right), hi = std::max(j.left, j.right);
    if (e >= lo - vtol && e <= hi + vtol) comps.emplace_back(j.s, j.s);
  }
  std::sort(comps.begin(), comps.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& c : comps) {
    if (!merged.empty() && c.first <= merged.back().second + atol)
      merged.back().second = std::max(merged.back().second, c.second);
    else
      merged.push_back(c);
  }
  if (merged.size() > 1 && merged.front().first <= atol && merged.back().second >= L - atol) {
    merged.back().second = merged.front().second + L;
    merged.erase(merged.begin());
  }
  LevelSetP out;
  out.e = e;
  out.components = std::move(merged);
  return out;
}

std::vector<Crossing> BoundaryDatum::level_crossings(double t) const {
  const double rtol = value_tol(std::max(sup_norm_, std::abs(t)));
  for (double v : irregular_values_)
    if (std::abs(v - t) <= rtol)
      fail(Err::IrregularLevel, "level t=" + fmt(t) + " collides with data value " + fmt(v));
  std::vector<Crossing> out;
  for (const auto& p : pieces_) {
    for (size_t j = 0; j + 1 < p.breakpoints.size(); ++j) {
      double x0 = p.breakpoints[j].first, v0 = p.breakpoints[j].second;
      double x1 = p.breakpoints[j + 1].first, v1 = p.breakpoints[j + 1].second;
      if (v0 < t && v1 > t) {
        out.push_back(Crossing{x0 + (t - v0) / (v1 - v0) * (x1 - x0), true});
      } else if (v0 > t && v1 < t) {
        out.push_back(Crossing{x0 + (t - v0) / (v1 - v0) * (x1 - x0), false});
      }
    }
  }
  for (const auto& j : jumps_) {
    if (std::min(j.left, j.right) < t && t < std::max(j.left, j.right))
      out.push_back(Crossing{j.s, j.right > j.left});
  }
  std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) { return a.s < b.s; });
  if (out.size() % 2 != 0)
    fail(Err::IrregularLevel, "odd crossing count at level t=" + fmt(t));
  for (size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i].up == out[i + 1].up)
      fail(Err::IrregularLevel, "crossing directions do not alternate at level t=" + fmt(t));
  if (!out.empty() && out.front().up == out.back().up)
    fail(Err::IrregularLevel, "crossing directions do not alternate at level t=" + fmt(t));
  return out;
}

namespace {

// Circular node walk: every breakpoint of every piece in order.  Zero-length
// gaps between consecutive nodes at the same arc encode seams (equal values)
// and jumps (distinct values).
struct Node {
  double s;
  double v;
};

std::vector<Node> node_walk(const std::vector<MonotonePiece>& pieces) {
  std::vector<Node> nodes;
  for (const auto& p : pieces)
    for (const auto& bp : p.breakpoints) nodes.push_back(Node{bp.first, bp.second});
  return nodes;
}

}  // namespace

std::vector<BoundaryDatum::ExtremalRun> BoundaryDatum::extremal_runs() const {
  const double L = poly_->perimeter();
  const double vtol = value_tol(sup_norm_);
  const double atol = kArcTol * std::max(1.0, L);
  std::vector<Node> nodes = node_walk(pieces_);
  const size_t n = nodes.size();
  auto arc_len = [&](size_t i) {  // length of segment i -> i+1 (circular)
    double d = nodes[(i + 1) % n].s - nodes[i].s;
    if ((i + 1) % n == 0) d += L;
    return d;
  };
  auto flat = [&](size_t i) {
    return std::abs(nodes[(i + 1) % n].v - nodes[i].v) <= vtol;
  };

  size_t start = n;  // first segment beginning a flat chain after a non-flat one
  for (size_t i = 0; i < n; ++i) {
    if (flat(i) && !flat((i + n - 1) % n)) {
      start = i;
      break;
    }
  }
  std::vector<ExtremalRun> out;
  if (start == n) return out;  // everywhere flat (constant datum) or no flats
  size_t i = start;
  size_t guard = 0;
  do {
    if (flat(i)) {
      size_t j = i;
      double len = 0.0;
      while (flat(j)) {
        len += arc_len(j);
        j = (j + 1) % n;
        if (++guard > 4 * n) fail(Err::SchemaError, "run scan failed to terminate");
      }
      // chain is segments i .. j-1; run endpoints are node i and node j
      if (len > atol) {
        // Chain spans segments i..j-1, i.e. nodes i..j; the entering segment
        // is (i-1) -> i and the exiting segment is j -> j+1.
        double e = nodes[i].v;
        size_t before = (i + n - 1) % n;
        double v_before = nodes[before].v;
        double v_after = nodes[(j + 1) % n].v;
        bool below_l = v_before < e - vtol;
        bool above_l = v_before > e + vtol;
        bool below_r = v_after < e - vtol;
        bool above_r = v_after > e + vtol;
        if ((below_l && below_r) || (above_l && above_r)) {
          ExtremalRun r;
          r.lo = poly_->wrap(nodes[i].s);
          r.hi = r.lo + len;
          r.e = e;
          r.is_max = below_l;
          r.left_continuous = arc_len(before) > atol;
          r.right_continuous = arc_len(j) > atol;
          out.push_back(r);
        }
      }
      i = j;
    } else {
      i = (i + 1) % n;
    }
    if (++guard > 4 * n) fail(Err::SchemaError, "run scan failed to terminate");
  } while (i != start);
  std::sort(out.begin(), out.end(),
            [](const ExtremalRun& a, const ExtremalRun& b) { return a.lo < b.lo; });
  return out;
}

std::vector<BoundaryDatum::VertexExtremum> BoundaryDatum::strict_vertex_extrema() const {
  const double L = poly_->perimeter();
  const double vtol = value_tol(sup_norm_);
  const double atol = kArcTol * std::max(1.0, L);
  std::vector<Node> nodes = node_walk(pieces_);
  const size_t n = nodes.size();
  std::vector<VertexExtremum> out;
  for (int k = 0; k < poly_->num_sides(); ++k) {
    double sv = poly_->vertex_arc(k);
    if (jump_at(sv)) continue;
    // Find a node at the vertex arc; without one the profile is affine there.
    size_t at = n;
    for (size_t i = 0; i < n; ++i) {
      double d = std::abs(nodes[i].s - sv);
      d = std::min(d, std::abs(d - L));
      if (d <= atol) {
        at = i;
        break;
      }
    }
    if (at == n) continue;
    double v0 = nodes[at].v;
    // Nearest nodes at strictly different arcs on both sides.
    size_t prev = at, next = at;
    for (size_t step = 0; step < n; ++step) {
      prev = (prev + n - 1) % n;
      double d = std::abs(nodes[prev].s - sv);
      d = std::min(d, std::abs(d - L));
      if (d > atol) break;
    }
    for (size_t step = 0; step < n; ++step) {
      next = (next + 1) % n;
      double d = std::abs(nodes[next].s - sv);
      d = std::min(d, std::abs(d - L));
      if (d > atol) break;
    }
    double vl = nodes[prev].v, vr = nodes[next].v;
    if (vl < v0 - vtol && vr < v0 - vtol)
      out.push_back(VertexExtremum{sv, v0, true});
    else if (vl > v0 + vtol && vr > v0 + vtol)
      out.push_back(VertexExtremum{sv, v0, false});
  }
  return out;
}

BoundaryDatum BoundaryDatum::negate() const {
  std::vector<MonotonePiece> pieces = pieces_;
  for (auto& p : pieces) {
    for (auto& bp : p.breakpoints) bp.second = -bp.second;
    if (p.kind == PieceKind::Increasing)
      p.kind = PieceKind::Decreasing;
    else if (p.kind == PieceKind::Decreasing)
      p.kind = PieceKind::Increasing;
  }
  std::vector<JumpPoint> jumps = jumps_;
  for (auto& j : jumps) {
    j.left = -j.left;
    j.value = -j.value;
    j.right = -j.right;
  }
  return build(poly_, std::move(pieces), std::move(jumps));
}

BoundaryDatum BoundaryDatum::affine(double a, double b) const {
  if (a == 0.0) fail(Err::OutOfRange, "affine scale must be nonzero");
  std::vector<MonotonePiece> pieces = pieces_;
  for (auto& p : pieces) {
    for (auto& bp : p.breakpoints) bp.second = a * bp.second + b;
    if (a < 0.0) {
      if (p.kind == PieceKind::Increasing)
        p.kind = PieceKind::Decreasing;
      else if (p.kind == PieceKind::Decreasing)
        p.kind = PieceKind::Increasing;
    }
  }
  std::vector<JumpPoint> jumps = jumps_;
  for (auto& j : jumps) {
    j.left = a * j.left + b;
    j.value = a * j.value + b;
    j.right = a * j.right + b;
  }
  return build(poly_, std::move(pieces), std::move(jumps));
}

double total_variation(const BoundaryDatum& f) { return f.tv(); }

ArcDistance distance_to_arc(const ConvexPolygon& poly, Point2 p, double lo, double hi,
                            double tie_tol) {
  const double L = poly.perimeter();
  ArcDistance res;
  res.d = std::numeric_limits<double>::infinity();
  struct Cand {
    double d;
    Point2 q;
    double s;
  };
  std::vector<Cand> cands;
  auto consider = [&](double d, Point2 q, double s) {
    cands.push_back(Cand{d, q, poly.wrap(s)});
    res.d = std::min(res.d, d);
  };
  if (hi - lo <= kGeomEps) {
    Point2 q = poly.arc_to_point(poly.wrap(lo));
    consider(dist(p, q), q, lo);
  } else {
    // Split [lo, hi] at vertex arcs and minimize per sub-segment.
    std::vector<double> cuts{lo};
    for (int k = 0; k < poly.num_sides(); ++k) {
      for (int lap = 0; lap < 2; ++lap) {
        double sv = poly.vertex_arc(k) + lap * L;
        if (sv > lo + kGeomEps && sv < hi - kGeomEps) cuts.push_back(sv);
      }
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      double u0 = cuts[i], u1 = cuts[i + 1];
      if (u1 - u0 <= kGeomEps) continue;
      Point2 A = poly.arc_to_point(poly.wrap(u0));
      Point2 B = poly.arc_to_point(poly.wrap(u1));
      Point2 ab = B - A;
      double len2 = dot(ab, ab);
      double t = len2 > 0.0 ? std::clamp(dot(p - A, ab) / len2, 0.0, 1.0) : 0.0;
      Point2 q = A + t * ab;
      consider(dist(p, q), q, u0 + t * (u1 - u0));
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.s < b.s; });
  for (const auto& c : cands) {
    if (c.d > res.d + tie_tol) continue;
    bool dup = false;
    for (size_t i = 0; i < res.minimizers.size(); ++i)
      if (dist(res.minimizers[i], c.q) <= 10 * kGeomEps * std::max(1.0, L)) dup = true;
    if (!dup) {
      res.minimizers.push_back(c.q);
      res.minimizer_arcs.push_back(c.s);
    }
  }
  return res;
}

std::vector<Hump> BoundaryDatum::extract_humps() const {
  const double L = poly_->perimeter();
  const double atol = kArcTol * std::max(1.0, L);
  const double vtol = value_tol(sup_norm_);
  std::vector<Hump> humps;
  for (const ExtremalRun& run : extremal_runs()) {
    // Vertices inside the closed run interval (including endpoints).
    std::vector<double> touched;
    for (int k = 0; k < poly_->num_sides(); ++k) {
      for (int lap = 0; lap < 2; ++lap) {
        double sv = poly_->vertex_arc(k) + lap * L;
        if (sv >= run.lo - atol && sv <= run.hi + atol) touched.push_back(sv);
      }
    }
    if (touched.empty()) {
      // Strictly interior to one side: a hump.
      int side = poly_->arc_coord(poly_->wrap(0.5 * (run.lo + run.hi))).side_index;
      Hump h;
      h.a_s = run.lo;
      h.b_s = poly_->wrap(run.hi);
      h.e = run.e;
      h.is_max = run.is_max;
      h.side_index = side;
      h.a = poly_->arc_to_point(h.a_s);
      h.b = poly_->arc_to_point(h.b_s);
      humps.push_back(h);
      continue;
    }
    // Touches or crosses a vertex.  Benign unless the run stays on a single
    // side, touches exactly one of its endpoints, and the rest of that side
    // is not monotone.
    if (touched.size() == 1) {
      double sv = touched[0];
      bool at_lo = std::abs(sv - run.lo) <= atol;
      bool at_hi = std::abs(sv - run.hi) <= atol;
      if (at_lo != at_hi) {
        // Side whose interior hosts the run.
        ArcCoord ac = poly_->arc_coord(poly_->wrap(0.5 * (run.lo + run.hi)));
        double side_lo = poly_->vertex_arc(ac.side_index);
        double side_hi = side_lo + poly_->side_length(ac.side_index);
        // Remainder of the side off the run (run may stick out past a lap).
        double rem_lo = at_lo ? run.hi : side_lo;
        double rem_hi = at_lo ? side_hi : run.lo;
        if (run.lo < side_lo - atol || run.hi > side_hi + atol) {
          // Run extends beyond the side: crossing case, benign.
        } else if (rem_hi - rem_lo > atol) {
          // Walk data values over [rem_lo, rem_hi] (one-sided limits at the
          // ends, full jump triples inside) and test weak monotonicity.
          std::vector<double> vals;
          vals.push_back(eval(poly_->wrap(rem_lo)).right);
          for (const Node& nd : node_walk(pieces_)) {
            if (nd.s > rem_lo + atol && nd.s < rem_hi - atol) {
              Triple t = eval(nd.s);
              vals.push_back(t.left);
              if (t.right != t.left) {
                vals.push_back(t.value);
                vals.push_back(t.right);
              }
            }
          }
          vals.push_back(eval(poly_->wrap(rem_hi)).left);
          bool inc = true, dec = true;
          for (size_t i = 0; i + 1 < vals.size(); ++i) {
            if (vals[i + 1] < vals[i] - vtol) inc = false;
            if (vals[i + 1] > vals[i] + vtol) dec = false;
          }
          if (!inc && !dec)
            fail(Err::HumpTouchesVertex,
                 "constant extremal stretch [" + fmt(run.lo) + ", " + fmt(run.hi) +
                     "] touches a vertex and the rest of its side is not monotone");
        }
      }
    }
    // benign: no hump emitted
  }

  // Companions: nearest points of P(e) off the hump interval.
  for (Hump& h : humps) {
    double lo = h.a_s;
    double hi = lo + poly_->forward_dist(h.a_s, h.b_s);
    LevelSetP P = level_set_P(h.e);
    std::vector<std::pair<double, double>> rest;
    for (const auto& c : P.components) {
      // Overlap test modulo wrap: component [c0,c1], run [lo,hi].
      bool overlap = false;
      for (int lap = -1; lap <= 1; ++lap) {
        double c0 = c.first + lap * L, c1 = c.second + lap * L;
        if (c1 >= lo - atol && c0 <= hi + atol) overlap = true;
      }
      if (!overlap) rest.push_back(c);
    }
    if (rest.empty()) continue;  // no off-hump level set; D2 will report it
    auto nearest = [&](Point2 p) {
      ArcDistance best;
      best.d = std::numeric_limits<double>::infinity();
      for (const auto& c : rest) {
        ArcDistance cur = distance_to_arc(*poly_, p, c.first, c.second);
        if (cur.d < best.d - 1e-9) {
          best = cur;
        } else if (cur.d <= best.d + 1e-9) {
          best.d = std::min(best.d, cur.d);
          for (size_t i = 0; i < cur.minimizers.size(); ++i) {
            best.minimizers.push_back(cur.minimizers[i]);
            best.minimizer_arcs.push_back(cur.minimizer_arcs[i]);
          }
        }
      }
      return best;
    };
    ArcDistance da = nearest(h.a);
    ArcDistance db = nearest(h.b);
    auto pick_ccw_first = [&](const ArcDistance& d) {
      size_t best = 0;
      for (size_t i = 1; i < d.minimizer_arcs.size(); ++i)
        if (d.minimizer_arcs[i] < d.minimizer_arcs[best]) best = i;
      return best;
    };
    size_t ia = pick_ccw_first(da);
    size_t ib = pick_ccw_first(db);
    h.y = da.minimizers[ia];
    h.z = db.minimizers[ib];
    h.dist_a = da.d;
    h.dist_b = db.d;
    h.y_candidates = da.minimizers;
    h.z_candidates = db.minimizers;
    h.y_candidate_arcs = da.minimizer_arcs;
    h.z_candidate_arcs = db.minimizer_arcs;
    double sy = da.minimizer_arcs[ia];
    double sz = db.minimizer_arcs[ib];
    h.y_s = poly_->wrap(sy);
    h.z_s = poly_->wrap(sz);
    // Far arc: of the two arcs joining z to y, the one avoiding the hump.
    double mid = poly_->wrap(0.5 * (lo + hi));
    if (std::abs(poly_->wrap(sy) - poly_->wrap(sz)) <= atol ||
        std::abs(std::abs(poly_->wrap(sy) - poly_->wrap(sz)) - L) <= atol) {
      h.far_lo = poly_->wrap(sz);
      h.far_hi = h.far_lo;
    } else {
      double len_zy = poly_->forward_dist(sz, sy);
      double len_yz = poly_->forward_dist(sy, sz);
      bool zy_has_mid = poly_->forward_dist(sz, mid) < len_zy;
      if (!zy_has_mid) {
        h.far_lo = poly_->wrap(sz);
        h.far_hi = h.far_lo + len_zy;
      } else {
        h.far_lo = poly_->wrap(sy);
        h.far_hi = h.far_lo + len_yz;
      }
    }
  }
  std::sort(humps.begin(), humps.end(), [](const Hump& a, const Hump& b) { return a.a_s < b.a_s; });
  return humps;
}

}  // namespace lg
