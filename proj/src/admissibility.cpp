#include "lg/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>

namespace lg {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

namespace {

constexpr size_t kNone = std::numeric_limits<size_t>::max();

double value_tol_of(const BoundaryDatum& f) { return 1e-12 * std::max(1.0, f.sup_norm()); }

double arc_tol_of(const BoundaryDatum& f) {
  return 1e-9 * std::max(1.0, f.polygon().perimeter());
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

WitnessSample probe(const BoundaryDatum& f, double s, char which) {
  auto t = f.eval(s);
  double v = which == 'L' ? t.left : which == 'R' ? t.right : t.value;
  return WitnessSample{s, which, v};
}

/// Ordered probes characterizing f restricted to the closed arc [lo, hi]
/// (hi >= lo, possibly beyond one perimeter).  One-sided limits open and close
/// the sequence; interior nodes contribute their full triples.  The optional
/// endpoint values include the representatives at lo / hi themselves.
std::vector<WitnessSample> arc_profile(const BoundaryDatum& f, double lo, double hi,
                                       bool lo_value, bool hi_value) {
  const double L = f.polygon().perimeter();
  const double atol = arc_tol_of(f);
  std::vector<WitnessSample> seq;
  if (hi - lo <= atol) {
    seq.push_back(probe(f, lo, 'V'));
    return seq;
  }
  if (lo_value) seq.push_back(probe(f, lo, 'V'));
  seq.push_back(probe(f, lo, 'R'));
  std::vector<double> nodes;
  for (double t : f.node_arcs())
    for (int lap = 0; lap <= 2; ++lap) {
      double s = t + lap * L;
      if (s > lo + atol && s < hi - atol) nodes.push_back(s);
    }
  std::sort(nodes.begin(), nodes.end());
  for (double s : nodes) {
    seq.push_back(probe(f, s, 'L'));
    seq.push_back(probe(f, s, 'V'));
    seq.push_back(probe(f, s, 'R'));
  }
  seq.push_back(probe(f, hi, 'L'));
  if (hi_value) seq.push_back(probe(f, hi, 'V'));
  return seq;
}

struct MonoFail {
  size_t i = 0, j = 0;
  bool wanted_increasing = false;
};

/// Nullopt when the sequence is weakly monotone in some direction; otherwise
/// the adjacent pair that violated the direction surviving longest.
std::optional<MonoFail> monotone_violation(const std::vector<WitnessSample>& seq, double tol) {
  size_t up_bad = kNone, down_bad = kNone;
  for (size_t k = 0; k + 1 < seq.size(); ++k) {
    if (up_bad == kNone && seq[k + 1].value < seq[k].value - tol) up_bad = k;
    if (down_bad == kNone && seq[k + 1].value > seq[k].value + tol) down_bad = k;
  }
  if (up_bad == kNone || down_bad == kNone) return std::nullopt;
  if (up_bad < down_bad) return MonoFail{down_bad, down_bad + 1, false};
  return MonoFail{up_bad, up_bad + 1, true};
}

/// +1 weakly increasing (and not constant), -1 weakly decreasing, 0 constant.
/// Assumes the sequence is monotone.
int mono_direction(const std::vector<WitnessSample>& seq, double tol) {
  bool up = false, down = false;
  for (size_t k = 0; k + 1 < seq.size(); ++k) {
    if (seq[k + 1].value > seq[k].value + tol) up = true;
    if (seq[k + 1].value < seq[k].value - tol) down = true;
  }
  if (up && !down) return 1;
  if (down && !up) return -1;
  return 0;
}

Witness mono_witness(const std::string& check, int side, const std::string& detail,
                     const std::vector<WitnessSample>& seq, const MonoFail& bad) {
  Witness w;
  w.check = check;
  w.side_index = side;
  w.detail = detail;
  w.samples = {seq[bad.i], seq[bad.j]};
  w.lhs = seq[bad.j].value;
  w.rhs = seq[bad.i].value;
  w.relation = bad.wanted_increasing ? ">=" : "<=";
  return w;
}

/// Arc positions of the nearest data nodes strictly before and after s;
/// used to pick a neighborhood radius free of further breakpoints.
std::pair<double, double> eps_around(const BoundaryDatum& f, double s) {
  const auto& poly = f.polygon();
  const double L = poly.perimeter();
  const double atol = arc_tol_of(f);
  s = poly.wrap(s);
  auto nodes = f.node_arcs();
  double before = L, after = L;  // arc distances
  for (double t : nodes) {
    double fwd = poly.forward_dist(s, t);
    double bwd = poly.forward_dist(t, s);
    if (fwd > atol) after = std::min(after, fwd);
    if (bwd > atol) before = std::min(before, bwd);
  }
  if (nodes.size() < 2) before = after = L / 4.0;
  return {before / 2.0, after / 2.0};
}

bool value_continuous(const BoundaryDatum::Triple& t, double tol) {
  return std::abs(t.left - t.value) <= tol && std::abs(t.value - t.right) <= tol;
}

/// Endpoint rule shared by D1 and the outer-component clause of D2: if the
/// data jumps at arc s, the five values across s (inward samples, one-sided
/// limits, representative) must be weakly monotone, in the direction `dir`
/// when the adjacent stretch has one.
void endpoint_rule(const BoundaryDatum& f, double s, int dir, const std::string& check, int side,
                   CheckResult& res) {
  const double tol = value_tol_of(f);
  s = f.polygon().wrap(s);
  auto t = f.eval(s);
  if (value_continuous(t, tol)) return;
  auto [eb, ea] = eps_around(f, s);
  std::vector<WitnessSample> seq = {probe(f, s - eb, 'V'), probe(f, s, 'L'), probe(f, s, 'V'),
                                    probe(f, s, 'R'), probe(f, s + ea, 'V')};
  if (auto bad = monotone_violation(seq, tol)) {
    res.verdict = Verdict::Fail;
    res.witnesses.push_back(mono_witness(
        check, side, "monotonicity does not extend across the endpoint jump at s=" + fmt(s), seq,
        *bad));
    return;
  }
  int d5 = mono_direction(seq, tol);
  if (dir != 0 && d5 != 0 && d5 != dir) {
    // Monotone, but against the stretch's own direction: witness the first
    // pair moving the wrong way.
    for (size_t k = 0; k + 1 < seq.size(); ++k) {
      bool wrong = dir > 0 ? seq[k + 1].value < seq[k].value - tol
                           : seq[k + 1].value > seq[k].value + tol;
      if (wrong) {
        res.verdict = Verdict::Fail;
        res.witnesses.push_back(mono_witness(
            check, side,
            "jump at s=" + fmt(s) + " runs against the side's monotone direction", seq,
            MonoFail{k, k + 1, dir > 0}));
        return;
      }
    }
  }
}

/// D1 applied to the closed sub-arc [lo, hi] of one side: weakly monotone
/// profile, endpoint rule at the flagged ends.  `lo_value` / `hi_value`
/// include the endpoint representatives in the monotone profile (used when an
/// end abuts a hump and must connect to its value monotonically).
void d1_on_range(const BoundaryDatum& f, int side, double lo, double hi, bool lo_vertex,
                 bool hi_vertex, const std::string& check, const std::string& what,
                 CheckResult& res) {
  const double tol = value_tol_of(f);
  auto seq = arc_profile(f, lo, hi, !lo_vertex, !hi_vertex);
  if (auto bad = monotone_violation(seq, tol)) {
    res.verdict = Verdict::Fail;
    res.witnesses.push_back(mono_witness(check, side, what + " is not monotone", seq, *bad));
    return;
  }
  int dir = mono_direction(seq, tol);
  if (lo_vertex) endpoint_rule(f, lo, dir, check, side, res);
  if (hi_vertex) endpoint_rule(f, hi, dir, check, side, res);
}

bool arc_on_side(const ConvexPolygon& poly, double s, int side, double atol) {
  double lo = poly.vertex_arc(side);
  double d = poly.forward_dist(lo, poly.wrap(s));
  return d <= poly.side_length(side) + atol;
}

struct FarArc {
  double lo = 0.0, hi = 0.0;  // hi may exceed L; degenerate when hi == lo
};

/// Of the two arcs joining companion candidates y and z, the one avoiding the
/// hump interval.
FarArc far_arc_for(const ConvexPolygon& poly, const Hump& h, double sy, double sz, double atol) {
  const double L = poly.perimeter();
  double lo = h.a_s;
  double hi = lo + poly.forward_dist(h.a_s, h.b_s);
  double mid = poly.wrap(0.5 * (lo + hi));
  double wy = poly.wrap(sy), wz = poly.wrap(sz);
  FarArc far;
  if (std::abs(wy - wz) <= atol || std::abs(std::abs(wy - wz) - L) <= atol) {
    far.lo = far.hi = wz;
    return far;
  }
  double len_zy = poly.forward_dist(wz, wy);
  if (poly.forward_dist(wz, mid) < len_zy) {
    far.lo = wy;
    far.hi = wy + poly.forward_dist(wy, wz);
  } else {
    far.lo = wz;
    far.hi = wz + len_zy;
  }
  return far;
}

/// dcc1 for one companion choice: the far arc never crosses the hump value.
/// Returns a witness on failure.
std::optional<Witness> dcc1_violation(const BoundaryDatum& f, const Hump& h, const FarArc& far) {
  const double tol = value_tol_of(f);
  auto seq = arc_profile(f, far.lo, far.hi, true, true);
  for (const auto& p : seq) {
    bool bad = h.is_max ? p.value < h.e - tol : p.value > h.e + tol;
    if (bad) {
      Witness w;
      w.check = "DCC1";
      w.side_index = h.side_index;
      w.detail = std::string(h.is_max ? "far arc dips below" : "far arc rises above") +
                 " the hump value at s=" + fmt(f.polygon().wrap(p.s));
      w.samples = {p};
      w.points = {f.polygon().arc_to_point(f.polygon().wrap(p.s))};
      w.lhs = p.value;
      w.rhs = h.e;
      w.relation = h.is_max ? ">=" : "<=";
      return w;
    }
  }
  return std::nullopt;
}

/// dcc2 at one companion (arc c) for one choice.  `far_forward`: +1 when the
/// far arc leaves c in the CCW direction, -1 when backwards, 0 when the far
/// arc is degenerate (both branches face the hump).
std::optional<Witness> dcc2_violation(const BoundaryDatum& f, const Hump& h, double c,
                                      int far_forward, DccOrientation orientation) {
  const auto& poly = f.polygon();
  const double tol = value_tol_of(f);
  c = poly.wrap(c);
  auto t = f.eval(c);
  auto [eb, ea] = eps_around(f, c);
  auto fail = [&](const std::string& why, std::vector<WitnessSample> samples, double lhs,
                  double rhs, const std::string& rel) {
    Witness w;
    w.check = "DCC2";
    w.side_index = h.side_index;
    w.detail = why + " at companion s=" + fmt(c);
    w.samples = std::move(samples);
    w.points = {poly.arc_to_point(c)};
    w.lhs = lhs;
    w.rhs = rhs;
    w.relation = rel;
    return w;
  };

  if (orientation == DccOrientation::Paper) {
    // The companion must be a strict one-sided extremum of the kind opposite
    // the hump: a strict local minimum for a max hump, and vice versa.
    WitnessSample sb = probe(f, c - eb, 'V');
    WitnessSample sa = probe(f, c + ea, 'V');
    WitnessSample sv = probe(f, c, 'V');
    if (h.is_max) {
      if (t.left < t.value - tol)
        return fail("left limit drops below the companion value", {probe(f, c, 'L'), sv}, t.left,
                    t.value, ">=");
      if (t.right < t.value - tol)
        return fail("right limit drops below the companion value", {probe(f, c, 'R'), sv},
                    t.right, t.value, ">=");
      if (!(sb.value > sv.value))
        return fail("no strict local minimum (backward side)", {sb, sv}, sb.value, sv.value, ">");
      if (!(sa.value > sv.value))
        return fail("no strict local minimum (forward side)", {sa, sv}, sa.value, sv.value, ">");
    } else {
      if (t.left > t.value + tol)
        return fail("left limit rises above the companion value", {probe(f, c, 'L'), sv}, t.left,
                    t.value, "<=");
      if (t.right > t.value + tol)
        return fail("right limit rises above the companion value", {probe(f, c, 'R'), sv},
                    t.right, t.value, "<=");
      if (!(sb.value < sv.value))
        return fail("no strict local maximum (backward side)", {sb, sv}, sb.value, sv.value, "<");
      if (!(sa.value < sv.value))
        return fail("no strict local maximum (forward side)", {sa, sv}, sa.value, sv.value, "<");
    }
    return std::nullopt;
  }

  // Monotone orientation.  Branch samples: limit into the branch at c and the
  // inward value at distance epsilon.
  auto branch_check = [&](bool forward, bool hump_side) -> std::optional<Witness> {
    double limit = forward ? t.right : t.left;
    char lim_which = forward ? 'R' : 'L';
    WitnessSample lim{c, lim_which, limit};
    WitnessSample inward = probe(f, forward ? c + ea : c - eb, 'V');
    if (hump_side) {
      // Strict monotone approach ending exactly at the hump value.
      if (std::abs(limit - h.e) > tol)
        return fail("branch toward the hump does not approach the hump value", {lim}, limit, h.e,
                    "==");
      bool strict = h.is_max ? inward.value < limit - tol : inward.value > limit + tol;
      if (!strict)
        return fail("approach toward the companion is not strictly monotone", {inward, lim},
                    inward.value, limit, h.is_max ? "<" : ">");
    } else {
      // Far branch never crosses the hump value.
      for (const WitnessSample& smp : {lim, inward}) {
        bool bad = h.is_max ? smp.value < h.e - tol : smp.value > h.e + tol;
        if (bad)
          return fail("far branch crosses the hump value", {smp}, smp.value, h.e,
                      h.is_max ? ">=" : "<=");
      }
    }
    return std::nullopt;
  };

  if (far_forward == 0) {
    if (auto w = branch_check(false, true)) return w;
    if (auto w = branch_check(true, true)) return w;
  } else {
    if (auto w = branch_check(far_forward > 0, false)) return w;
    if (auto w = branch_check(far_forward < 0, true)) return w;
  }
  return std::nullopt;
}

}  // namespace

CheckResult check_D1(const BoundaryDatum& f, int side) {
  CheckResult res;
  const auto& poly = f.polygon();
  double lo = poly.vertex_arc(side);
  double hi = lo + poly.side_length(side);
  d1_on_range(f, side, lo, hi, true, true, "D1", "side profile", res);
  return res;
}

CheckResult check_D2(const BoundaryDatum& f, int side, const std::vector<Hump>& humps) {
  CheckResult res;
  const auto& poly = f.polygon();
  const double atol = arc_tol_of(f);
  std::vector<Hump> mine;
  for (const auto& h : humps)
    if (h.side_index == side) mine.push_back(h);
  std::sort(mine.begin(), mine.end(), [](const Hump& a, const Hump& b) { return a.a_s < b.a_s; });

  for (const auto& h : mine) {
    if (!h.has_companions()) {
      res.verdict = Verdict::Fail;
      Witness w;
      w.check = "D2";
      w.side_index = side;
      w.detail = "no boundary points at the hump value off the hump [" + fmt(h.a_s) + ", " +
                 fmt(h.b_s) + "]";
      w.points = {h.a, h.b};
      w.relation = "exists";
      res.witnesses.push_back(w);
      continue;
    }
    double gap = dist(h.a, h.b);
    double sum = h.dist_a + h.dist_b;
    if (!(sum < gap)) {
      res.verdict = Verdict::Fail;
      Witness w;
      w.check = "D2";
      w.side_index = side;
      w.detail = "companion distances do not beat the hump width for hump [" + fmt(h.a_s) + ", " +
                 fmt(h.b_s) + "]";
      w.points = {h.a, h.y, h.b, h.z};
      w.lhs = sum;
      w.rhs = gap;
      w.relation = "<";
      res.witnesses.push_back(w);
    }
    bool y_off = false, z_off = false;
    for (double s : h.y_candidate_arcs)
      if (!arc_on_side(poly, s, side, atol)) y_off = true;
    for (double s : h.z_candidate_arcs)
      if (!arc_on_side(poly, s, side, atol)) z_off = true;
    if (!y_off || !z_off) {
      res.verdict = Verdict::Fail;
      Witness w;
      w.check = "D2";
      w.side_index = side;
      w.detail = std::string("every distance minimizer for ") + (!y_off ? "a" : "b") +
                 " lies on the hump's own side";
      w.points = !y_off ? h.y_candidates : h.z_candidates;
      w.relation = "off-side";
      res.witnesses.push_back(w);
    }
  }

  // Outer remainder components of the side act as D1 stretches; the ends
  // abutting a hump must connect to its value monotonically.
  if (!mine.empty()) {
    double side_lo = poly.vertex_arc(side);
    double side_hi = side_lo + poly.side_length(side);
    double first_a = side_lo + poly.forward_dist(side_lo, mine.front().a_s);
    double last_b = side_lo + poly.forward_dist(side_lo, mine.back().b_s);
    if (first_a - side_lo > atol)
      d1_on_range(f, side, side_lo, first_a, true, false, "D2", "outer stretch before the hump",
                  res);
    if (side_hi - last_b > atol)
      d1_on_range(f, side, last_b, side_hi, false, true, "D2", "outer stretch after the hump",
                  res);
  }
  return res;
}

CheckResult check_D3(const BoundaryDatum& f, int side) {
  CheckResult res;
  const auto& poly = f.polygon();
  const double tol = value_tol_of(f);
  const double atol = arc_tol_of(f);
  double lo = poly.vertex_arc(side);
  double len = poly.side_length(side);
  for (const auto& j : f.jumps()) {
    double d = poly.forward_dist(lo, poly.wrap(j.s));
    if (d <= atol || d >= len - atol) continue;  // endpoint jumps belong to D1
    double s = lo + d;
    auto [eb, ea] = eps_around(f, s);
    std::vector<WitnessSample> seq = {probe(f, s - eb, 'V'), probe(f, s, 'L'), probe(f, s, 'V'),
                                      probe(f, s, 'R'), probe(f, s + ea, 'V')};
    if (auto bad = monotone_violation(seq, tol)) {
      res.verdict = Verdict::Fail;
      res.witnesses.push_back(mono_witness(
          "D3", side, "interior jump at s=" + fmt(poly.wrap(j.s)) + " is a local extremum", seq,
          *bad));
    }
  }
  return res;
}

CheckResult check_OPC(const std::vector<Hump>& humps) {
  CheckResult res;
  auto segments_of = [](const Hump& h) {
    std::vector<std::pair<Point2, Point2>> segs;
    for (const auto& y : h.y_candidates) segs.emplace_back(h.a, y);
    for (const auto& z : h.z_candidates) segs.emplace_back(h.b, z);
    return segs;
  };
  for (size_t i = 0; i < humps.size(); ++i) {
    for (size_t j = i + 1; j < humps.size(); ++j) {
      auto si = segments_of(humps[i]);
      auto sj = segments_of(humps[j]);
      for (const auto& u : si) {
        for (const auto& v : sj) {
          if (segments_intersect(u.first, u.second, v.first, v.second)) {
            res.verdict = Verdict::Fail;
            Witness w;
            w.check = "OPC";
            w.detail = "companion segments of humps [" + fmt(humps[i].a_s) + ", " +
                       fmt(humps[i].b_s) + "] and [" + fmt(humps[j].a_s) + ", " +
                       fmt(humps[j].b_s) + "] intersect";
            w.points = {u.first, u.second, v.first, v.second};
            w.relation = "disjoint";
            res.witnesses.push_back(w);
            return res;
          }
        }
      }
    }
  }
  return res;
}

CheckResult check_DCC(const BoundaryDatum& f, const std::vector<Hump>& humps,
                      DccOrientation orientation) {
  CheckResult res;
  const auto& poly = f.polygon();
  const double atol = arc_tol_of(f);
  for (const auto& h : humps) {
    if (!h.has_companions()) continue;  // D2 already reports the defect
    bool some_pass = false;
    std::vector<Witness> canonical;
    for (size_t iy = 0; iy < h.y_candidate_arcs.size() && !some_pass; ++iy) {
      for (size_t iz = 0; iz < h.z_candidate_arcs.size() && !some_pass; ++iz) {
        double sy = h.y_candidate_arcs[iy];
        double sz = h.z_candidate_arcs[iz];
        FarArc far = far_arc_for(poly, h, sy, sz, atol);
        std::vector<Witness> local;
        if (auto w = dcc1_violation(f, h, far)) local.push_back(*w);
        bool degenerate = far.hi - far.lo <= atol;
        for (double c : {sy, sz}) {
          int fwd = 0;
          if (!degenerate) {
            double wc = poly.wrap(c);
            fwd = std::abs(wc - poly.wrap(far.lo)) <= atol ||
                          std::abs(std::abs(wc - poly.wrap(far.lo)) - poly.perimeter()) <= atol
                      ? 1
                      : -1;
          }
          if (auto w = dcc2_violation(f, h, c, fwd, orientation)) local.push_back(*w);
        }
        if (local.empty()) some_pass = true;
        bool is_canonical = std::abs(poly.wrap(sy) - h.y_s) <= atol &&
                            std::abs(poly.wrap(sz) - h.z_s) <= atol;
        if (is_canonical) canonical = local;
        if (canonical.empty() && !local.empty() && iy == 0 && iz == 0) canonical = local;
      }
    }
    if (!some_pass) {
      res.verdict = Verdict::Fail;
      for (auto& w : canonical) res.witnesses.push_back(std::move(w));
    }
  }
  return res;
}

AdmissibilityReport classify(const BoundaryDatum& f, DccOrientation orientation) {
  AdmissibilityReport rep;
  rep.humps = f.extract_humps();
  const auto& poly = f.polygon();
  for (int i = 0; i < poly.num_sides(); ++i) {
    SideVerdict sv;
    sv.side_index = i;
    bool has_hump = false;
    for (const auto& h : rep.humps)
      if (h.side_index == i) has_hump = true;
    if (has_hump) {
      CheckResult r2 = check_D2(f, i, rep.humps);
      sv.d2 = r2.verdict;
      sv.d1 = Verdict::NotApplicable;
      for (auto& w : r2.witnesses) sv.witnesses.push_back(std::move(w));
    } else {
      CheckResult r1 = check_D1(f, i);
      sv.d1 = r1.verdict;
      sv.d2 = Verdict::NotApplicable;
      for (auto& w : r1.witnesses) sv.witnesses.push_back(std::move(w));
    }
    CheckResult r3 = check_D3(f, i);
    sv.d3 = r3.verdict;
    for (auto& w : r3.witnesses) sv.witnesses.push_back(std::move(w));
    if (sv.d1 == Verdict::Fail || sv.d2 == Verdict::Fail || sv.d3 == Verdict::Fail)
      rep.overall = false;
    for (const auto& w : sv.witnesses) rep.witnesses.push_back(w);
    rep.sides.push_back(std::move(sv));
  }
  CheckResult ro = check_OPC(rep.humps);
  rep.opc = ro.verdict;
  if (ro.verdict == Verdict::Fail) rep.overall = false;
  for (auto& w : ro.witnesses) rep.witnesses.push_back(std::move(w));
  CheckResult rd = check_DCC(f, rep.humps, orientation);
  rep.dcc = rd.verdict;
  if (rd.verdict == Verdict::Fail) rep.overall = false;
  for (auto& w : rd.witnesses) rep.witnesses.push_back(std::move(w));
  return rep;
}

}  // namespace lg
