#include "lg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lg {

namespace {

// Arc coordinate of the boundary point nearest to p: project onto every side,
// keep the first strict minimizer in side order (deterministic at ties).
double nearest_boundary_arc(const ConvexPolygon& poly, Point2 p) {
  double best_d2 = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (int i = 0; i < poly.num_sides(); ++i) {
    const Point2 a = poly.side_start(i);
    const Point2 b = poly.side_end(i);
    const Point2 d = b - a;
    const double len2 = d.x * d.x + d.y * d.y;
    double t = ((p.x - a.x) * d.x + (p.y - a.y) * d.y) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const Point2 c = a + t * d;
    const double d2 = (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_s = poly.vertex_arc(i) + t * poly.side_length(i);
    }
  }
  return poly.wrap(best_s);
}

}  // namespace

GridProblem rasterize(const ConvexPolygon& poly, const BoundaryDatum& f, int N) {
  if (N < 16) fail(Err::ResolutionTooLow, "oracle raster needs N >= 16");

  GridProblem gp;
  gp.N = N;
  gp.domain = f.polygon_ptr();
  double x1 = poly.vertices()[0].x, y1 = poly.vertices()[0].y;
  gp.x0 = x1;
  gp.y0 = y1;
  for (const Point2& v : poly.vertices()) {
    gp.x0 = std::min(gp.x0, v.x);
    gp.y0 = std::min(gp.y0, v.y);
    x1 = std::max(x1, v.x);
    y1 = std::max(y1, v.y);
  }
  gp.h = std::max(x1 - gp.x0, y1 - gp.y0) / N;

  for (int i = 0; i < poly.num_sides(); ++i)
    if (poly.side_length(i) < 2.0 * gp.h)
      fail(Err::ResolutionTooLow,
           "side " + std::to_string(i) + " spans fewer than two cells at N = " +
               std::to_string(N));
  if (poly.boundary_distance(poly.centroid()) < 2.0 * gp.h)
    fail(Err::ResolutionTooLow, "domain is thinner than four cells across");

  const std::size_t cells = std::size_t(N) * std::size_t(N);
  gp.mask.assign(cells, false);
  gp.ring.assign(cells, false);
  gp.ring_values.assign(cells, 0.0);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      gp.mask[gp.idx(i, j)] = poly.strictly_contains(gp.center(i, j));

  auto masked = [&](int i, int j) {
    return i >= 0 && i < N && j >= 0 && j < N && gp.mask[gp.idx(i, j)];
  };
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      if (!gp.mask[gp.idx(i, j)]) continue;
      if (masked(i - 1, j) && masked(i + 1, j) && masked(i, j - 1) && masked(i, j + 1)) continue;
      gp.ring[gp.idx(i, j)] = true;
      gp.ring_values[gp.idx(i, j)] = f.value(nearest_boundary_arc(poly, gp.center(i, j)));
    }
  }
  return gp;
}

GridField tv_minimize(const GridProblem& gp, int max_iter, double tol) {
  const int N = gp.N;
  const std::size_t cells = std::size_t(N) * std::size_t(N);

  double rmin = std::numeric_limits<double>::infinity(), rmax = -rmin;
  double rsum = 0.0;
  std::size_t rcount = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    if (!gp.ring[c]) continue;
    rmin = std::min(rmin, gp.ring_values[c]);
    rmax = std::max(rmax, gp.ring_values[c]);
    rsum += gp.ring_values[c];
    ++rcount;
  }
  if (rcount == 0) fail(Err::ResolutionTooLow, "raster has no ring cells");
  if (tol < 0.0) tol = 1e-7 * (rmax - rmin);

  GridField out;
  out.N = N;
  out.values.assign(cells, 0.0);
  const double mean = rsum / double(rcount);
  for (std::size_t c = 0; c < cells; ++c)
    if (gp.mask[c]) out.values[c] = gp.ring[c] ? gp.ring_values[c] : mean;

  std::vector<double> ubar = out.values;
  std::vector<double> p1(cells, 0.0), p2(cells, 0.0);
  const double step = 1.0 / std::sqrt(8.0);

  auto at = [&](int i, int j) { return gp.idx(i, j); };
  auto masked = [&](int i, int j) {
    return i >= 0 && i < N && j >= 0 && j < N && gp.mask[at(i, j)];
  };

  std::vector<double>& u = out.values;
  for (int it = 1; it <= max_iter; ++it) {
    // dual ascent on the forward differences, then pointwise ball projection
    for (int j = 0; j < N; ++j) {
      for (int i = 0; i < N; ++i) {
        const std::size_t c = at(i, j);
        if (!gp.mask[c]) continue;
        if (masked(i + 1, j)) p1[c] += step * (ubar[at(i + 1, j)] - ubar[c]);
        if (masked(i, j + 1)) p2[c] += step * (ubar[at(i, j + 1)] - ubar[c]);
        const double nrm = std::hypot(p1[c], p2[c]);
        if (nrm > 1.0) {
          p1[c] /= nrm;
          p2[c] /= nrm;
        }
      }
    }
    // primal descent on free cells, clamped to the ring range
    double max_update = 0.0;
    for (int j = 0; j < N; ++j) {
      for (int i = 0; i < N; ++i) {
        const std::size_t c = at(i, j);
        if (!gp.mask[c] || gp.ring[c]) continue;
        double div = p1[c] + p2[c];
        if (i > 0) div -= p1[at(i - 1, j)];
        if (j > 0) div -= p2[at(i, j - 1)];
        const double prev = u[c];
        const double next = std::clamp(prev + step * div, rmin, rmax);
        u[c] = next;
        ubar[c] = 2.0 * next - prev;
        max_update = std::max(max_update, std::abs(next - prev));
      }
    }
    out.iterations = it;
    out.residual = max_update;
    if (it == 1 || it % 100 == 0) {
      // saddle-point iterates oscillate in primal energy, so checkpoints
      // report the best objective reached so far
      const double e = grid_energy(gp, u);
      out.energy_trace.push_back(out.energy_trace.empty() ? e
                                                          : std::min(e, out.energy_trace.back()));
    }
    if (max_update <= tol) {
      out.converged = true;
      break;
    }
  }
  // terminal checkpoint so the trace always ends at the returned field
  const double e = grid_energy(gp, u);
  out.energy_trace.push_back(out.energy_trace.empty() ? e
                                                      : std::min(e, out.energy_trace.back()));
  return out;
}

double grid_energy(const GridProblem& gp, const std::vector<double>& values) {
  const int N = gp.N;
  auto masked = [&](int i, int j) {
    return i >= 0 && i < N && j >= 0 && j < N && gp.mask[gp.idx(i, j)];
  };
  double e = 0.0;
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      if (!gp.mask[gp.idx(i, j)]) continue;
      const double v = values[gp.idx(i, j)];
      const double gx = masked(i + 1, j) ? values[gp.idx(i + 1, j)] - v : 0.0;
      const double gy = masked(i, j + 1) ? values[gp.idx(i, j + 1)] - v : 0.0;
      e += std::hypot(gx, gy);
    }
  }
  return gp.h * e;
}

OracleComparison compare(const SolutionField& u, const GridField& v, const GridProblem& gp) {
  const int N = gp.N;
  const double band = 3.0 * gp.h;

  // mark cells within the interface band by rasterizing each chord's
  // inflated bounding box instead of scanning every chord per cell
  std::vector<bool> banded(std::size_t(N) * std::size_t(N), false);
  auto cell_range = [&](double lo, double hi, double origin) {
    const int a = int(std::floor((lo - origin) / gp.h - 0.5));
    const int b = int(std::ceil((hi - origin) / gp.h - 0.5));
    return std::pair<int, int>{std::max(a, 0), std::min(b, N - 1)};
  };
  for (const auto& level_chords : u.chords.chords_at) {
    for (const Chord& ch : level_chords) {
      const auto [i0, i1] = cell_range(std::min(ch.p.x, ch.q.x) - band,
                                       std::max(ch.p.x, ch.q.x) + band, gp.x0);
      const auto [j0, j1] = cell_range(std::min(ch.p.y, ch.q.y) - band,
                                       std::max(ch.p.y, ch.q.y) + band, gp.y0);
      for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) {
          const std::size_t c = gp.idx(i, j);
          if (!banded[c] && point_segment_distance(gp.center(i, j), ch.p, ch.q) < band)
            banded[c] = true;
        }
    }
  }

  OracleComparison out;
  double acc = 0.0;
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      const std::size_t c = gp.idx(i, j);
      if (!gp.mask[c] || gp.ring[c]) continue;
      const double diff = std::abs(evaluate(u, gp.center(i, j)) - v.values[c]);
      acc += diff;
      ++out.cells;
      if (banded[c])
        ++out.band_cells;
      else
        out.sup_off_band = std::max(out.sup_off_band, diff);
    }
  }
  out.l1 = gp.h * gp.h * acc;
  return out;
}

}  // namespace lg
