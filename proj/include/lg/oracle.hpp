#pragma once

#include <memory>
#include <vector>

#include "lg/boundary.hpp"
#include "lg/geometry.hpp"
#include "lg/solver.hpp"

namespace lg {

/// Raster of a polygonal problem onto an N x N square-cell grid covering the
/// bounding box.  Cells are stored row-major (index j*N + i); cell (i, j) has
/// center (x0 + (i+1/2) h, y0 + (j+1/2) h).  `mask` marks cells whose center
/// lies strictly inside the polygon; `ring` marks masked cells with a
/// 4-neighbor outside the mask.  Ring cells carry the boundary datum sampled
/// (good representative) at the nearest boundary point of the cell center.
struct GridProblem {
  int N = 0;
  double h = 0.0;
  double x0 = 0.0, y0 = 0.0;
  std::vector<bool> mask;
  std::vector<bool> ring;
  std::vector<double> ring_values;  // defined on ring cells, 0 elsewhere
  std::shared_ptr<const ConvexPolygon> domain;

  std::size_t idx(int i, int j) const {
    return std::size_t(j) * std::size_t(N) + std::size_t(i);
  }
  Point2 center(int i, int j) const { return {x0 + (i + 0.5) * h, y0 + (j + 0.5) * h}; }
};

/// Output of the grid TV minimization.  `residual` is the last max-update over
/// free cells; `energy_trace` records, at iteration 1 and every 100th
/// iteration thereafter, the best primal objective h * sum |grad_h u| reached
/// so far (the raw iterate objective oscillates for saddle-point methods, so
/// checkpoints report the non-increasing progress envelope).
struct GridField {
  int N = 0;
  std::vector<double> values;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> energy_trace;
};

/// L1 and banded sup distance between a geometric field and a grid field.
struct OracleComparison {
  double l1 = 0.0;            // h^2 * sum |a - b| over interior cells
  double sup_off_band = 0.0;  // sup over interior cells farther than 3h from every chord
  int cells = 0;              // interior cells compared
  int band_cells = 0;         // interior cells excluded from the sup
};

/// Builds the cell classification and pinned ring values.  Throws
/// ResolutionTooLow when N < 16, when a polygon side is shorter than two
/// cells, or when the centroid sits within two cells of the boundary.
GridProblem rasterize(const ConvexPolygon& poly, const BoundaryDatum& f, int N);

/// First-order primal-dual iteration for min sum h |grad_h u| over the mask
/// with the ring pinned to ring_values: isotropic discrete TV with forward
/// differences and reflecting closure at mask edges, steps tau = sigma =
/// 1/sqrt(8), free cells clamped to the ring value range (box constraint
/// realizing the maximum principle exactly).  Interior cells start at the
/// mean ring value.  Stops when the max update falls to tol (default
/// 1e-7 times the ring value range) or after max_iter sweeps; on the latter
/// the field is returned with converged = false.
GridField tv_minimize(const GridProblem& gp, int max_iter = 20000, double tol = -1.0);

/// Evaluates the geometric field at interior cell centers against the grid
/// field.  The sup excludes cells within 3h of any chord of `u` (the
/// interface band, where pointwise agreement is not expected).
OracleComparison compare(const SolutionField& u, const GridField& v, const GridProblem& gp);

/// Discrete primal objective h * sum_cells |forward difference vector| of the
/// grid field restricted to the mask.
double grid_energy(const GridProblem& gp, const std::vector<double>& values);

}  // namespace lg
