#pragma once

#include "lg/boundary.hpp"
#include "lg/geometry.hpp"

namespace lg {
namespace fixtures {

/// Unit square with vertices (0,0), (1,0), (1,1), (0,1); perimeter 4.
ConvexPolygon unit_square();

/// Constant datum c on the square.
BoundaryDatum f_const(double c);

/// Boundary trace of (x,y) -> x on the square: bottom f=s, right 1, top 3-s, left 0.
BoundaryDatum f_x();

/// Indicator-type datum: 0 on the lower half of the boundary, 1 on the upper,
/// jumps at (1,1/2) and (0,1/2) with representative 1/2.
BoundaryDatum f_jump();

/// One max hump at value 1 on the bottom side [0.1, 0.9], ramps of slope 10
/// beside it, slope-5 ramps up the right and left sides; solution has corner
/// formula min(1, 10x + 5y) near (0,0).
BoundaryDatum f_hump();

/// Hump variant whose off-hump level set shrinks to the far corner (0,1);
/// the hump-distance inequality fails there.
BoundaryDatum f_hump_far();

/// Two humps at distinct extremal values on the bottom of the cascade
/// truncation at depth 2; fully admissible.
BoundaryDatum f_twohump();

/// Cascade geometry: truncation polygon at depth K and the matching datum
/// (humps H_k on the bottom at alternating extremal values e_k, monotone
/// chain sides with matching companion breakpoints).  f_twohump() == depth 2.
ConvexPolygon cascade_truncation(int K);
BoundaryDatum cascade_datum(int K);

// Admissibility gallery: each datum fails exactly one condition (noted), with
// the others passing or failing only as a documented side effect.
BoundaryDatum gallery_d1();              // jump at a vertex breaks endpoint monotonicity
BoundaryDatum gallery_d2_far();          // = f_hump_far: distance inequality fails
BoundaryDatum gallery_d2_companions();   // nearest level-set point lies on the hump's own side
BoundaryDatum gallery_d3();              // interior jump with no monotone neighborhood
BoundaryDatum gallery_opc();             // two humps with coinciding companion segments
BoundaryDatum gallery_dcc_far();         // dip on the far arc below the hump value
BoundaryDatum gallery_dcc_companion();   // constant approach at a companion point

/// Constant stretch touching one vertex of a side whose remainder is not
/// monotone; extract_humps raises HumpTouchesVertex.
BoundaryDatum hump_touching_vertex();

/// Random convex polygon: hull of 12 points in the unit disk, redrawn until it
/// has 5 to 9 sides, each of length at least 0.1.
ConvexPolygon random_polygon(Rng& rng);

/// Continuous admissible datum on poly, affine in arc length between a global
/// minimum at one vertex (value lo) and a global maximum at another (value
/// hi).  Unimodal, hump-free, and classifiable by construction.
BoundaryDatum random_unimodal_datum(Rng& rng, const ConvexPolygon& poly, double lo, double hi);

}  // namespace fixtures
}  // namespace lg
