#pragma once

#include "nilfix/region.hpp"
#include "nilfix/vector_field.hpp"
#include "nilfix/zeros.hpp"

#include <complex>
#include <functional>

namespace nilfix {

/// Integer index with its certification payload.  certified implies the
/// maximal accepted angular increment stayed below pi/2, the boundary
/// modulus stayed above the configured floor, and the accumulated angle
/// landed within 0.25 turns of an integer.
struct IndexResult {
    int value = 0;
    double min_modulus_on_boundary = 0.0;
    double max_angle_step = 0.0;
    long samples_used = 0;
    bool certified = false;
};

struct WindingOptions {
    double modulus_floor = 1e-9;
    int initial_samples = 64;
    long max_samples = 2000000;
    int max_bisection_depth = 48;
};

/// Total angular variation of f along the curve, divided by 2*pi.  The
/// parameter grid is bisected until every consecutive angular increment is
/// below pi/2.  Throws BoundaryZeroError when |f| dips under the modulus
/// floor anywhere on the curve, BudgetError when refinement cannot finish.
IndexResult winding_number_fn(const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& f,
                              const OrientedCurve& curve, const WindingOptions& opts = {});

IndexResult winding_number(const PolyVectorField& field, const std::string& chart,
                           const OrientedCurve& curve, const WindingOptions& opts = {});

/// Boundary degree over the region: winding along the outer boundary plus
/// windings along the (clockwise) hole boundaries.
IndexResult block_index(const PolyVectorField& field, const Region& region,
                        const WindingOptions& opts = {});

/// Index of a nondegenerate zero: the sign of det J, cross-checked against
/// the winding number on the cluster's certified isolation circle.
int ph_index_at_zero(const PolyVectorField& field, const std::string& chart, const ZeroCluster& cluster,
                     const WindingOptions& opts = {});

/// Fixed-point index of a C^1 map at a hyperbolic fixed point, from the
/// eigenvalues of its derivative: (-1)^nu with nu the number of distinct
/// real eigenvalues > 1; complex eigenvalues contribute nothing.  Throws
/// when a real eigenvalue sits within tol of 1 (degenerate fixed point).
int map_fixed_point_index(std::complex<double> l1, std::complex<double> l2, double tol = 1e-9);

struct TotalIndexOptions {
    FindZerosOptions zeros;
    WindingOptions winding;
    double assignment_radius = 1.0; // sphere chart split circle
    double assignment_tol = 1e-9;
    int max_radius_retries = 3;
};

/// Sum of per-zero indices over all charts of a closed surface, with the
/// chart overlap deduplicated; the result is checked against the Euler
/// characteristic.
int total_index_closed_surface(const PolyVectorField& field, const TotalIndexOptions& opts = {});

} // namespace nilfix
