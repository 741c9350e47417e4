#pragma once

#include "nilfix/region.hpp"
#include "nilfix/vector_field.hpp"

#include <Eigen/Dense>

#include <vector>

namespace nilfix {

struct FindZerosOptions {
    long cell_budget = 100000;
    double min_cell_rel = 1.0 / 4096.0; // candidate threshold relative to the root half-width
    double newton_tol = 1e-12;
    double accept_residual = 1e-10;
    int max_newton_iters = 64;
    double merge_dist = 1e-6;
    double degenerate_tol = 1e-8;
    int circle_cover = 128;
    int max_isolation_shrinks = 14;
};

/// Isolated (cluster of) zero(s) with a certified isolation radius: the
/// system's minimum modulus on the circle of that radius about location is
/// certified positive by the same centered-form excluder used during
/// subdivision.
struct ZeroCluster {
    Eigen::Vector2d location;
    double radius = 0.0;
    Eigen::Matrix2d jacobian = Eigen::Matrix2d::Zero(); // of the primary field
    bool degenerate = false;
    std::vector<double> residuals; // per input field, |X_i(location)|
};

/// A stacked system of component pairs over one chart; a common zero is a
/// point where every member vanishes.
class FieldSystem {
public:
    explicit FieldSystem(std::vector<ChartComponents> members);

    std::size_t size() const { return members_.size(); }
    const ChartComponents& member(std::size_t i) const { return members_[i]; }

    /// Stacked evaluation (2n entries) and Jacobian (2n x 2).
    Eigen::VectorXd eval(const Eigen::Vector2d& p) const;
    Eigen::MatrixXd jacobian(const Eigen::Vector2d& p) const;

    double max_member_norm(const Eigen::Vector2d& p) const;
    std::vector<double> member_norms(const Eigen::Vector2d& p) const;

    /// True when some member is certified nonvanishing on the box of
    /// half-width hw around (cx, cy); exact rational arithmetic.
    bool excludes_box(const Rat& cx, const Rat& cy, const Rat& hw) const;

private:
    std::vector<ChartComponents> members_;
    std::vector<std::array<Poly2, 4>> jac_;
};

/// Certified common zeros of the system inside the region.  Quadtree
/// subdivision discards cells on which some member is certified nonzero;
/// surviving cells at the resolution floor are polished by damped
/// Gauss-Newton, merged, and given certified isolation radii.  Throws
/// BudgetError when cells remain uncertified.
std::vector<ZeroCluster> find_zeros_system(const FieldSystem& sys, const Region& region,
                                           const FindZerosOptions& opts = {});

std::vector<ZeroCluster> find_zeros(const PolyVectorField& field, const Region& region,
                                    const FindZerosOptions& opts = {});

} // namespace nilfix
