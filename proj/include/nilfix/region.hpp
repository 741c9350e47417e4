#pragma once

#include <Eigen/Dense>

#include <string>
#include <variant>
#include <vector>

namespace nilfix {

struct Circle {
    Eigen::Vector2d center;
    double radius;
};

/// Closed polygon; the edge from the last vertex back to the first is
/// implicit.
struct Polygon {
    std::vector<Eigen::Vector2d> vertices;
};

using CurveGeometry = std::variant<Circle, Polygon>;

/// Closed curve with a traversal orientation; ccw states whether point_at
/// walks counterclockwise.  point_at traverses the curve once over [0, 1),
/// reversing the geometry's natural direction when needed.
struct OrientedCurve {
    CurveGeometry geometry;
    bool ccw = true;

    Eigen::Vector2d point_at(double t) const;
    double signed_area() const; // positive iff ccw
    OrientedCurve reversed() const { return {geometry, !ccw}; }
};

/// True when the geometry's own parameterization (circle angle, polygon
/// vertex order) runs counterclockwise.
bool natural_ccw(const CurveGeometry& g);

struct BoundingBox {
    Eigen::Vector2d lo;
    Eigen::Vector2d hi;
};

struct RegionOptions {
    int validation_samples = 256;
    double min_separation = 1e-9;
};

/// Planar region in one chart: outer boundary (normalized counterclockwise)
/// minus the interiors of the holes (normalized clockwise).  Construction
/// validates that hole curves lie strictly inside the outer curve and that
/// all curves are pairwise disjoint, by sampling at the configured
/// resolution; polygons additionally get an exact self-intersection check.
class Region {
public:
    Region(std::string chart, CurveGeometry outer, std::vector<CurveGeometry> holes = {},
           const RegionOptions& opts = {});

    const std::string& chart() const { return chart_; }
    const OrientedCurve& outer() const { return outer_; }
    const std::vector<OrientedCurve>& holes() const { return holes_; }

    bool contains(const Eigen::Vector2d& p) const;
    BoundingBox bbox() const;

    /// 1 - number of holes; the plane-region case of the Euler characteristic.
    int euler_characteristic() const { return 1 - static_cast<int>(holes_.size()); }

private:
    std::string chart_;
    OrientedCurve outer_;
    std::vector<OrientedCurve> holes_;
};

/// Point-in-geometry test (boundary points give an unspecified answer).
bool geometry_contains(const CurveGeometry& g, const Eigen::Vector2d& p);

BoundingBox geometry_bbox(const CurveGeometry& g);

/// Distance from p to the curve (exact for circles, edgewise for polygons).
double geometry_distance(const CurveGeometry& g, const Eigen::Vector2d& p);

} // namespace nilfix
