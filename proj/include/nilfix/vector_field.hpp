#pragma once

#include "nilfix/polynomial.hpp"
#include "nilfix/surface.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>

namespace nilfix {

/// One chart's component pair: X = p d/dx + q d/dy.
struct ChartComponents {
    Poly2 p;
    Poly2 q;

    bool operator==(const ChartComponents& o) const { return p == o.p && q == o.q; }
    bool is_zero() const { return p.is_zero() && q.is_zero(); }
};

/// Pushforward of chart components under the stereographic transition
/// (u,v) -> (u,v)/(u^2+v^2).  Throws CertificationError when the result does
/// not simplify to a polynomial pair.  Applying the map twice returns the
/// original components.
ChartComponents transport(const ChartComponents& c);

/// Polynomial vector field on a surface, one component pair per chart.
/// Sphere fields must present consistent components in both charts; the
/// constructor verifies this symbolically (or derives the missing chart).
class PolyVectorField {
public:
    static PolyVectorField on_plane(Poly2 p, Poly2 q);
    static PolyVectorField on_torus(Poly2 p, Poly2 q);
    static PolyVectorField on_sphere(ChartComponents chart_n,
                                     std::optional<ChartComponents> chart_s = std::nullopt);
    static PolyVectorField zero(const Surface& s);

    const Surface& surface() const { return surface_; }
    const ChartComponents& chart(const std::string& id) const;
    bool is_zero() const;

    Eigen::Vector2d eval(const std::string& chart_id, const Eigen::Vector2d& pt) const;
    Eigen::Matrix2d jacobian(const std::string& chart_id, const Eigen::Vector2d& pt) const;

    Rat eval_exact_p(const std::string& chart_id, const Rat& x, const Rat& y) const;
    Rat eval_exact_q(const std::string& chart_id, const Rat& x, const Rat& y) const;

    PolyVectorField operator+(const PolyVectorField& o) const;
    PolyVectorField scaled(const Rat& c) const;

    bool operator==(const PolyVectorField& o) const;

private:
    PolyVectorField(Surface s, std::map<std::string, ChartComponents> charts);
    void rebuild_jacobian_cache();

    Surface surface_;
    std::map<std::string, ChartComponents> charts_;
    std::map<std::string, std::array<Poly2, 4>> jac_; // dp/dx, dp/dy, dq/dx, dq/dy
};

/// Lie bracket of vector fields, [X,Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i),
/// computed symbolically per chart with exact coefficients.
PolyVectorField field_bracket(const PolyVectorField& x, const PolyVectorField& y);

} // namespace nilfix
