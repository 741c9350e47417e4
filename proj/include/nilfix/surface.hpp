#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace nilfix {

enum class SurfaceKind { Plane, Sphere, Torus };

/// Plane: one chart "main" covering R^2.  Sphere: two stereographic charts
/// "n" and "s" related by (u,v) -> (u,v)/(u^2+v^2), an involution away from
/// the origin.  Torus: one fundamental-square chart "fund" with period-1
/// wraparound in both coordinates.
struct Surface {
    SurfaceKind kind = SurfaceKind::Plane;

    static Surface plane() { return {SurfaceKind::Plane}; }
    static Surface sphere() { return {SurfaceKind::Sphere}; }
    static Surface torus() { return {SurfaceKind::Torus}; }

    std::vector<std::string> charts() const;
    std::string default_chart() const;
    bool has_chart(const std::string& id) const;

    bool operator==(const Surface& o) const { return kind == o.kind; }
};

SurfaceKind surface_kind_from_string(const std::string& s);
std::string to_string(SurfaceKind k);

/// Stereographic chart transition of the sphere.
Eigen::Vector2d sphere_transition(const Eigen::Vector2d& p);

/// Jacobian of the chart transition at p.
Eigen::Matrix2d sphere_transition_jacobian(const Eigen::Vector2d& p);

/// Wraps a torus chart point into the fundamental square [0,1)^2.
Eigen::Vector2d torus_wrap(const Eigen::Vector2d& p);

/// Euler characteristic of the closed surface (plane counts as a disk).
int euler_characteristic(const Surface& s);

} // namespace nilfix
