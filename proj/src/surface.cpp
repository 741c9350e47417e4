#include "nilfix/surface.hpp"

#include "nilfix/errors.hpp"

#include <cmath>

namespace nilfix {

std::vector<std::string> Surface::charts() const {
    switch (kind) {
    case SurfaceKind::Plane: return {"main"};
    case SurfaceKind::Sphere: return {"n", "s"};
    case SurfaceKind::Torus: return {"fund"};
    }
    return {};
}

std::string Surface::default_chart() const {
    return charts().front();
}

bool Surface::has_chart(const std::string& id) const {
    for (const auto& c : charts())
        if (c == id) return true;
    return false;
}

SurfaceKind surface_kind_from_string(const std::string& s) {
    if (s == "plane") return SurfaceKind::Plane;
    if (s == "sphere") return SurfaceKind::Sphere;
    if (s == "torus") return SurfaceKind::Torus;
    throw ValidationError("unknown surface kind: " + s);
}

std::string to_string(SurfaceKind k) {
    switch (k) {
    case SurfaceKind::Plane: return "plane";
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Torus: return "torus";
    }
    return "?";
}

Eigen::Vector2d sphere_transition(const Eigen::Vector2d& p) {
    const double r2 = p.squaredNorm();
    return p / r2;
}

Eigen::Matrix2d sphere_transition_jacobian(const Eigen::Vector2d& p) {
    const double r2 = p.squaredNorm();
    Eigen::Matrix2d j;
    j(0, 0) = (p.y() * p.y() - p.x() * p.x());
    j(0, 1) = -2.0 * p.x() * p.y();
    j(1, 0) = -2.0 * p.x() * p.y();
    j(1, 1) = (p.x() * p.x() - p.y() * p.y());
    return j / (r2 * r2);
}

Eigen::Vector2d torus_wrap(const Eigen::Vector2d& p) {
    auto wrap1 = [](double x) {
        double w = x - std::floor(x);
        if (w >= 1.0) w = 0.0; // floor rounding guard
        return w;
    };
    return {wrap1(p.x()), wrap1(p.y())};
}

int euler_characteristic(const Surface& s) {
    switch (s.kind) {
    case SurfaceKind::Plane: return 1;
    case SurfaceKind::Sphere: return 2;
    case SurfaceKind::Torus: return 0;
    }
    return 0;
}

} // namespace nilfix
