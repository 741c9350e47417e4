#include "nilfix/region.hpp"

#include "nilfix/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nilfix {

namespace {

double polygon_signed_area(const std::vector<Eigen::Vector2d>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        a += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * a;
}

double segment_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& p) {
    const Eigen::Vector2d d = b - a;
    const double len2 = d.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return (p - (a + t * d)).norm();
}

bool segments_intersect(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                        const Eigen::Vector2d& d) {
    auto orient = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q, const Eigen::Vector2d& r) {
        const double v = (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
        return (v > 0.0) - (v < 0.0);
    };
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    return false; // collinear touching counts as valid input
}

bool polygon_contains(const std::vector<Eigen::Vector2d>& v, const Eigen::Vector2d& p) {
    bool inside = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        const bool cross = (v[i].y() > p.y()) != (v[j].y() > p.y());
        if (cross) {
            const double xint = v[j].x() + (v[i].x() - v[j].x()) * (p.y() - v[j].y()) / (v[i].y() - v[j].y());
            if (p.x() < xint) inside = !inside;
        }
    }
    return inside;
}

void check_polygon_simple(const Polygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 3) throw ValidationError("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // skip adjacent edges (shared vertex)
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
                throw ValidationError("polygon boundary self-intersects");
            }
        }
    }
}

} // namespace

bool natural_ccw(const CurveGeometry& g) {
    if (std::holds_alternative<Circle>(g)) return true;
    return polygon_signed_area(std::get<Polygon>(g).vertices) > 0.0;
}

Eigen::Vector2d OrientedCurve::point_at(double t) const {
    const bool reverse = (ccw != natural_ccw(geometry));
    const double s = reverse ? 1.0 - t : t;
    if (std::holds_alternative<Circle>(geometry)) {
        const auto& c = std::get<Circle>(geometry);
        const double a = 2.0 * std::numbers::pi * s;
        return c.center + c.radius * Eigen::Vector2d(std::cos(a), std::sin(a));
    }
    const auto& poly = std::get<Polygon>(geometry).vertices;
    const std::size_t n = poly.size();
    const double u = s - std::floor(s);
    const double scaled = u * static_cast<double>(n);
    auto k = static_cast<std::size_t>(scaled);
    if (k >= n) k = n - 1;
    const double frac = scaled - static_cast<double>(k);
    const auto& a = poly[k];
    const auto& b = poly[(k + 1) % n];
    return a + frac * (b - a);
}

double OrientedCurve::signed_area() const {
    double a;
    if (std::holds_alternative<Circle>(geometry)) {
        const auto& c = std::get<Circle>(geometry);
        a = std::numbers::pi * c.radius * c.radius;
    } else {
        a = std::abs(polygon_signed_area(std::get<Polygon>(geometry).vertices));
    }
    return ccw ? a : -a;
}

bool geometry_contains(const CurveGeometry& g, const Eigen::Vector2d& p) {
    if (std::holds_alternative<Circle>(g)) {
        const auto& c = std::get<Circle>(g);
        return (p - c.center).norm() < c.radius;
    }
    return polygon_contains(std::get<Polygon>(g).vertices, p);
}

BoundingBox geometry_bbox(const CurveGeometry& g) {
    if (std::holds_alternative<Circle>(g)) {
        const auto& c = std::get<Circle>(g);
        return {c.center - Eigen::Vector2d(c.radius, c.radius), c.center + Eigen::Vector2d(c.radius, c.radius)};
    }
    const auto& v = std::get<Polygon>(g).vertices;
    Eigen::Vector2d lo = v.front(), hi = v.front();
    for (const auto& p : v) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return {lo, hi};
}

double geometry_distance(const CurveGeometry& g, const Eigen::Vector2d& p) {
    if (std::holds_alternative<Circle>(g)) {
        const auto& c = std::get<Circle>(g);
        return std::abs((p - c.center).norm() - c.radius);
    }
    const auto& v = std::get<Polygon>(g).vertices;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        best = std::min(best, segment_distance(v[i], v[(i + 1) % v.size()], p));
    }
    return best;
}

Region::Region(std::string chart, CurveGeometry outer, std::vector<CurveGeometry> holes,
               const RegionOptions& opts)
    : chart_(std::move(chart)) {
    if (std::holds_alternative<Circle>(outer)) {
        if (std::get<Circle>(outer).radius <= 0.0) throw ValidationError("circle radius must be positive");
    } else {
        check_polygon_simple(std::get<Polygon>(outer));
    }
    // orientation normalization by signed area: outer ccw, holes cw
    outer_ = OrientedCurve{std::move(outer), true};

    for (auto& h : holes) {
        if (std::holds_alternative<Circle>(h)) {
            if (std::get<Circle>(h).radius <= 0.0) throw ValidationError("circle radius must be positive");
        } else {
            check_polygon_simple(std::get<Polygon>(h));
        }
        holes_.push_back(OrientedCurve{std::move(h), false});
    }

    // sampled validation
    const int n = opts.validation_samples;
    auto samples = [&](const OrientedCurve& c) {
        std::vector<Eigen::Vector2d> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pts.push_back(c.point_at(static_cast<double>(i) / n));
        return pts;
    };
    const auto outer_pts = samples(outer_);
    std::vector<std::vector<Eigen::Vector2d>> hole_pts;
    for (const auto& h : holes_) hole_pts.push_back(samples(h));

    for (std::size_t hi = 0; hi < holes_.size(); ++hi) {
        for (const auto& p : hole_pts[hi]) {
            if (!geometry_contains(outer_.geometry, p)) {
                throw ValidationError("hole boundary leaves the outer boundary");
            }
            if (geometry_distance(outer_.geometry, p) < opts.min_separation) {
                throw ValidationError("hole boundary touches the outer boundary");
            }
        }
        for (std::size_t hj = 0; hj < holes_.size(); ++hj) {
            if (hi == hj) continue;
            for (const auto& p : hole_pts[hi]) {
                if (geometry_contains(holes_[hj].geometry, p) ||
                    geometry_distance(holes_[hj].geometry, p) < opts.min_separation) {
                    throw ValidationError("hole boundaries overlap");
                }
            }
        }
    }
}

bool Region::contains(const Eigen::Vector2d& p) const {
    if (!geometry_contains(outer_.geometry, p)) return false;
    for (const auto& h : holes_) {
        if (geometry_contains(h.geometry, p)) return false;
    }
    return true;
}

BoundingBox Region::bbox() const {
    return geometry_bbox(outer_.geometry);
}

} // namespace nilfix
