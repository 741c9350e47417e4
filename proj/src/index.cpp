#include "nilfix/index.hpp"

#include "nilfix/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nilfix {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double oriented_angle(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
    const double cross = u.x() * v.y() - u.y() * v.x();
    const double dot = u.dot(v);
    return std::atan2(cross, dot);
}

struct WindingState {
    const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>* f = nullptr;
    const OrientedCurve* curve = nullptr;
    const WindingOptions* opts = nullptr;
    double total = 0.0;
    double min_mod = std::numeric_limits<double>::infinity();
    double max_step = 0.0;
    long samples = 0;

    Eigen::Vector2d probe(double t) {
        const Eigen::Vector2d v = (*f)(curve->point_at(t));
        ++samples;
        const double m = v.norm();
        min_mod = std::min(min_mod, m);
        if (m < opts->modulus_floor) {
            std::ostringstream os;
            os << "boundary modulus " << m << " below floor " << opts->modulus_floor << " at t=" << t
               << ": curve is not isolating";
            throw BoundaryZeroError(os.str());
        }
        return v;
    }

    void segment(double t0, const Eigen::Vector2d& v0, double t1, const Eigen::Vector2d& v1, int depth) {
        const double delta = oriented_angle(v0, v1);
        if (std::abs(delta) < kHalfPi) {
            total += delta;
            max_step = std::max(max_step, std::abs(delta));
            return;
        }
        if (depth >= opts->max_bisection_depth || samples >= opts->max_samples) {
            throw BudgetError("winding refinement budget exhausted");
        }
        const double tm = 0.5 * (t0 + t1);
        const Eigen::Vector2d vm = probe(tm);
        segment(t0, v0, tm, vm, depth + 1);
        segment(tm, vm, t1, v1, depth + 1);
    }
};

} // namespace

IndexResult winding_number_fn(const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& f,
                              const OrientedCurve& curve, const WindingOptions& opts) {
    WindingState st;
    st.f = &f;
    st.curve = &curve;
    st.opts = &opts;

    const int n = std::max(4, opts.initial_samples);
    std::vector<Eigen::Vector2d> vals;
    vals.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
        vals.push_back(st.probe(static_cast<double>(i) / n));
    }
    vals.push_back(vals.front()); // closed curve

    for (int i = 0; i < n; ++i) {
        st.segment(static_cast<double>(i) / n, vals[static_cast<std::size_t>(i)],
                   static_cast<double>(i + 1) / n, vals[static_cast<std::size_t>(i) + 1], 0);
    }

    const double turns = st.total / (2.0 * std::numbers::pi);
    IndexResult res;
    res.value = static_cast<int>(std::lround(turns));
    res.min_modulus_on_boundary = st.min_mod;
    res.max_angle_step = st.max_step;
    res.samples_used = st.samples;
    res.certified = std::abs(turns - res.value) < 0.25 && st.max_step < kHalfPi &&
                    st.min_mod >= opts.modulus_floor;
    return res;
}

IndexResult winding_number(const PolyVectorField& field, const std::string& chart,
                           const OrientedCurve& curve, const WindingOptions& opts) {
    return winding_number_fn([&](const Eigen::Vector2d& p) { return field.eval(chart, p); }, curve, opts);
}

IndexResult block_index(const PolyVectorField& field, const Region& region, const WindingOptions& opts) {
    IndexResult total = winding_number(field, region.chart(), region.outer(), opts);
    for (const auto& hole : region.holes()) {
        const IndexResult h = winding_number(field, region.chart(), hole, opts);
        total.value += h.value;
        total.min_modulus_on_boundary = std::min(total.min_modulus_on_boundary, h.min_modulus_on_boundary);
        total.max_angle_step = std::max(total.max_angle_step, h.max_angle_step);
        total.samples_used += h.samples_used;
        total.certified = total.certified && h.certified;
    }
    return total;
}

int ph_index_at_zero(const PolyVectorField& field, const std::string& chart, const ZeroCluster& cluster,
                     const WindingOptions& opts) {
    if (cluster.degenerate) {
        throw ValidationError("Poincare-Hopf sign formula needs a nondegenerate zero; "
                              "use the boundary degree on the isolation circle instead");
    }
    const double det = cluster.jacobian(0, 0) * cluster.jacobian(1, 1) -
                       cluster.jacobian(0, 1) * cluster.jacobian(1, 0);
    const int sign = det > 0.0 ? 1 : -1;
    const OrientedCurve circle{Circle{cluster.location, cluster.radius}, true};
    const IndexResult w = winding_number(field, chart, circle, opts);
    if (!w.certified || w.value != sign) {
        std::ostringstream os;
        os << "determinant sign " << sign << " disagrees with boundary winding " << w.value
           << " on the isolation circle";
        throw CertificationError(os.str());
    }
    return sign;
}

int map_fixed_point_index(std::complex<double> l1, std::complex<double> l2, double tol) {
    const std::complex<double> eigs[2] = {l1, l2};
    std::vector<double> real_gt_one;
    for (const auto& l : eigs) {
        const bool real = std::abs(l.imag()) <= tol * std::max(1.0, std::abs(l));
        if (!real) continue;
        if (std::abs(l.real() - 1.0) <= tol) {
            throw ValidationError("eigenvalue within tolerance of 1: the time-t map is degenerate here");
        }
        if (l.real() > 1.0) real_gt_one.push_back(l.real());
    }
    int nu = 0;
    if (real_gt_one.size() == 1) {
        nu = 1;
    } else if (real_gt_one.size() == 2) {
        const double scale = std::max({1.0, std::abs(real_gt_one[0]), std::abs(real_gt_one[1])});
        nu = (std::abs(real_gt_one[0] - real_gt_one[1]) <= tol * scale) ? 1 : 2;
    }
    return (nu % 2 == 0) ? 1 : -1;
}

namespace {

int chart_zero_index_sum(const PolyVectorField& field, const std::string& chart,
                         const std::vector<ZeroCluster>& zeros, const TotalIndexOptions& opts) {
    int sum = 0;
    for (const auto& z : zeros) {
        const OrientedCurve circle{Circle{z.location, z.radius}, true};
        const IndexResult w = winding_number(field, chart, circle, opts.winding);
        if (!w.certified) {
            throw CertificationError("uncertified per-zero winding while summing a closed-surface index");
        }
        sum += w.value;
    }
    return sum;
}

int sphere_total_index(const PolyVectorField& field, const TotalIndexOptions& opts) {
    double rho = opts.assignment_radius;
    std::string failure;
    for (int attempt = 0; attempt <= opts.max_radius_retries; ++attempt, rho *= 1.125) {
        const double margin = 1.0 + 1.0 / 16.0;
        const Region rn("n", Circle{Eigen::Vector2d::Zero(), rho * margin});
        const Region rs("s", Circle{Eigen::Vector2d::Zero(), (1.0 / rho) * margin});
        const auto zn = find_zeros_system(FieldSystem({field.chart("n")}), rn, opts.zeros);
        const auto zs = find_zeros_system(FieldSystem({field.chart("s")}), rs, opts.zeros);

        bool near_split = false;
        for (const auto& z : zn) {
            if (std::abs(z.location.norm() - rho) <= opts.assignment_tol * std::max(1.0, rho)) near_split = true;
        }
        for (const auto& z : zs) {
            if (std::abs(z.location.norm() - 1.0 / rho) <= opts.assignment_tol * std::max(1.0, 1.0 / rho)) {
                near_split = true;
            }
        }
        if (near_split) {
            failure = "a zero sits on the chart-assignment circle";
            continue;
        }

        std::vector<ZeroCluster> keep_n, keep_s;
        for (const auto& z : zn) {
            if (z.location.norm() < rho) keep_n.push_back(z);
        }
        for (const auto& z : zs) {
            if (z.location.norm() <= 1.0 / rho) keep_s.push_back(z);
        }
        return chart_zero_index_sum(field, "n", keep_n, opts) +
               chart_zero_index_sum(field, "s", keep_s, opts);
    }
    throw CertificationError("sphere chart assignment failed: " + failure);
}

int torus_total_index(const PolyVectorField& field, const TotalIndexOptions& opts) {
    const double m = 1.0 / 8.0;
    const Polygon square{{{-m, -m}, {1.0 + m, -m}, {1.0 + m, 1.0 + m}, {-m, 1.0 + m}}};
    const Region region("fund", square);
    const auto zeros = find_zeros_system(FieldSystem({field.chart("fund")}), region, opts.zeros);

    std::vector<ZeroCluster> unique;
    for (const auto& z : zeros) {
        const Eigen::Vector2d w = torus_wrap(z.location);
        bool dup = false;
        for (const auto& u : unique) {
            const Eigen::Vector2d uw = torus_wrap(u.location);
            Eigen::Vector2d d = (w - uw).cwiseAbs();
            d.x() = std::min(d.x(), 1.0 - d.x());
            d.y() = std::min(d.y(), 1.0 - d.y());
            if (d.norm() <= opts.zeros.merge_dist * 10.0) {
                dup = true;
                break;
            }
        }
        if (!dup) unique.push_back(z);
    }
    return chart_zero_index_sum(field, "fund", unique, opts);
}

} // namespace

int total_index_closed_surface(const PolyVectorField& field, const TotalIndexOptions& opts) {
    int total = 0;
    switch (field.surface().kind) {
    case SurfaceKind::Sphere: total = sphere_total_index(field, opts); break;
    case SurfaceKind::Torus: total = torus_total_index(field, opts); break;
    case SurfaceKind::Plane:
        throw ValidationError("total index over a closed surface needs a sphere or torus field");
    }
    const int chi = euler_characteristic(field.surface());
    if (total != chi) {
        std::ostringstream os;
        os << "total index " << total << " does not match the Euler characteristic " << chi
           << "; some zeros were likely missed";
        throw CertificationError(os.str());
    }
    return total;
}

} // namespace nilfix
