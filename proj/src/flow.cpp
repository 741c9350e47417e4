#include "nilfix/flow.hpp"

#include "nilfix/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nilfix {

namespace {

// Dormand-Prince 5(4) coefficients
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784, B6 = 11.0 / 84;
// difference between the 5th and 4th order weights
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600;
constexpr double E3 = 500.0 / 1113 - 7571.0 / 16695;
constexpr double E4 = 125.0 / 192 - 393.0 / 640;
constexpr double E5 = -2187.0 / 6784 + 92097.0 / 339200;
constexpr double E6 = 11.0 / 84 - 187.0 / 2100;
constexpr double E7 = -1.0 / 40;

} // namespace

FlowMap::FlowMap(const PolyVectorField& f, double time, IntegratorOptions o)
    : field(&f), t(time), opts(o) {
    if (!std::isfinite(t)) throw ValidationError("flow time must be finite");
    if (opts.rel_tol <= 0.0 || opts.abs_tol <= 0.0) {
        throw ValidationError("integrator tolerances must be positive");
    }
    if (opts.max_step <= 0.0) throw ValidationError("max_step must be positive");
}

AdvanceResult advance(const FlowMap& flow, const std::string& chart, const Eigen::Vector2d& p0) {
    const PolyVectorField& field = *flow.field;
    field.chart(chart); // validate the id
    AdvanceResult res;
    res.p = p0;
    res.chart = chart;
    res.t_reached = 0.0;
    if (flow.t == 0.0) return res;

    const IntegratorOptions& o = flow.opts;
    const SurfaceKind kind = field.surface().kind;
    const double dir = flow.t > 0.0 ? 1.0 : -1.0;
    const double t_end = std::abs(flow.t);

    double t_cur = 0.0;
    double h = std::min(o.max_step, t_end);
    Eigen::Vector2d y = p0;
    std::string cur = chart;
    long steps = 0;

    auto f = [&](const Eigen::Vector2d& q) { return dir * field.eval(cur, q); };

    while (t_cur < t_end) {
        if (++steps > o.max_steps) throw BudgetError("integrator step budget exhausted");
        h = std::min(h, t_end - t_cur);
        if (h < 1e-14 * std::max(1.0, t_end)) {
            throw BudgetError("integrator step size underflow");
        }

        const Eigen::Vector2d k1 = f(y);
        const Eigen::Vector2d k2 = f(y + h * (A21 * k1));
        const Eigen::Vector2d k3 = f(y + h * (A31 * k1 + A32 * k2));
        const Eigen::Vector2d k4 = f(y + h * (A41 * k1 + A42 * k2 + A43 * k3));
        const Eigen::Vector2d k5 = f(y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
        const Eigen::Vector2d k6 = f(y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
        const Eigen::Vector2d y5 = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
        const Eigen::Vector2d k7 = f(y5);
        const Eigen::Vector2d err_vec = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double sc = o.abs_tol + o.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double e = err_vec[i] / sc;
            err += e * e;
        }
        err = std::sqrt(err / 2.0);

        if (err <= 1.0) {
            t_cur += h;
            y = y5;
            switch (kind) {
            case SurfaceKind::Plane:
                if (std::abs(y.x()) > o.working_halfwidth || std::abs(y.y()) > o.working_halfwidth) {
                    res.escaped = true;
                    res.p = y;
                    res.chart = cur;
                    res.t_reached = dir * t_cur;
                    return res;
                }
                break;
            case SurfaceKind::Sphere:
                if (y.norm() > o.chart_switch_radius) {
                    y = sphere_transition(y);
                    cur = (cur == "n") ? "s" : "n";
                }
                break;
            case SurfaceKind::Torus: y = torus_wrap(y); break;
            }
        }
        const double factor = (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h = std::min(h * factor, o.max_step);
    }

    res.p = y;
    res.chart = cur;
    res.t_reached = flow.t;
    return res;
}

namespace {

Eigen::Vector2d displacement_at(const FlowMap& flow, const std::string& chart, const Eigen::Vector2d& p) {
    const AdvanceResult r = advance(flow, chart, p);
    if (r.escaped) {
        throw BoundaryZeroError("trajectory escaped the working box; the time-t map is undefined on "
                                "part of the boundary");
    }
    Eigen::Vector2d q = r.p;
    if (r.chart != chart) {
        if (q.norm() < 1e-12) {
            throw BoundaryZeroError("trajectory reached the opposite chart origin; displacement is "
                                    "undefined in this chart");
        }
        q = sphere_transition(q);
    }
    return q - p;
}

} // namespace

IndexResult flow_displacement_index(const PolyVectorField& field, const Region& region, double t,
                                    const FlowIndexOptions& opts) {
    const FlowMap flow(field, t, opts.integ);
    WindingOptions w = opts.winding;
    w.modulus_floor =
        opts.displacement_floor >= 0.0 ? opts.displacement_floor : opts.winding.modulus_floor * std::abs(t);
    auto disp = [&](const Eigen::Vector2d& p) { return displacement_at(flow, region.chart(), p); };
    IndexResult total = winding_number_fn(disp, region.outer(), w);
    for (const auto& hole : region.holes()) {
        const IndexResult h = winding_number_fn(disp, hole, w);
        total.value += h.value;
        total.min_modulus_on_boundary = std::min(total.min_modulus_on_boundary, h.min_modulus_on_boundary);
        total.max_angle_step = std::max(total.max_angle_step, h.max_angle_step);
        total.samples_used += h.samples_used;
        total.certified = total.certified && h.certified;
    }
    return total;
}

SmallTimeProbeReport small_time_probe(const PolyVectorField& field, const Region& region,
                                      const std::vector<double>& times, const FlowIndexOptions& opts) {
    SmallTimeProbeReport report;
    report.block = block_index(field, region, opts.winding);
    bool prefix_alive = true;
    for (const double t : times) {
        SmallTimeEntry e;
        e.t = t;
        try {
            e.index = flow_displacement_index(field, region, t, opts);
            e.ok = true;
        } catch (const std::exception& ex) {
            e.ok = false;
            e.error = ex.what();
        }
        const bool matches = e.ok && e.index.certified && e.index.value == report.block.value;
        if (prefix_alive && matches) {
            ++report.stable_prefix;
        } else {
            prefix_alive = false;
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

PerturbationReport perturbation_check(const PolyVectorField& field,
                                      const std::vector<PolyVectorField>& perturbed,
                                      const Region& region, double t, const FlowIndexOptions& opts) {
    PerturbationReport report;
    report.t = t;
    report.flow_index = flow_displacement_index(field, region, t, opts);
    for (const auto& pf : perturbed) {
        PerturbationEntry e;
        try {
            e.index = block_index(pf, region, opts.winding);
            e.ok = true;
        } catch (const std::exception& ex) {
            e.ok = false;
            e.error = ex.what();
        }
        report.entries.push_back(std::move(e));
    }
    for (std::size_t k = 0; k < report.entries.size(); ++k) {
        if (report.entries[k].ok && report.entries[k].index.certified) {
            report.first_certified = static_cast<int>(k);
            break;
        }
    }
    report.all_match_beyond = report.first_certified >= 0;
    if (report.first_certified >= 0) {
        for (std::size_t k = static_cast<std::size_t>(report.first_certified); k < report.entries.size(); ++k) {
            const auto& e = report.entries[k];
            if (!(e.ok && e.index.certified && e.index.value == report.flow_index.value)) {
                report.all_match_beyond = false;
            }
        }
    }
    return report;
}

} // namespace nilfix
