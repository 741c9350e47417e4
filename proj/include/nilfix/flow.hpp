#pragma once

#include "nilfix/index.hpp"
#include "nilfix/region.hpp"
#include "nilfix/vector_field.hpp"

#include <string>
#include <vector>

namespace nilfix {

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double max_step = 0.1;
    long max_steps = 1000000;
    double working_halfwidth = 1e3;   // plane: leaving this box means Escaped
    double chart_switch_radius = 2.0; // sphere: switch charts beyond this radius
};

/// Time-t map of a field's local flow.
struct FlowMap {
    const PolyVectorField* field;
    double t;
    IntegratorOptions opts;

    FlowMap(const PolyVectorField& f, double time, IntegratorOptions o = {});
};

/// Escaped is a value, not an error: it realizes the partial domain of a
/// local flow on the plane chart.
struct AdvanceResult {
    bool escaped = false;
    Eigen::Vector2d p = Eigen::Vector2d::Zero();
    std::string chart;
    double t_reached = 0.0;
};

/// Integrates the flow to time flow.t with an embedded Runge-Kutta pair and
/// per-step error control; sphere trajectories switch charts, torus
/// trajectories wrap, plane trajectories may escape.
AdvanceResult advance(const FlowMap& flow, const std::string& chart, const Eigen::Vector2d& p);

struct FlowIndexOptions {
    IntegratorOptions integ;
    WindingOptions winding;
    /// Floor for the displacement modulus on the boundary; negative means
    /// "scale the field modulus floor by |t|".
    double displacement_floor = -1.0;
};

/// Index of the time-t map over the region, realized as the winding number
/// of p -> phi_t(p) - p along the boundary; fixed points of phi_t inside
/// the region are the zeros of that displacement.
IndexResult flow_displacement_index(const PolyVectorField& field, const Region& region, double t,
                                    const FlowIndexOptions& opts = {});

struct SmallTimeEntry {
    double t = 0.0;
    bool ok = false;
    std::string error;
    IndexResult index;
};

/// Per-t record of displacement indices against the field's boundary
/// degree; stable_prefix counts the leading entries that certified and
/// matched it.
struct SmallTimeProbeReport {
    IndexResult block;
    std::vector<SmallTimeEntry> entries;
    int stable_prefix = 0;
};

SmallTimeProbeReport small_time_probe(const PolyVectorField& field, const Region& region,
                                      const std::vector<double>& times,
                                      const FlowIndexOptions& opts = {});

struct PerturbationEntry {
    bool ok = false;
    std::string error;
    IndexResult index;
};

/// Compares boundary degrees of perturbed fields against the displacement
/// index of the base field at a small time.
struct PerturbationReport {
    IndexResult flow_index;
    double t = 0.0;
    std::vector<PerturbationEntry> entries;
    int first_certified = -1;
    bool all_match_beyond = false;
};

PerturbationReport perturbation_check(const PolyVectorField& field,
                                      const std::vector<PolyVectorField>& perturbed,
                                      const Region& region, double t = 0.01,
                                      const FlowIndexOptions& opts = {});

} // namespace nilfix
