#include "nilfix/action.hpp"

#include "nilfix/errors.hpp"
#include "nilfix/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace nilfix {

ActionSpec build_action(LieAlgebra algebra, Surface surface, std::vector<PolyVectorField> generator_fields,
                        std::vector<std::string> generator_names) {
    const int d = algebra.dim();
    if (static_cast<int>(generator_fields.size()) != d) {
        throw ValidationError("need exactly one generator field per basis element");
    }
    for (const auto& f : generator_fields) {
        if (!(f.surface() == surface)) throw ValidationError("generator field lives on the wrong surface");
    }
    if (generator_names.empty()) generator_names = algebra.basis_names();
    if (static_cast<int>(generator_names.size()) != d) {
        throw ValidationError("number of generator names does not match dimension");
    }

    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            PolyVectorField rhs = PolyVectorField::zero(surface);
            const RatVec& cij = algebra.structure()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int k = 0; k < d; ++k) {
                if (cij[static_cast<std::size_t>(k)] != 0) {
                    rhs = rhs + generator_fields[static_cast<std::size_t>(k)].scaled(cij[static_cast<std::size_t>(k)]);
                }
            }
            const PolyVectorField lhs = field_bracket(generator_fields[static_cast<std::size_t>(i)],
                                                      generator_fields[static_cast<std::size_t>(j)]);
            for (const auto& chart_id : surface.charts()) {
                const Poly2 rp = lhs.chart(chart_id).p - rhs.chart(chart_id).p;
                const Poly2 rq = lhs.chart(chart_id).q - rhs.chart(chart_id).q;
                if (!rp.is_zero() || !rq.is_zero()) {
                    std::ostringstream os;
                    os << "homomorphism violated for pair (" << generator_names[static_cast<std::size_t>(i)]
                       << ", " << generator_names[static_cast<std::size_t>(j)] << ") on chart " << chart_id
                       << ": residual p = " << rp.str() << ", residual q = " << rq.str();
                    throw ValidationError(os.str());
                }
            }
        }
    }
    return ActionSpec{std::move(algebra), surface, std::move(generator_fields), std::move(generator_names)};
}

PolyVectorField element_field(const ActionSpec& action, const RatVec& coords) {
    if (static_cast<int>(coords.size()) != action.algebra.dim()) {
        throw ValidationError("element length does not match algebra dimension");
    }
    PolyVectorField out = PolyVectorField::zero(action.surface);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] != 0) out = out + action.generator_fields[i].scaled(coords[i]);
    }
    return out;
}

std::vector<ZeroCluster> fix_set(const ActionSpec& action, const Region& region,
                                 const FindZerosOptions& opts) {
    std::vector<ChartComponents> members;
    members.reserve(action.generator_fields.size());
    for (const auto& f : action.generator_fields) members.push_back(f.chart(region.chart()));
    return find_zeros_system(FieldSystem(std::move(members)), region, opts);
}

namespace {

// Projects v onto the orthogonal complement of the (orthonormal) rows.
Eigen::VectorXd residual_against(const std::vector<Eigen::VectorXd>& basis, Eigen::VectorXd v) {
    for (const auto& b : basis) v -= b.dot(v) * b;
    return v;
}

Eigen::VectorXd bracket_double(const LieAlgebra& alg, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const int d = alg.dim();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) {
        if (a(i) == 0.0) continue;
        for (int j = 0; j < d; ++j) {
            if (b(j) == 0.0) continue;
            const double f = a(i) * b(j);
            const RatVec& cij = alg.structure()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int k = 0; k < d; ++k) out(k) += f * to_double(cij[static_cast<std::size_t>(k)]);
        }
    }
    return out;
}

} // namespace

StabilizerResult stabilizer_at(const ActionSpec& action, const std::string& chart,
                               const Eigen::Vector2d& p, double rank_tol) {
    const int d = action.algebra.dim();
    Eigen::MatrixXd eval(2, d);
    for (int i = 0; i < d; ++i) {
        eval.col(i) = action.generator_fields[static_cast<std::size_t>(i)].eval(chart, p);
    }

    StabilizerResult res;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(eval, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? rank_tol * std::max(sv(0), 1e-300) : 0.0;
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > cutoff) ++rank;
    }
    for (int k = rank; k < d; ++k) {
        res.basis.push_back(svd.matrixV().col(k));
    }

    // close under the bracket; the stabilizer is the subalgebra *generated*
    // by the vanishing elements, so enlargement is possible and flagged
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t n = res.basis.size();
        for (std::size_t a = 0; a < n && !grew; ++a) {
            for (std::size_t b = a + 1; b < n && !grew; ++b) {
                const Eigen::VectorXd w = bracket_double(action.algebra, res.basis[a], res.basis[b]);
                const Eigen::VectorXd r = residual_against(res.basis, w);
                if (r.norm() > rank_tol * std::max(1.0, w.norm())) {
                    res.basis.push_back(r.normalized());
                    res.closure_enlarged = true;
                    grew = true;
                }
            }
        }
    }
    return res;
}

InvarianceProbeReport invariance_probe(const ActionSpec& action, const Subspace& ideal,
                                       const Region& region, const InvarianceProbeOptions& opts) {
    if (!is_ideal(action.algebra, ideal)) {
        throw ValidationError("invariance probe requires an ideal of the algebra");
    }
    InvarianceProbeReport report;
    if (ideal.dim() == 0) return report;

    std::vector<PolyVectorField> ideal_fields;
    for (const auto& v : ideal.basis()) ideal_fields.push_back(element_field(action, v));

    std::vector<ChartComponents> members;
    for (const auto& f : ideal_fields) members.push_back(f.chart(region.chart()));
    report.ideal_fixed_points = find_zeros_system(FieldSystem(std::move(members)), region, opts.zeros);

    for (std::size_t fp = 0; fp < report.ideal_fixed_points.size(); ++fp) {
        const Eigen::Vector2d start = report.ideal_fixed_points[fp].location;
        for (std::size_t g = 0; g < action.generator_fields.size(); ++g) {
            for (const double t : opts.times) {
                InvarianceTrajectory traj;
                traj.fixed_point = static_cast<int>(fp);
                traj.generator = static_cast<int>(g);
                traj.t = t;
                const FlowMap flow(action.generator_fields[g], t, opts.integ);
                const AdvanceResult r = advance(flow, region.chart(), start);
                if (r.escaped) {
                    traj.escaped = true;
                } else {
                    double drift = 0.0;
                    for (const auto& f : ideal_fields) {
                        drift = std::max(drift, f.eval(r.chart, r.p).norm());
                    }
                    traj.drift = drift;
                    report.max_drift = std::max(report.max_drift, drift);
                }
                report.trajectories.push_back(traj);
            }
        }
    }
    return report;
}

std::string to_string(VerifyStatus s) {
    switch (s) {
    case VerifyStatus::Verified: return "VERIFIED";
    case VerifyStatus::Inconclusive: return "INCONCLUSIVE";
    case VerifyStatus::NotApplicable: return "NOT_APPLICABLE";
    case VerifyStatus::NotEssential: return "NOT_ESSENTIAL";
    }
    return "?";
}

namespace {

struct WitnessCandidate {
    Eigen::Vector2d point;
    double max_residual;
};

} // namespace

VerificationReport verify_essential_block(const ActionSpec& action, const RatVec& element,
                                          const Region& region, const VerifyOptions& opts) {
    VerificationReport report;
    report.witness_tol = opts.witness_tol;

    report.nilpotent = is_nilpotent(action.algebra);
    if (!report.nilpotent) {
        report.status = VerifyStatus::NotApplicable;
        return report;
    }

    const PolyVectorField xfield = element_field(action, element);
    report.index = block_index(xfield, region, opts.winding); // throws if not isolating
    report.essential = report.index->certified && report.index->value != 0;
    if (!report.essential) {
        report.status = VerifyStatus::NotEssential;
        return report;
    }

    // witness search: subdivision over the stacked generator system, seeded
    // Gauss-Newton from the element field's own zeros and a jittered grid
    std::vector<ChartComponents> members;
    for (const auto& f : action.generator_fields) members.push_back(f.chart(region.chart()));
    const FieldSystem sys(std::move(members));

    std::vector<WitnessCandidate> candidates;
    try {
        for (const auto& z : find_zeros_system(sys, region, opts.zeros)) {
            candidates.push_back({z.location, *std::max_element(z.residuals.begin(), z.residuals.end())});
        }
    } catch (const BudgetError&) {
        // fall through to the multi-start search
    } catch (const CertificationError&) {
    }

    std::vector<Eigen::Vector2d> seeds;
    try {
        for (const auto& z : find_zeros(xfield, region, opts.zeros)) seeds.push_back(z.location);
    } catch (const BudgetError&) {
    } catch (const CertificationError&) {
    }
    const BoundingBox bb = region.bbox();
    std::mt19937 rng(opts.rng_seed);
    std::uniform_real_distribution<double> jitter(-0.25, 0.25);
    const int g = std::max(2, opts.seed_grid);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double fx = (i + 0.5 + jitter(rng)) / g;
            const double fy = (j + 0.5 + jitter(rng)) / g;
            const Eigen::Vector2d p(bb.lo.x() + fx * (bb.hi.x() - bb.lo.x()),
                                    bb.lo.y() + fy * (bb.hi.y() - bb.lo.y()));
            if (region.contains(p)) seeds.push_back(p);
        }
    }

    std::vector<std::optional<WitnessCandidate>> polished(seeds.size());
    FindZerosOptions nz = opts.zeros;
    parallel_for(seeds.size(), [&](std::size_t i) {
        Eigen::Vector2d p = seeds[i];
        // reuse the damped Gauss-Newton polish via a tiny local loop
        for (int it = 0; it < nz.max_newton_iters; ++it) {
            const Eigen::VectorXd f = sys.eval(p);
            if (f.lpNorm<Eigen::Infinity>() <= nz.accept_residual) break;
            const Eigen::MatrixXd j = sys.jacobian(p);
            const Eigen::Matrix2d jtj = j.transpose() * j;
            const Eigen::Vector2d rhs = -j.transpose() * f;
            const double det = jtj(0, 0) * jtj(1, 1) - jtj(0, 1) * jtj(1, 0);
            if (std::abs(det) < 1e-300) break;
            Eigen::Vector2d step(jtj(1, 1) * rhs.x() - jtj(0, 1) * rhs.y(),
                                 -jtj(1, 0) * rhs.x() + jtj(0, 0) * rhs.y());
            step /= det;
            if (!step.allFinite()) break;
            p += step;
            if (step.norm() <= nz.newton_tol * std::max(1.0, p.norm())) break;
        }
        if (region.contains(p)) {
            const auto norms = sys.member_norms(p);
            polished[i] = WitnessCandidate{p, *std::max_element(norms.begin(), norms.end())};
        }
    });
    for (const auto& c : polished) {
        if (c) candidates.push_back(*c);
    }

    std::optional<WitnessCandidate> best;
    for (const auto& c : candidates) {
        if (c.max_residual >= opts.witness_tol) continue;
        if (!best || c.point.x() < best->point.x() ||
            (c.point.x() == best->point.x() && c.point.y() < best->point.y())) {
            best = c;
        }
    }

    if (best) {
        report.status = VerifyStatus::Verified;
        report.witness = best->point;
        report.residuals = sys.member_norms(best->point);
    } else {
        report.status = VerifyStatus::Inconclusive;
    }
    return report;
}

} // namespace nilfix
