#include "nilfix/zeros.hpp"

#include "nilfix/errors.hpp"
#include "nilfix/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nilfix {

namespace {

struct Cell {
    Rat cx, cy, hw;
};

enum class Verdict { Outside, Excluded, Candidate, Split };

// Certainly-no-region-point test; anything uncertain is kept.
bool cell_outside_region(const Region& region, const Cell& cell) {
    const Eigen::Vector2d c(to_double(cell.cx), to_double(cell.cy));
    const double reach = to_double(cell.hw) * 1.4143; // > sqrt(2), covers corner distance
    if (!geometry_contains(region.outer().geometry, c) &&
        geometry_distance(region.outer().geometry, c) > reach) {
        return true;
    }
    for (const auto& h : region.holes()) {
        if (geometry_contains(h.geometry, c) && geometry_distance(h.geometry, c) > reach) {
            return true;
        }
    }
    return false;
}

struct NewtonOutcome {
    bool converged = false;
    Eigen::Vector2d point = Eigen::Vector2d::Zero();
};

NewtonOutcome gauss_newton(const FieldSystem& sys, Eigen::Vector2d p, const FindZerosOptions& opts) {
    double fnorm = sys.eval(p).norm();
    for (int it = 0; it < opts.max_newton_iters; ++it) {
        const Eigen::VectorXd f = sys.eval(p);
        if (f.lpNorm<Eigen::Infinity>() <= opts.accept_residual) {
            return {true, p};
        }
        const Eigen::MatrixXd j = sys.jacobian(p);
        Eigen::Matrix2d jtj = j.transpose() * j;
        const Eigen::Vector2d rhs = -j.transpose() * f;
        double lambda = 0.0;
        Eigen::Vector2d step = Eigen::Vector2d::Zero();
        for (int tries = 0; tries < 10; ++tries) {
            const Eigen::Matrix2d m = jtj + lambda * Eigen::Matrix2d::Identity();
            const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
            if (std::abs(det) > 1e-300) {
                step = Eigen::Vector2d(m(1, 1) * rhs.x() - m(0, 1) * rhs.y(),
                                       -m(1, 0) * rhs.x() + m(0, 0) * rhs.y()) /
                       det;
                break;
            }
            lambda = (lambda == 0.0) ? 1e-12 * std::max(1.0, jtj.trace()) : lambda * 10.0;
        }
        if (!step.allFinite() || step.isZero(0.0)) return {false, p};
        // damping: halve until the residual stops growing
        Eigen::Vector2d next = p + step;
        double next_norm = sys.eval(next).norm();
        for (int halvings = 0; halvings < 20 && next_norm > fnorm; ++halvings) {
            step *= 0.5;
            next = p + step;
            next_norm = sys.eval(next).norm();
        }
        p = next;
        fnorm = next_norm;
        if (step.norm() <= opts.newton_tol * std::max(1.0, p.norm())) {
            const bool ok = sys.eval(p).lpNorm<Eigen::Infinity>() <= opts.accept_residual;
            return {ok, p};
        }
    }
    const bool ok = sys.eval(p).lpNorm<Eigen::Infinity>() <= opts.accept_residual;
    return {ok, p};
}

} // namespace

FieldSystem::FieldSystem(std::vector<ChartComponents> members) : members_(std::move(members)) {
    if (members_.empty()) throw ValidationError("field system needs at least one member");
    for (const auto& m : members_) {
        jac_.push_back({m.p.dx(), m.p.dy(), m.q.dx(), m.q.dy()});
    }
}

Eigen::VectorXd FieldSystem::eval(const Eigen::Vector2d& p) const {
    Eigen::VectorXd f(2 * static_cast<Eigen::Index>(members_.size()));
    for (std::size_t i = 0; i < members_.size(); ++i) {
        f(2 * static_cast<Eigen::Index>(i)) = members_[i].p.eval(p.x(), p.y());
        f(2 * static_cast<Eigen::Index>(i) + 1) = members_[i].q.eval(p.x(), p.y());
    }
    return f;
}

Eigen::MatrixXd FieldSystem::jacobian(const Eigen::Vector2d& p) const {
    Eigen::MatrixXd j(2 * static_cast<Eigen::Index>(members_.size()), 2);
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const auto& d = jac_[i];
        j(2 * static_cast<Eigen::Index>(i), 0) = d[0].eval(p.x(), p.y());
        j(2 * static_cast<Eigen::Index>(i), 1) = d[1].eval(p.x(), p.y());
        j(2 * static_cast<Eigen::Index>(i) + 1, 0) = d[2].eval(p.x(), p.y());
        j(2 * static_cast<Eigen::Index>(i) + 1, 1) = d[3].eval(p.x(), p.y());
    }
    return j;
}

double FieldSystem::max_member_norm(const Eigen::Vector2d& p) const {
    double m = 0.0;
    for (const auto& v : member_norms(p)) m = std::max(m, v);
    return m;
}

std::vector<double> FieldSystem::member_norms(const Eigen::Vector2d& p) const {
    std::vector<double> out;
    out.reserve(members_.size());
    for (const auto& m : members_) {
        out.push_back(std::hypot(m.p.eval(p.x(), p.y()), m.q.eval(p.x(), p.y())));
    }
    return out;
}

bool FieldSystem::excludes_box(const Rat& cx, const Rat& cy, const Rat& hw) const {
    using boost::multiprecision::abs;
    for (const auto& m : members_) {
        {
            const Poly2 sp = m.p.shifted(cx, cy);
            const Rat center = sp.eval_exact(Rat(0), Rat(0));
            if (abs(center) > sp.tail_bound(hw)) return true;
        }
        {
            const Poly2 sq = m.q.shifted(cx, cy);
            const Rat center = sq.eval_exact(Rat(0), Rat(0));
            if (abs(center) > sq.tail_bound(hw)) return true;
        }
    }
    return false;
}

std::vector<ZeroCluster> find_zeros_system(const FieldSystem& sys, const Region& region,
                                           const FindZerosOptions& opts) {
    const BoundingBox bb = region.bbox();
    const Eigen::Vector2d mid = 0.5 * (bb.lo + bb.hi);
    const double root_hw_d = 0.5 * std::max(bb.hi.x() - bb.lo.x(), bb.hi.y() - bb.lo.y()) * (1.0 + 1.0 / 64.0);
    const Cell root{rat_from_double(mid.x()), rat_from_double(mid.y()), rat_from_double(root_hw_d)};
    const Rat min_hw = rat_from_double(root_hw_d * opts.min_cell_rel);

    std::vector<Cell> cells{root};
    std::vector<Cell> candidates;
    long processed = 0;

    while (!cells.empty()) {
        processed += static_cast<long>(cells.size());
        if (processed > opts.cell_budget) {
            std::ostringstream os;
            os << "cell budget " << opts.cell_budget << " exhausted with " << cells.size()
               << " cells uncertified";
            throw BudgetError(os.str());
        }
        std::vector<Verdict> verdicts(cells.size());
        parallel_for(cells.size(), [&](std::size_t i) {
            const Cell& c = cells[i];
            if (cell_outside_region(region, c)) {
                verdicts[i] = Verdict::Outside;
            } else if (sys.excludes_box(c.cx, c.cy, c.hw)) {
                verdicts[i] = Verdict::Excluded;
            } else if (c.hw <= min_hw) {
                verdicts[i] = Verdict::Candidate;
            } else {
                verdicts[i] = Verdict::Split;
            }
        });
        std::vector<Cell> next;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const Cell& c = cells[i];
            switch (verdicts[i]) {
            case Verdict::Outside:
            case Verdict::Excluded: break;
            case Verdict::Candidate: candidates.push_back(c); break;
            case Verdict::Split: {
                const Rat h2 = c.hw / 2;
                next.push_back({c.cx - h2, c.cy - h2, h2});
                next.push_back({c.cx + h2, c.cy - h2, h2});
                next.push_back({c.cx - h2, c.cy + h2, h2});
                next.push_back({c.cx + h2, c.cy + h2, h2});
                break;
            }
            }
        }
        cells = std::move(next);
    }

    // polish candidates; each writes only its own slot
    std::vector<NewtonOutcome> outcomes(candidates.size());
    parallel_for(candidates.size(), [&](std::size_t i) {
        const Eigen::Vector2d seed(to_double(candidates[i].cx), to_double(candidates[i].cy));
        outcomes[i] = gauss_newton(sys, seed, opts);
    });

    std::vector<Eigen::Vector2d> roots;
    long failed = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!outcomes[i].converged) {
            ++failed;
            continue;
        }
        const Eigen::Vector2d& p = outcomes[i].point;
        if (!region.contains(p)) continue;
        bool merged = false;
        for (const auto& r : roots) {
            if ((r - p).norm() <= opts.merge_dist) {
                merged = true;
                break;
            }
        }
        if (!merged) roots.push_back(p);
    }
    if (failed > 0) {
        std::ostringstream os;
        os << failed << " surviving cells could not be certified or polished";
        throw BudgetError(os.str());
    }

    std::sort(roots.begin(), roots.end(), [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
    });

    std::vector<ZeroCluster> clusters;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const Eigen::Vector2d& z = roots[k];
        double r_lim = root_hw_d / 4.0;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (j == k) continue;
            r_lim = std::min(r_lim, (roots[j] - z).norm() / 3.0);
        }
        double r = r_lim;
        bool certified = false;
        const int m = opts.circle_cover;
        for (int attempt = 0; attempt < opts.max_isolation_shrinks && !certified; ++attempt) {
            bool all_excluded = true;
            const Rat hw_cover = rat_from_double(4.0 * r / m);
            for (int s = 0; s < m && all_excluded; ++s) {
                const double a = 2.0 * std::numbers::pi * s / m;
                const Eigen::Vector2d c = z + r * Eigen::Vector2d(std::cos(a), std::sin(a));
                all_excluded = sys.excludes_box(rat_from_double(c.x()), rat_from_double(c.y()), hw_cover);
            }
            if (all_excluded) {
                certified = true;
            } else {
                r *= 0.5;
            }
        }
        if (!certified) {
            std::ostringstream os;
            os << "could not certify an isolation radius around (" << z.x() << ", " << z.y() << ")";
            throw CertificationError(os.str());
        }

        ZeroCluster cl;
        cl.location = z;
        cl.radius = r;
        const auto& prim = sys.member(0);
        cl.jacobian(0, 0) = prim.p.dx().eval(z.x(), z.y());
        cl.jacobian(0, 1) = prim.p.dy().eval(z.x(), z.y());
        cl.jacobian(1, 0) = prim.q.dx().eval(z.x(), z.y());
        cl.jacobian(1, 1) = prim.q.dy().eval(z.x(), z.y());
        const double det = cl.jacobian(0, 0) * cl.jacobian(1, 1) - cl.jacobian(0, 1) * cl.jacobian(1, 0);
        const double scale = std::max(cl.jacobian.row(0).norm() * cl.jacobian.row(1).norm(), 1e-300);
        cl.degenerate = std::abs(det) / scale < opts.degenerate_tol;
        cl.residuals = sys.member_norms(z);
        clusters.push_back(std::move(cl));
    }
    return clusters;
}

std::vector<ZeroCluster> find_zeros(const PolyVectorField& field, const Region& region,
                                    const FindZerosOptions& opts) {
    return find_zeros_system(FieldSystem({field.chart(region.chart())}), region, opts);
}

} // namespace nilfix
