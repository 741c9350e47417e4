#pragma once

#include "nilfix/flow.hpp"
#include "nilfix/index.hpp"
#include "nilfix/lie_algebra.hpp"
#include "nilfix/vector_field.hpp"
#include "nilfix/zeros.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilfix {

/// Local action presented infinitesimally: each algebra basis element is
/// assigned a polynomial field, and the assignment is a Lie algebra
/// homomorphism (verified symbolically, exact residuals).
struct ActionSpec {
    LieAlgebra algebra;
    Surface surface;
    std::vector<PolyVectorField> generator_fields;
    std::vector<std::string> generator_names;
};

/// Constructs the action after checking, for every basis pair i < j, that
/// [gen_i, gen_j] equals the structure-constant combination of generators
/// as an exact polynomial identity.  Violations report the offending pair
/// and the residual polynomials.
ActionSpec build_action(LieAlgebra algebra, Surface surface, std::vector<PolyVectorField> generator_fields,
                        std::vector<std::string> generator_names = {});

/// Field of an algebra element: the exact linear combination of generators.
PolyVectorField element_field(const ActionSpec& action, const RatVec& coords);

/// Common zeros of all generator fields in the region, located by
/// subdivision on the stacked system; per-generator residuals are reported
/// on each cluster.
std::vector<ZeroCluster> fix_set(const ActionSpec& action, const Region& region,
                                 const FindZerosOptions& opts = {});

/// Stabilizer of a point: kernel of the evaluation map a -> X_a(p), taken
/// by SVD with a relative cutoff, then closed under the bracket.  The flag
/// records whether closure enlarged the kernel.
struct StabilizerResult {
    std::vector<Eigen::VectorXd> basis; // algebra coordinates, orthonormal
    bool closure_enlarged = false;

    int dim() const { return static_cast<int>(basis.size()); }
};

StabilizerResult stabilizer_at(const ActionSpec& action, const std::string& chart,
                               const Eigen::Vector2d& p, double rank_tol = 1e-9);

struct InvarianceTrajectory {
    int fixed_point = 0; // cluster index
    int generator = 0;
    double t = 0.0;
    bool escaped = false;
    double drift = 0.0; // max ideal-generator modulus at the endpoint
};

/// Flows each full-algebra generator from each fixed point of the
/// sub-action generated by an ideal and records how far the ideal fields
/// drift from zero along the way.
struct InvarianceProbeReport {
    std::vector<ZeroCluster> ideal_fixed_points;
    std::vector<InvarianceTrajectory> trajectories;
    double max_drift = 0.0;
};

struct InvarianceProbeOptions {
    FindZerosOptions zeros;
    IntegratorOptions integ;
    std::vector<double> times = {0.25, 0.5, 1.0};
};

InvarianceProbeReport invariance_probe(const ActionSpec& action, const Subspace& ideal,
                                       const Region& region, const InvarianceProbeOptions& opts = {});

enum class VerifyStatus { Verified, Inconclusive, NotApplicable, NotEssential };

std::string to_string(VerifyStatus s);

/// Outcome of the fixed-point verification pipeline.  Verified requires a
/// nilpotent algebra, a certified nonzero index, and a witness whose
/// largest generator residual is below the tolerance.  Inconclusive means
/// the numerical search failed to exhibit a witness; it never claims the
/// underlying existence statement is false.
struct VerificationReport {
    VerifyStatus status = VerifyStatus::Inconclusive;
    bool nilpotent = false;
    std::optional<IndexResult> index;
    bool essential = false;
    std::optional<Eigen::Vector2d> witness;
    std::vector<double> residuals; // per generator at the witness
    double witness_tol = 0.0;
};

struct VerifyOptions {
    FindZerosOptions zeros;
    WindingOptions winding;
    double witness_tol = 1e-9;
    int seed_grid = 16;
    unsigned rng_seed = 0; // jitters multi-start seeds deterministically
};

/// Pipeline: nilpotency gate, boundary degree of the element's field over
/// the region, then a witness search for a common zero of all generators.
VerificationReport verify_essential_block(const ActionSpec& action, const RatVec& element,
                                          const Region& region, const VerifyOptions& opts = {});

} // namespace nilfix
