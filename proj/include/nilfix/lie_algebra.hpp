#pragma once

#include "nilfix/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilfix {

/// Linear subspace of a d-dimensional algebra, stored as a canonical RREF
/// basis so that equal subspaces compare equal row by row.
class Subspace {
public:
    Subspace(int parent_dim, RatMat spanning_vectors);

    static Subspace zero(int parent_dim) { return Subspace(parent_dim, {}); }
    static Subspace full(int parent_dim);

    int parent_dim() const { return parent_dim_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const RatMat& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool contains(const RatVec& v) const;
    bool operator==(const Subspace& other) const;

private:
    int parent_dim_;
    RatMat basis_;
    std::vector<int> pivots_;
};

/// Report produced when structure constants are checked without throwing,
/// so a front end can distinguish "invalid algebra" from "invalid file".
struct StructureCheck {
    bool antisymmetry_ok = true;
    bool jacobi_ok = true;
    std::vector<std::string> violations;
    bool ok() const { return antisymmetry_ok && jacobi_ok; }
};

/// Finite-dimensional real Lie algebra presented by exact rational structure
/// constants c[i][j] = coordinates of [e_i, e_j].  The constructor rejects
/// tensors violating antisymmetry or the Jacobi identity.
class LieAlgebra {
public:
    using StructureTensor = std::vector<std::vector<RatVec>>; // [i][j] -> RatVec of length d

    LieAlgebra(int dim, std::vector<std::string> basis_names, StructureTensor structure);

    static StructureCheck check_structure(int dim, const StructureTensor& structure);

    int dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return names_; }
    const StructureTensor& structure() const { return c_; }

    RatVec bracket(const RatVec& a, const RatVec& b) const;

    RatVec basis_element(int i) const;

private:
    int dim_;
    std::vector<std::string> names_;
    StructureTensor c_;
};

std::vector<Subspace> lower_central_series(const LieAlgebra& alg);
bool is_nilpotent(const LieAlgebra& alg);

/// Kernel of e -> ad(e); for a nonzero nilpotent algebra this is nonzero.
Subspace center(const LieAlgebra& alg);

bool is_ideal(const LieAlgebra& alg, const Subspace& s);
bool is_subalgebra(const LieAlgebra& alg, const Subspace& s);

/// True iff u + w spans the whole algebra (exact rank check).
bool subspaces_span_algebra(const LieAlgebra& alg, const Subspace& u, const Subspace& w);

/// Quotient algebra together with the projection (rows = images of the
/// standard basis) and a section lifting quotient basis vectors back.
struct Quotient {
    LieAlgebra algebra;
    RatMat projection; // (d-m) x d
    RatMat lift;       // (d-m) rows, representatives in the parent

    RatVec project(const RatVec& v) const;
    RatVec lift_vec(const RatVec& q) const;
};

Quotient quotient(const LieAlgebra& alg, const Subspace& ideal);

/// Codimension-one ideal containing y, built by quotienting along a
/// 1-dimensional central ideal and recursing; requires a nilpotent algebra
/// of dimension >= 2.
Subspace codim1_ideal_containing(const LieAlgebra& alg, const RatVec& y);

} // namespace nilfix
