#include "nilfix/lie_algebra.hpp"

#include "nilfix/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nilfix {

namespace {

RatVec bracket_raw(const LieAlgebra::StructureTensor& c, int d, const RatVec& a, const RatVec& b) {
    RatVec out(static_cast<std::size_t>(d), Rat(0));
    for (int i = 0; i < d; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (b[static_cast<std::size_t>(j)] == 0) continue;
            const Rat f = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
            const RatVec& cij = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int k = 0; k < d; ++k) {
                out[static_cast<std::size_t>(k)] += f * cij[static_cast<std::size_t>(k)];
            }
        }
    }
    return out;
}

RatVec unit(int d, int i) {
    RatVec v(static_cast<std::size_t>(d), Rat(0));
    v[static_cast<std::size_t>(i)] = 1;
    return v;
}

} // namespace

Subspace::Subspace(int parent_dim, RatMat spanning_vectors) : parent_dim_(parent_dim) {
    for (const auto& v : spanning_vectors) {
        if (static_cast<int>(v.size()) != parent_dim) {
            throw ValidationError("subspace vector length does not match parent dimension");
        }
    }
    basis_ = std::move(spanning_vectors);
    pivots_ = rref_inplace(basis_);
}

Subspace Subspace::full(int parent_dim) {
    RatMat rows;
    for (int i = 0; i < parent_dim; ++i) rows.push_back(unit(parent_dim, i));
    return Subspace(parent_dim, std::move(rows));
}

bool Subspace::contains(const RatVec& v) const {
    if (static_cast<int>(v.size()) != parent_dim_) {
        throw ValidationError("vector length does not match subspace parent dimension");
    }
    return is_zero_vec(reduce_against(basis_, pivots_, v));
}

bool Subspace::operator==(const Subspace& other) const {
    return parent_dim_ == other.parent_dim_ && basis_ == other.basis_;
}

StructureCheck LieAlgebra::check_structure(int dim, const StructureTensor& c) {
    StructureCheck res;
    const auto d = static_cast<std::size_t>(dim);
    if (c.size() != d) {
        res.antisymmetry_ok = false;
        res.violations.push_back("structure tensor has wrong first dimension");
        return res;
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (c[i].size() != d) {
            res.antisymmetry_ok = false;
            res.violations.push_back("structure tensor has wrong second dimension");
            return res;
        }
        for (std::size_t j = 0; j < d; ++j) {
            if (c[i][j].size() != d) {
                res.antisymmetry_ok = false;
                res.violations.push_back("structure tensor has wrong third dimension");
                return res;
            }
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            for (std::size_t k = 0; k < d; ++k) {
                if (c[i][j][k] != -c[j][i][k]) {
                    std::ostringstream os;
                    os << "antisymmetry violated at c[" << i << "][" << j << "][" << k << "]";
                    res.antisymmetry_ok = false;
                    res.violations.push_back(os.str());
                }
            }
        }
    }
    if (!res.antisymmetry_ok) return res;
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            for (int k = j + 1; k < dim; ++k) {
                const RatVec ei = unit(dim, i), ej = unit(dim, j), ek = unit(dim, k);
                RatVec sum = bracket_raw(c, dim, ei, bracket_raw(c, dim, ej, ek));
                sum = vec_add(sum, bracket_raw(c, dim, ej, bracket_raw(c, dim, ek, ei)));
                sum = vec_add(sum, bracket_raw(c, dim, ek, bracket_raw(c, dim, ei, ej)));
                if (!is_zero_vec(sum)) {
                    std::ostringstream os;
                    os << "Jacobi identity violated on basis triple (" << i << ", " << j << ", " << k << ")";
                    res.jacobi_ok = false;
                    res.violations.push_back(os.str());
                }
            }
        }
    }
    return res;
}

LieAlgebra::LieAlgebra(int dim, std::vector<std::string> basis_names, StructureTensor structure)
    : dim_(dim), names_(std::move(basis_names)), c_(std::move(structure)) {
    if (dim_ < 1) throw ValidationError("algebra dimension must be positive");
    if (names_.empty()) {
        for (int i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i + 1));
    }
    if (static_cast<int>(names_.size()) != dim_) {
        throw ValidationError("number of basis names does not match dimension");
    }
    const StructureCheck chk = check_structure(dim_, c_);
    if (!chk.ok()) {
        std::string msg = "invalid structure constants:";
        for (const auto& v : chk.violations) msg += " " + v + ";";
        throw ValidationError(msg);
    }
}

RatVec LieAlgebra::bracket(const RatVec& a, const RatVec& b) const {
    if (static_cast<int>(a.size()) != dim_ || static_cast<int>(b.size()) != dim_) {
        throw ValidationError("bracket operand length does not match algebra dimension");
    }
    return bracket_raw(c_, dim_, a, b);
}

RatVec LieAlgebra::basis_element(int i) const {
    if (i < 0 || i >= dim_) throw ValidationError("basis index out of range");
    return unit(dim_, i);
}

std::vector<Subspace> lower_central_series(const LieAlgebra& alg) {
    const int d = alg.dim();
    std::vector<Subspace> series;
    series.push_back(Subspace::full(d));
    for (;;) {
        const Subspace& prev = series.back();
        RatMat gen;
        for (int i = 0; i < d; ++i) {
            for (const auto& v : prev.basis()) {
                gen.push_back(alg.bracket(alg.basis_element(i), v));
            }
        }
        Subspace next(d, std::move(gen));
        const bool stabilized = next.dim() == prev.dim();
        const bool zero = next.dim() == 0;
        series.push_back(std::move(next));
        if (stabilized || zero) break;
    }
    return series;
}

bool is_nilpotent(const LieAlgebra& alg) {
    return lower_central_series(alg).back().dim() == 0;
}

Subspace center(const LieAlgebra& alg) {
    const int d = alg.dim();
    // rows of m: for each (j, k), the map e -> [e, e_j]_k
    RatMat m;
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            RatVec row(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) {
                row[static_cast<std::size_t>(i)] =
                    alg.structure()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            }
            m.push_back(std::move(row));
        }
    }
    return Subspace(d, kernel_basis(m));
}

bool is_ideal(const LieAlgebra& alg, const Subspace& s) {
    for (int i = 0; i < alg.dim(); ++i) {
        for (const auto& v : s.basis()) {
            if (!s.contains(alg.bracket(alg.basis_element(i), v))) return false;
        }
    }
    return true;
}

bool is_subalgebra(const LieAlgebra& alg, const Subspace& s) {
    for (const auto& u : s.basis()) {
        for (const auto& v : s.basis()) {
            if (!s.contains(alg.bracket(u, v))) return false;
        }
    }
    return true;
}

bool subspaces_span_algebra(const LieAlgebra& alg, const Subspace& u, const Subspace& w) {
    RatMat rows = u.basis();
    for (const auto& v : w.basis()) rows.push_back(v);
    return rank_of(std::move(rows)) == alg.dim();
}

RatVec Quotient::project(const RatVec& v) const {
    RatVec out(projection.size(), Rat(0));
    for (std::size_t r = 0; r < projection.size(); ++r) {
        for (std::size_t j = 0; j < v.size(); ++j) out[r] += projection[r][j] * v[j];
    }
    return out;
}

RatVec Quotient::lift_vec(const RatVec& q) const {
    if (lift.empty()) return {};
    RatVec out(lift[0].size(), Rat(0));
    for (std::size_t r = 0; r < lift.size(); ++r) {
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += q[r] * lift[r][j];
    }
    return out;
}

Quotient quotient(const LieAlgebra& alg, const Subspace& ideal) {
    if (!is_ideal(alg, ideal)) throw ValidationError("quotient requires an ideal");
    const int d = alg.dim();
    const int m = ideal.dim();
    const int q = d - m;

    std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
    for (int p : ideal.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < d; ++j) {
        if (!is_pivot[static_cast<std::size_t>(j)]) free_cols.push_back(j);
    }

    // canonical representative: eliminate pivot coordinates against the
    // ideal's RREF basis, then read off the free coordinates
    auto project_vec = [&](const RatVec& v) {
        const RatVec red = reduce_against(ideal.basis(), ideal.pivots(), v);
        RatVec out(static_cast<std::size_t>(q));
        for (int r = 0; r < q; ++r) out[static_cast<std::size_t>(r)] = red[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(r)])];
        return out;
    };

    RatMat proj;
    for (int r = 0; r < q; ++r) proj.emplace_back(static_cast<std::size_t>(d), Rat(0));
    for (int col = 0; col < d; ++col) {
        RatVec e(static_cast<std::size_t>(d), Rat(0));
        e[static_cast<std::size_t>(col)] = 1;
        const RatVec img = project_vec(e);
        for (int r = 0; r < q; ++r) proj[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] = img[static_cast<std::size_t>(r)];
    }

    RatMat lift;
    for (int r = 0; r < q; ++r) {
        RatVec e(static_cast<std::size_t>(d), Rat(0));
        e[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(r)])] = 1;
        lift.push_back(std::move(e));
    }

    LieAlgebra::StructureTensor qc(
        static_cast<std::size_t>(q),
        std::vector<RatVec>(static_cast<std::size_t>(q), RatVec(static_cast<std::size_t>(q), Rat(0))));
    for (int p = 0; p < q; ++p) {
        for (int s = 0; s < q; ++s) {
            qc[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)] =
                project_vec(alg.bracket(lift[static_cast<std::size_t>(p)], lift[static_cast<std::size_t>(s)]));
        }
    }

    std::vector<std::string> names;
    for (int r = 0; r < q; ++r) {
        names.push_back(alg.basis_names()[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(r)])] + "~");
    }
    // LieAlgebra constructor re-checks Jacobi in the quotient
    return Quotient{LieAlgebra(q, std::move(names), std::move(qc)), std::move(proj), std::move(lift)};
}

Subspace codim1_ideal_containing(const LieAlgebra& alg, const RatVec& y) {
    const int d = alg.dim();
    if (static_cast<int>(y.size()) != d) {
        throw ValidationError("element length does not match algebra dimension");
    }
    if (d < 2) throw ValidationError("codimension-one ideal needs dimension >= 2");
    if (!is_nilpotent(alg)) throw ValidationError("codimension-one covering requires a nilpotent algebra");

    if (d == 2) {
        if (is_zero_vec(y)) return Subspace(2, {alg.basis_element(0)});
        return Subspace(2, {y});
    }

    const Subspace z = center(alg);
    if (z.dim() == 0) throw CertificationError("nilpotent algebra reported a trivial center");
    RatVec central = z.basis()[0];
    for (const auto& v : z.basis()) {
        if (lex_less(v, central)) central = v;
    }

    const Subspace line(d, {central});
    const Quotient q = quotient(alg, line);
    const Subspace f = codim1_ideal_containing(q.algebra, q.project(y));

    RatMat span;
    for (const auto& fv : f.basis()) span.push_back(q.lift_vec(fv));
    span.push_back(central);
    return Subspace(d, std::move(span));
}

} // namespace nilfix
