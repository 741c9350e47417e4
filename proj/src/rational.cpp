#include "nilfix/rational.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

namespace nilfix {

double to_double(const Rat& r) {
    return r.convert_to<double>();
}

Rat rat_from_double(double x) {
    if (x == 0.0) return Rat(0);
    int exp = 0;
    // mantissa has at most 53 significant bits, so 2^60 * frac is integral
    const double frac = std::frexp(x, &exp);
    const auto mant = static_cast<long long>(std::ldexp(frac, 60));
    exp -= 60;
    Rat r(mant);
    boost::multiprecision::cpp_int two(2);
    if (exp >= 0) {
        r *= Rat(boost::multiprecision::pow(two, static_cast<unsigned>(exp)));
    } else {
        r /= Rat(boost::multiprecision::pow(two, static_cast<unsigned>(-exp)));
    }
    return r;
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

bool is_zero_vec(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec vec_scale(const Rat& c, const RatVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

std::vector<int> rref_inplace(RatMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols && lead < rows; ++col) {
        std::size_t piv = lead;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[lead], m[piv]);
        const Rat inv = m[lead][col];
        for (std::size_t j = col; j < cols; ++j) m[lead][j] /= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead || m[r][col] == 0) continue;
            const Rat f = m[r][col];
            for (std::size_t j = col; j < cols; ++j) m[r][j] -= f * m[lead][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++lead;
    }
    m.resize(pivots.size());
    return pivots;
}

int rank_of(RatMat m) {
    return static_cast<int>(rref_inplace(m).size());
}

RatMat canonical_rowspace_basis(RatMat m) {
    rref_inplace(m);
    return m;
}

RatVec reduce_against(const RatMat& rref_rows, const std::vector<int>& pivots, RatVec v) {
    for (std::size_t r = 0; r < rref_rows.size(); ++r) {
        const int p = pivots[r];
        if (v[static_cast<std::size_t>(p)] == 0) continue;
        const Rat f = v[static_cast<std::size_t>(p)];
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * rref_rows[r][j];
    }
    return v;
}

RatMat kernel_basis(const RatMat& m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    RatMat red = m;
    const std::vector<int> pivots = rref_inplace(red);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    RatMat basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, Rat(0));
        v[free] = 1;
        for (std::size_t r = 0; r < red.size(); ++r) {
            v[static_cast<std::size_t>(pivots[r])] = -red[r][free];
        }
        basis.push_back(std::move(v));
    }
    return canonical_rowspace_basis(std::move(basis));
}

bool lex_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

} // namespace nilfix
