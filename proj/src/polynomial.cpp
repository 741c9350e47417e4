#include "nilfix/polynomial.hpp"

#include "nilfix/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nilfix {

namespace {

Rat rat_pow(const Rat& base, int e) {
    Rat r(1);
    for (int k = 0; k < e; ++k) r *= base;
    return r;
}

// Pascal triangle row cache for the shift expansion.
const std::vector<Rat>& binomial_row(int n) {
    static std::vector<std::vector<Rat>> rows = {{Rat(1)}};
    while (static_cast<int>(rows.size()) <= n) {
        const auto& prev = rows.back();
        std::vector<Rat> next(prev.size() + 1, Rat(1));
        for (std::size_t k = 1; k < prev.size(); ++k) next[k] = prev[k - 1] + prev[k];
        rows.push_back(std::move(next));
    }
    return rows[static_cast<std::size_t>(n)];
}

} // namespace

Poly2::Poly2(TermMap terms) {
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->first.first < 0 || it->first.second < 0) {
            throw ValidationError("polynomial exponents must be non-negative");
        }
        if (it->second == 0) {
            it = terms.erase(it);
        } else {
            ++it;
        }
    }
    terms_ = std::move(terms);
    rebuild_eval_table();
}

Poly2 Poly2::constant(Rat c) {
    TermMap t;
    if (c != 0) t[{0, 0}] = std::move(c);
    return Poly2(std::move(t));
}

Poly2 Poly2::monomial(int i, int j, Rat c) {
    TermMap t;
    if (c != 0) t[{i, j}] = std::move(c);
    return Poly2(std::move(t));
}

int Poly2::total_degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
    return d;
}

Poly2 Poly2::operator+(const Poly2& o) const {
    TermMap t = terms_;
    for (const auto& [k, c] : o.terms_) t[k] += c;
    return Poly2(std::move(t));
}

Poly2 Poly2::operator-(const Poly2& o) const {
    TermMap t = terms_;
    for (const auto& [k, c] : o.terms_) t[k] -= c;
    return Poly2(std::move(t));
}

Poly2 Poly2::operator-() const {
    TermMap t = terms_;
    for (auto& [k, c] : t) c = -c;
    return Poly2(std::move(t));
}

Poly2 Poly2::operator*(const Poly2& o) const {
    TermMap t;
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            t[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
        }
    }
    return Poly2(std::move(t));
}

Poly2 Poly2::scaled(const Rat& c) const {
    TermMap t;
    if (c != 0) {
        t = terms_;
        for (auto& [k, v] : t) v *= c;
    }
    return Poly2(std::move(t));
}

Poly2 Poly2::dx() const {
    TermMap t;
    for (const auto& [k, c] : terms_) {
        if (k.first > 0) t[{k.first - 1, k.second}] = c * k.first;
    }
    return Poly2(std::move(t));
}

Poly2 Poly2::dy() const {
    TermMap t;
    for (const auto& [k, c] : terms_) {
        if (k.second > 0) t[{k.first, k.second - 1}] = c * k.second;
    }
    return Poly2(std::move(t));
}

void Poly2::rebuild_eval_table() {
    eval_rows_.clear();
    int max_i = 0, max_j = 0;
    for (const auto& [k, c] : terms_) {
        max_i = std::max(max_i, k.first);
        max_j = std::max(max_j, k.second);
    }
    if (terms_.empty()) return;
    eval_rows_.assign(static_cast<std::size_t>(max_j) + 1,
                      std::vector<double>(static_cast<std::size_t>(max_i) + 1, 0.0));
    for (const auto& [k, c] : terms_) {
        eval_rows_[static_cast<std::size_t>(k.second)][static_cast<std::size_t>(k.first)] = to_double(c);
    }
}

double Poly2::eval(double x, double y) const {
    if (eval_rows_.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t j = eval_rows_.size(); j-- > 0;) {
        const auto& row = eval_rows_[j];
        double hx = 0.0;
        for (std::size_t i = row.size(); i-- > 0;) hx = hx * x + row[i];
        acc = acc * y + hx;
    }
    return acc;
}

Rat Poly2::eval_exact(const Rat& x, const Rat& y) const {
    Rat acc(0);
    for (const auto& [k, c] : terms_) {
        acc += c * rat_pow(x, k.first) * rat_pow(y, k.second);
    }
    return acc;
}

Poly2 Poly2::shifted(const Rat& cx, const Rat& cy) const {
    TermMap t;
    for (const auto& [k, c] : terms_) {
        const auto& bi = binomial_row(k.first);
        const auto& bj = binomial_row(k.second);
        for (int a = 0; a <= k.first; ++a) {
            const Rat fa = c * bi[static_cast<std::size_t>(a)] * rat_pow(cx, k.first - a);
            if (fa == 0) continue;
            for (int b = 0; b <= k.second; ++b) {
                const Rat fb = fa * bj[static_cast<std::size_t>(b)] * rat_pow(cy, k.second - b);
                if (fb != 0) t[{a, b}] += fb;
            }
        }
    }
    return Poly2(std::move(t));
}

Rat Poly2::tail_bound(const Rat& r) const {
    Rat sum(0);
    for (const auto& [k, c] : terms_) {
        if (k.first == 0 && k.second == 0) continue;
        sum += boost::multiprecision::abs(c) * rat_pow(r, k.first + k.second);
    }
    return sum;
}

std::string Poly2::str(const std::string& vx, const std::string& vy) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        if (k.first > 0) os << "*" << vx << "^" << k.first;
        if (k.second > 0) os << "*" << vy << "^" << k.second;
    }
    return os.str();
}

} // namespace nilfix
