#pragma once

#include "nilfix/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nilfix {

/// Bivariate polynomial with exact rational coefficients.  Terms are keyed
/// by (x-exponent, y-exponent); zero coefficients are never stored.  A dense
/// double coefficient table is kept alongside for fast evaluation; the
/// evaluation order (Horner in x inside Horner in y) is fixed so results are
/// bit-identical across runs and thread counts.
class Poly2 {
public:
    using Key = std::pair<int, int>;
    using TermMap = std::map<Key, Rat>;

    Poly2() = default;
    explicit Poly2(TermMap terms);

    static Poly2 zero() { return Poly2(); }
    static Poly2 constant(Rat c);
    static Poly2 monomial(int i, int j, Rat c);
    static Poly2 var_x() { return monomial(1, 0, Rat(1)); }
    static Poly2 var_y() { return monomial(0, 1, Rat(1)); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const; // -1 for the zero polynomial

    Poly2 operator+(const Poly2& o) const;
    Poly2 operator-(const Poly2& o) const;
    Poly2 operator-() const;
    Poly2 operator*(const Poly2& o) const;
    Poly2 scaled(const Rat& c) const;

    bool operator==(const Poly2& o) const { return terms_ == o.terms_; }

    Poly2 dx() const;
    Poly2 dy() const;

    double eval(double x, double y) const;
    Rat eval_exact(const Rat& x, const Rat& y) const;

    /// P(cx + u, cy + v) expanded in (u, v); exact.
    Poly2 shifted(const Rat& cx, const Rat& cy) const;

    /// Sum of |coefficient| * r^(i+j) over all nonconstant terms; together
    /// with the value at the cell center this gives the centered-form bound
    /// min |P| >= |P(c)| - tail(r) on the box of half-width r around c.
    Rat tail_bound(const Rat& r) const;

    std::string str(const std::string& vx = "x", const std::string& vy = "y") const;

private:
    void rebuild_eval_table();

    TermMap terms_;
    // dense [j][i] doubles for Horner evaluation
    std::vector<std::vector<double>> eval_rows_;
};

} // namespace nilfix
