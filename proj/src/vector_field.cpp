#include "nilfix/vector_field.hpp"

#include "nilfix/errors.hpp"

#include <algorithm>

namespace nilfix {

namespace {

// rho^deg * f(s/rho, t/rho) with rho = s^2 + t^2, which is polynomial again.
Poly2 inversion_numerator(const Poly2& f, int deg) {
    const Poly2 rho = Poly2::monomial(2, 0, Rat(1)) + Poly2::monomial(0, 2, Rat(1));
    Poly2 out = Poly2::zero();
    for (const auto& [k, c] : f.terms()) {
        Poly2 term = Poly2::monomial(k.first, k.second, c);
        const int pow = deg - k.first - k.second;
        for (int e = 0; e < pow; ++e) term = term * rho;
        out = out + term;
    }
    return out;
}

// Exact division by (s^2 + t^2)^count; nullopt when the division has a
// remainder.  Division by s^2 + t^2 treats the divisor as monic in s.
std::optional<Poly2> divide_out_rho(Poly2 f, int count) {
    for (int rep = 0; rep < count; ++rep) {
        Poly2::TermMap quot;
        Poly2::TermMap rem = f.terms();
        for (;;) {
            // largest (i, j) in lex order with i >= 2
            auto best = rem.end();
            for (auto it = rem.begin(); it != rem.end(); ++it) {
                if (it->first.first < 2) continue;
                if (best == rem.end() || best->first < it->first) best = it;
            }
            if (best == rem.end()) break;
            const int i = best->first.first;
            const int j = best->first.second;
            const Rat c = best->second;
            quot[{i - 2, j}] += c;
            rem.erase(best);
            auto sub = [&rem](int a, int b, const Rat& v) {
                auto it = rem.find({a, b});
                if (it == rem.end()) {
                    if (v != 0) rem[{a, b}] = -v;
                } else {
                    it->second -= v;
                    if (it->second == 0) rem.erase(it);
                }
            };
            sub(i - 2, j + 2, c); // subtract c * s^(i-2) t^j * t^2
        }
        if (!rem.empty()) return std::nullopt;
        f = Poly2(std::move(quot));
    }
    return f;
}

} // namespace

ChartComponents transport(const ChartComponents& c) {
    if (c.is_zero()) return c;
    const int deg = std::max(c.p.total_degree(), c.q.total_degree());
    const Poly2 s = Poly2::var_x();
    const Poly2 t = Poly2::var_y();
    const Poly2 t2_minus_s2 = Poly2::monomial(0, 2, Rat(1)) - Poly2::monomial(2, 0, Rat(1));
    const Poly2 minus_2st = Poly2::monomial(1, 1, Rat(-2));
    const Poly2 s2_minus_t2 = Poly2::monomial(2, 0, Rat(1)) - Poly2::monomial(0, 2, Rat(1));

    const Poly2 np = inversion_numerator(c.p, deg);
    const Poly2 nq = inversion_numerator(c.q, deg);

    const Poly2 num1 = t2_minus_s2 * np + minus_2st * nq;
    const Poly2 num2 = minus_2st * np + s2_minus_t2 * nq;

    const auto p_out = divide_out_rho(num1, deg);
    const auto q_out = divide_out_rho(num2, deg);
    if (!p_out || !q_out) {
        throw CertificationError("transported field is not polynomial in the opposite chart");
    }
    return {*p_out, *q_out};
}

PolyVectorField::PolyVectorField(Surface s, std::map<std::string, ChartComponents> charts)
    : surface_(s), charts_(std::move(charts)) {
    rebuild_jacobian_cache();
}

void PolyVectorField::rebuild_jacobian_cache() {
    jac_.clear();
    for (const auto& [id, c] : charts_) {
        jac_[id] = {c.p.dx(), c.p.dy(), c.q.dx(), c.q.dy()};
    }
}

PolyVectorField PolyVectorField::on_plane(Poly2 p, Poly2 q) {
    return PolyVectorField(Surface::plane(), {{"main", ChartComponents{std::move(p), std::move(q)}}});
}

PolyVectorField PolyVectorField::on_torus(Poly2 p, Poly2 q) {
    return PolyVectorField(Surface::torus(), {{"fund", ChartComponents{std::move(p), std::move(q)}}});
}

PolyVectorField PolyVectorField::on_sphere(ChartComponents chart_n, std::optional<ChartComponents> chart_s) {
    if (!chart_s) {
        chart_s = transport(chart_n);
    } else {
        const ChartComponents derived = transport(chart_n);
        if (!(derived == *chart_s)) {
            throw ValidationError(
                "sphere chart components disagree under the stereographic transition: expected p=" +
                derived.p.str("u", "v") + ", q=" + derived.q.str("u", "v"));
        }
    }
    return PolyVectorField(Surface::sphere(), {{"n", std::move(chart_n)}, {"s", std::move(*chart_s)}});
}

PolyVectorField PolyVectorField::zero(const Surface& s) {
    std::map<std::string, ChartComponents> charts;
    for (const auto& id : s.charts()) charts[id] = ChartComponents{};
    return PolyVectorField(s, std::move(charts));
}

const ChartComponents& PolyVectorField::chart(const std::string& id) const {
    const auto it = charts_.find(id);
    if (it == charts_.end()) throw ValidationError("field has no chart '" + id + "'");
    return it->second;
}

bool PolyVectorField::is_zero() const {
    for (const auto& [id, c] : charts_)
        if (!c.is_zero()) return false;
    return true;
}

Eigen::Vector2d PolyVectorField::eval(const std::string& chart_id, const Eigen::Vector2d& pt) const {
    const ChartComponents& c = chart(chart_id);
    Eigen::Vector2d q = pt;
    if (surface_.kind == SurfaceKind::Torus) q = torus_wrap(q);
    return {c.p.eval(q.x(), q.y()), c.q.eval(q.x(), q.y())};
}

Eigen::Matrix2d PolyVectorField::jacobian(const std::string& chart_id, const Eigen::Vector2d& pt) const {
    chart(chart_id); // validates the id
    const auto& d = jac_.at(chart_id);
    Eigen::Vector2d q = pt;
    if (surface_.kind == SurfaceKind::Torus) q = torus_wrap(q);
    Eigen::Matrix2d m;
    m(0, 0) = d[0].eval(q.x(), q.y());
    m(0, 1) = d[1].eval(q.x(), q.y());
    m(1, 0) = d[2].eval(q.x(), q.y());
    m(1, 1) = d[3].eval(q.x(), q.y());
    return m;
}

Rat PolyVectorField::eval_exact_p(const std::string& chart_id, const Rat& x, const Rat& y) const {
    return chart(chart_id).p.eval_exact(x, y);
}

Rat PolyVectorField::eval_exact_q(const std::string& chart_id, const Rat& x, const Rat& y) const {
    return chart(chart_id).q.eval_exact(x, y);
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& o) const {
    if (!(surface_ == o.surface_)) throw ValidationError("cannot add fields on different surfaces");
    std::map<std::string, ChartComponents> charts;
    for (const auto& [id, c] : charts_) {
        const ChartComponents& oc = o.chart(id);
        charts[id] = ChartComponents{c.p + oc.p, c.q + oc.q};
    }
    return PolyVectorField(surface_, std::move(charts));
}

PolyVectorField PolyVectorField::scaled(const Rat& k) const {
    std::map<std::string, ChartComponents> charts;
    for (const auto& [id, c] : charts_) charts[id] = ChartComponents{c.p.scaled(k), c.q.scaled(k)};
    return PolyVectorField(surface_, std::move(charts));
}

bool PolyVectorField::operator==(const PolyVectorField& o) const {
    return surface_ == o.surface_ && charts_ == o.charts_;
}

PolyVectorField field_bracket(const PolyVectorField& x, const PolyVectorField& y) {
    if (!(x.surface() == y.surface())) throw ValidationError("bracket requires fields on the same surface");
    std::map<std::string, ChartComponents> charts;
    for (const auto& id : x.surface().charts()) {
        const ChartComponents& a = x.chart(id);
        const ChartComponents& b = y.chart(id);
        const Poly2 p = a.p * b.p.dx() + a.q * b.p.dy() - (b.p * a.p.dx() + b.q * a.p.dy());
        const Poly2 q = a.p * b.q.dx() + a.q * b.q.dy() - (b.p * a.q.dx() + b.q * a.q.dy());
        charts[id] = ChartComponents{p, q};
    }
    // pushforward commutes with the bracket, so the sphere re-check passes
    if (x.surface().kind == SurfaceKind::Sphere) {
        return PolyVectorField::on_sphere(charts.at("n"), charts.at("s"));
    }
    if (x.surface().kind == SurfaceKind::Torus) {
        return PolyVectorField::on_torus(charts.at("fund").p, charts.at("fund").q);
    }
    return PolyVectorField::on_plane(charts.at("main").p, charts.at("main").q);
}

} // namespace nilfix
