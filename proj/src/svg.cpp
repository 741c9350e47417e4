#include "nilfix/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace nilfix {

std::string fmt_num(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

namespace {

constexpr int kCanvas = 640;
constexpr double kPad = 40.0;
constexpr int kGrid = 24;

struct Mapper {
    Eigen::Vector2d lo;
    double scale;
    double height;

    Eigen::Vector2d operator()(const Eigen::Vector2d& p) const {
        return {kPad + (p.x() - lo.x()) * scale, height - kPad - (p.y() - lo.y()) * scale};
    }
    double len(double world) const { return world * scale; }
};

void draw_geometry(std::ostringstream& os, const Mapper& map, const CurveGeometry& g) {
    if (std::holds_alternative<Circle>(g)) {
        const auto& c = std::get<Circle>(g);
        const Eigen::Vector2d s = map(c.center);
        os << "<circle cx=\"" << fmt_num(s.x()) << "\" cy=\"" << fmt_num(s.y()) << "\" r=\""
           << fmt_num(map.len(c.radius)) << "\"/>\n";
        return;
    }
    const auto& poly = std::get<Polygon>(g).vertices;
    os << "<path d=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Eigen::Vector2d s = map(poly[i]);
        os << (i == 0 ? "M" : "L") << fmt_num(s.x()) << " " << fmt_num(s.y());
    }
    os << "Z\"/>\n";
}

} // namespace

std::string render_phase_portrait(const PolyVectorField& field, const Region& region,
                                  const std::vector<ZeroCluster>& zeros,
                                  const std::optional<IndexResult>& index) {
    const BoundingBox bb = region.bbox();
    const double w = bb.hi.x() - bb.lo.x();
    const double h = bb.hi.y() - bb.lo.y();
    const double span = std::max(w, h);
    Mapper map{bb.lo, (kCanvas - 2.0 * kPad) / span, static_cast<double>(kCanvas)};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
       << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas << "\">\n";
    os << "<rect width=\"" << kCanvas << "\" height=\"" << kCanvas << "\" fill=\"#ffffff\"/>\n";

    // quiver glyphs, normalized to the largest sampled modulus
    struct Glyph {
        Eigen::Vector2d at;
        Eigen::Vector2d dir;
        double norm;
    };
    std::vector<Glyph> glyphs;
    double max_norm = 0.0;
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            const Eigen::Vector2d p(bb.lo.x() + (i + 0.5) / kGrid * w, bb.lo.y() + (j + 0.5) / kGrid * h);
            if (!region.contains(p)) continue;
            const Eigen::Vector2d v = field.eval(region.chart(), p);
            const double n = v.norm();
            glyphs.push_back({p, v, n});
            max_norm = std::max(max_norm, n);
        }
    }
    const double cell = span / kGrid;
    os << "<g stroke=\"#4477aa\" stroke-width=\"1\">\n";
    for (const auto& g : glyphs) {
        if (g.norm == 0.0 || max_norm == 0.0) continue;
        const Eigen::Vector2d tip = g.at + g.dir * (0.8 * cell * (g.norm / max_norm) / g.norm);
        const Eigen::Vector2d a = map(g.at);
        const Eigen::Vector2d b = map(tip);
        os << "<line x1=\"" << fmt_num(a.x()) << "\" y1=\"" << fmt_num(a.y()) << "\" x2=\""
           << fmt_num(b.x()) << "\" y2=\"" << fmt_num(b.y()) << "\"/>\n";
        // arrowhead: short back-strokes at the tip
        const Eigen::Vector2d d = (b - a).normalized();
        const Eigen::Vector2d n(-d.y(), d.x());
        const Eigen::Vector2d w1 = b - 3.0 * d + 2.0 * n;
        const Eigen::Vector2d w2 = b - 3.0 * d - 2.0 * n;
        os << "<line x1=\"" << fmt_num(b.x()) << "\" y1=\"" << fmt_num(b.y()) << "\" x2=\""
           << fmt_num(w1.x()) << "\" y2=\"" << fmt_num(w1.y()) << "\"/>\n";
        os << "<line x1=\"" << fmt_num(b.x()) << "\" y1=\"" << fmt_num(b.y()) << "\" x2=\""
           << fmt_num(w2.x()) << "\" y2=\"" << fmt_num(w2.y()) << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g stroke=\"#222222\" stroke-width=\"2\" fill=\"none\">\n";
    draw_geometry(os, map, region.outer().geometry);
    for (const auto& hole : region.holes()) draw_geometry(os, map, hole.geometry);
    os << "</g>\n";

    os << "<g stroke=\"#cc3311\" fill=\"none\" stroke-dasharray=\"4 3\">\n";
    for (const auto& z : zeros) {
        const Eigen::Vector2d c = map(z.location);
        os << "<circle cx=\"" << fmt_num(c.x()) << "\" cy=\"" << fmt_num(c.y()) << "\" r=\""
           << fmt_num(map.len(z.radius)) << "\"/>\n";
    }
    os << "</g>\n<g fill=\"#cc3311\">\n";
    for (const auto& z : zeros) {
        const Eigen::Vector2d c = map(z.location);
        os << "<circle cx=\"" << fmt_num(c.x()) << "\" cy=\"" << fmt_num(c.y()) << "\" r=\"3\"/>\n";
    }
    os << "</g>\n";

    os << "<text x=\"12\" y=\"24\" font-family=\"monospace\" font-size=\"16\" fill=\"#000000\">";
    if (index) {
        os << "index = " << index->value << (index->certified ? "" : " (uncertified)");
    } else {
        os << "index = n/a";
    }
    os << "</text>\n</svg>\n";
    return os.str();
}

} // namespace nilfix
