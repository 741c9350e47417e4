#include "nilfix/scenario.hpp"

#include "nilfix/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace nilfix {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
    throw ValidationError(msg);
}

long long to_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) fail(what + " must be an integer");
    return j.get<long long>();
}

Rat rat_from_entry(const json& num, const json& den, const std::string& what) {
    const long long n = to_int(num, what + " numerator");
    const long long d = to_int(den, what + " denominator");
    if (d == 0) fail(what + " has a zero denominator");
    return Rat(n) / Rat(d);
}

Poly2 parse_poly(const json& j, const std::string& what) {
    if (!j.is_array()) fail(what + " must be an array of [i, j, num, den] terms");
    Poly2::TermMap terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 4) fail(what + " term must be [i, j, num, den]");
        const long long i = to_int(t[0], what + " x-exponent");
        const long long k = to_int(t[1], what + " y-exponent");
        if (i < 0 || k < 0) fail(what + " exponents must be non-negative");
        terms[{static_cast<int>(i), static_cast<int>(k)}] += rat_from_entry(t[2], t[3], what);
    }
    return Poly2(std::move(terms));
}

double to_num(const json& j, const std::string& what) {
    if (!j.is_number()) fail(what + " must be a number");
    return j.get<double>();
}

CurveGeometry parse_geometry(const json& j, const std::string& what) {
    if (j.contains("circle")) {
        const auto& c = j["circle"];
        if (!c.is_array() || c.size() != 3) fail(what + " circle must be [cx, cy, r]");
        return Circle{{to_num(c[0], what), to_num(c[1], what)}, to_num(c[2], what)};
    }
    if (j.contains("polygon")) {
        const auto& p = j["polygon"];
        if (!p.is_array() || p.size() < 3) fail(what + " polygon needs at least 3 vertices");
        Polygon poly;
        for (const auto& v : p) {
            if (!v.is_array() || v.size() != 2) fail(what + " polygon vertex must be [x, y]");
            poly.vertices.emplace_back(to_num(v[0], what), to_num(v[1], what));
        }
        return poly;
    }
    fail(what + " must contain \"circle\" or \"polygon\"");
}

} // namespace

StructureCheck Scenario::algebra_check() const {
    if (!has_algebra) fail("scenario has no algebra block");
    return LieAlgebra::check_structure(algebra_dim, algebra_tensor);
}

LieAlgebra Scenario::algebra() const {
    if (!has_algebra) fail("scenario has no algebra block");
    return LieAlgebra(algebra_dim, algebra_names, algebra_tensor);
}

const PolyVectorField& Scenario::field(const std::string& name) const {
    const auto it = fields.find(name);
    if (it == fields.end()) fail("scenario has no field named '" + name + "'");
    return it->second;
}

const Region& Scenario::region(const std::string& name) const {
    const auto it = regions.find(name);
    if (it == regions.end()) fail("scenario has no region named '" + name + "'");
    return it->second;
}

ActionSpec Scenario::action() const {
    if (generators.empty()) fail("scenario has no generators block");
    std::vector<PolyVectorField> gen_fields;
    for (const auto& n : generators) gen_fields.push_back(field(n));
    return build_action(algebra(), surface, std::move(gen_fields), generators);
}

int Scenario::generator_index(const std::string& field_name) const {
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i] == field_name) return static_cast<int>(i);
    }
    fail("field '" + field_name + "' is not a generator of the action");
}

namespace {
Scenario load_scenario_impl(const json& j);
}

Scenario load_scenario(const json& j) {
    try {
        return load_scenario_impl(j);
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("malformed scenario: ") + e.what());
    }
}

namespace {

Scenario load_scenario_impl(const json& j) {
    if (!j.is_object()) fail("scenario must be a JSON object");
    Scenario s;
    if (j.contains("schema_version")) {
        s.schema_version = static_cast<int>(to_int(j["schema_version"], "schema_version"));
        if (s.schema_version != 1) fail("unsupported schema_version");
    }
    if (j.contains("name")) {
        if (!j["name"].is_string()) fail("name must be a string");
        s.name = j["name"].get<std::string>();
    }

    if (j.contains("surface")) {
        const auto& sj = j["surface"];
        if (!sj.is_object() || !sj.contains("kind")) fail("surface block needs a kind");
        s.surface.kind = surface_kind_from_string(sj["kind"].get<std::string>());
    }

    if (j.contains("algebra")) {
        const auto& a = j["algebra"];
        s.has_algebra = true;
        s.algebra_dim = static_cast<int>(to_int(a.at("dim"), "algebra dim"));
        if (s.algebra_dim < 1) fail("algebra dim must be positive");
        const auto d = static_cast<std::size_t>(s.algebra_dim);
        if (a.contains("names")) {
            for (const auto& n : a["names"]) s.algebra_names.push_back(n.get<std::string>());
            if (s.algebra_names.size() != d) fail("algebra names length must equal dim");
        }
        s.algebra_tensor.assign(d, std::vector<RatVec>(d, RatVec(d, Rat(0))));
        std::set<std::array<long long, 3>> explicit_keys;
        if (a.contains("structure")) {
            for (const auto& e : a["structure"]) {
                if (!e.is_array() || e.size() != 5) fail("structure entry must be [i, j, k, num, den]");
                const long long i = to_int(e[0], "structure i");
                const long long jj = to_int(e[1], "structure j");
                const long long k = to_int(e[2], "structure k");
                if (i < 0 || jj < 0 || k < 0 || i >= s.algebra_dim || jj >= s.algebra_dim || k >= s.algebra_dim) {
                    fail("structure index out of range");
                }
                const Rat v = rat_from_entry(e[3], e[4], "structure constant");
                s.algebra_tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)]
                                [static_cast<std::size_t>(k)] = v;
                explicit_keys.insert({i, jj, k});
            }
            // mirror entries not given explicitly follow by antisymmetry
            for (const auto& key : explicit_keys) {
                const auto [i, jj, k] = key;
                if (i == jj) continue;
                if (explicit_keys.count({jj, i, k}) == 0) {
                    s.algebra_tensor[static_cast<std::size_t>(jj)][static_cast<std::size_t>(i)]
                                    [static_cast<std::size_t>(k)] =
                        -s.algebra_tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)]
                                         [static_cast<std::size_t>(k)];
                }
            }
        }
    }

    if (j.contains("fields")) {
        for (const auto& [fname, fj] : j["fields"].items()) {
            if (!fj.is_object()) fail("field '" + fname + "' must map chart ids to components");
            std::map<std::string, ChartComponents> charts;
            for (const auto& [chart_id, cj] : fj.items()) {
                if (!s.surface.has_chart(chart_id)) {
                    fail("field '" + fname + "' uses unknown chart '" + chart_id + "'");
                }
                ChartComponents cc;
                if (cj.contains("p")) cc.p = parse_poly(cj["p"], "field '" + fname + "' p");
                if (cj.contains("q")) cc.q = parse_poly(cj["q"], "field '" + fname + "' q");
                charts[chart_id] = std::move(cc);
            }
            switch (s.surface.kind) {
            case SurfaceKind::Plane: {
                if (!charts.count("main")) fail("plane field '" + fname + "' needs chart \"main\"");
                s.fields.emplace(fname, PolyVectorField::on_plane(charts["main"].p, charts["main"].q));
                break;
            }
            case SurfaceKind::Torus: {
                if (!charts.count("fund")) fail("torus field '" + fname + "' needs chart \"fund\"");
                s.fields.emplace(fname, PolyVectorField::on_torus(charts["fund"].p, charts["fund"].q));
                break;
            }
            case SurfaceKind::Sphere: {
                if (!charts.count("n")) fail("sphere field '" + fname + "' needs chart \"n\"");
                std::optional<ChartComponents> south;
                if (charts.count("s")) south = charts["s"];
                s.fields.emplace(fname, PolyVectorField::on_sphere(charts["n"], south));
                break;
            }
            }
        }
    }

    if (j.contains("generators")) {
        for (const auto& g : j["generators"]) {
            const std::string gname = g.get<std::string>();
            if (!s.fields.count(gname)) fail("generator '" + gname + "' is not a defined field");
            s.generators.push_back(gname);
        }
        if (s.has_algebra && static_cast<int>(s.generators.size()) != s.algebra_dim) {
            fail("generators block must assign one field per basis element");
        }
    }

    if (j.contains("regions")) {
        for (const auto& [rname, rj] : j["regions"].items()) {
            std::string chart = s.surface.default_chart();
            if (rj.contains("chart")) chart = rj["chart"].get<std::string>();
            if (!s.surface.has_chart(chart)) {
                fail("region '" + rname + "' uses unknown chart '" + chart + "'");
            }
            CurveGeometry outer = parse_geometry(rj, "region '" + rname + "'");
            std::vector<CurveGeometry> holes;
            if (rj.contains("holes")) {
                for (const auto& h : rj["holes"]) {
                    holes.push_back(parse_geometry(h, "region '" + rname + "' hole"));
                }
            }
            s.regions.emplace(rname, Region(chart, std::move(outer), std::move(holes)));
        }
    }

    if (j.contains("tasks")) {
        if (!j["tasks"].is_array()) fail("tasks must be an array");
        static const std::set<std::string> known = {"check-algebra", "check-action", "index",
                                                    "verify-main", "plot"};
        for (const auto& t : j["tasks"]) {
            if (!t.is_object() || !t.contains("command")) fail("task needs a command");
            const std::string cmd = t["command"].get<std::string>();
            if (!known.count(cmd)) fail("unknown task command '" + cmd + "'");
            if (t.contains("field") && !s.fields.count(t["field"].get<std::string>())) {
                fail("task references unknown field '" + t["field"].get<std::string>() + "'");
            }
            if (t.contains("region") && !s.regions.count(t["region"].get<std::string>())) {
                fail("task references unknown region '" + t["region"].get<std::string>() + "'");
            }
        }
        s.tasks = j["tasks"];
    }
    return s;
}

} // namespace

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail("scenario file does not parse as JSON: " + std::string(e.what()));
    }
    return load_scenario(j);
}

json rat_to_json(const Rat& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (num < std::numeric_limits<long long>::min() || num > std::numeric_limits<long long>::max() ||
        den > std::numeric_limits<long long>::max()) {
        fail("rational too large for the report encoding");
    }
    return json::array({num.convert_to<long long>(), den.convert_to<long long>()});
}

namespace {

json poly_to_json(const Poly2& p) {
    json terms = json::array();
    for (const auto& [k, c] : p.terms()) {
        const auto pair = rat_to_json(c);
        terms.push_back(json::array({k.first, k.second, pair[0], pair[1]}));
    }
    return terms;
}

json geometry_to_json(const CurveGeometry& g) {
    json out = json::object();
    if (std::holds_alternative<Circle>(g)) {
        const auto& c = std::get<Circle>(g);
        out["circle"] = json::array({c.center.x(), c.center.y(), c.radius});
    } else {
        json verts = json::array();
        for (const auto& v : std::get<Polygon>(g).vertices) {
            verts.push_back(json::array({v.x(), v.y()}));
        }
        out["polygon"] = verts;
    }
    return out;
}

} // namespace

json scenario_to_json(const Scenario& s) {
    json j = json::object();
    j["schema_version"] = s.schema_version;
    if (!s.name.empty()) j["name"] = s.name;
    if (s.has_algebra) {
        json a = json::object();
        a["dim"] = s.algebra_dim;
        if (!s.algebra_names.empty()) a["names"] = s.algebra_names;
        json entries = json::array();
        for (int i = 0; i < s.algebra_dim; ++i) {
            for (int k = 0; k < s.algebra_dim; ++k) {
                for (int l = 0; l < s.algebra_dim; ++l) {
                    const Rat& v = s.algebra_tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]
                                                   [static_cast<std::size_t>(l)];
                    if (i < k && v != 0) {
                        const auto pair = rat_to_json(v);
                        entries.push_back(json::array({i, k, l, pair[0], pair[1]}));
                    }
                }
            }
        }
        a["structure"] = entries;
        j["algebra"] = a;
    }
    j["surface"] = json::object({{"kind", to_string(s.surface.kind)}});
    if (!s.fields.empty()) {
        json fs = json::object();
        for (const auto& [name, f] : s.fields) {
            json charts = json::object();
            for (const auto& chart_id : s.surface.charts()) {
                const auto& cc = f.chart(chart_id);
                charts[chart_id] = json::object({{"p", poly_to_json(cc.p)}, {"q", poly_to_json(cc.q)}});
            }
            fs[name] = charts;
        }
        j["fields"] = fs;
    }
    if (!s.generators.empty()) j["generators"] = s.generators;
    if (!s.regions.empty()) {
        json rs = json::object();
        for (const auto& [name, r] : s.regions) {
            json rj = json::object();
            rj["chart"] = r.chart();
            for (const auto& [k, v] : geometry_to_json(r.outer().geometry).items()) rj[k] = v;
            if (!r.holes().empty()) {
                json holes = json::array();
                for (const auto& h : r.holes()) holes.push_back(geometry_to_json(h.geometry));
                rj["holes"] = holes;
            }
            rs[name] = rj;
        }
        j["regions"] = rs;
    }
    if (!s.tasks.empty()) j["tasks"] = s.tasks;
    return j;
}

} // namespace nilfix
