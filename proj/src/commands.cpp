#include "nilfix/commands.hpp"

#include "nilfix/errors.hpp"
#include "nilfix/scenario.hpp"
#include "nilfix/svg.hpp"

#include <cstdio>
#include <fstream>

namespace nilfix {

namespace {

using json = nlohmann::ordered_json;

json index_to_json(const IndexResult& r) {
    json j = json::object();
    j["value"] = r.value;
    j["certified"] = r.certified;
    j["min_modulus_on_boundary"] = r.min_modulus_on_boundary;
    j["max_angle_step"] = r.max_angle_step;
    j["samples_used"] = r.samples_used;
    return j;
}

json report_header(const char* command, const Scenario& s) {
    json j = json::object();
    j["schema_version"] = 1;
    j["command"] = command;
    if (!s.name.empty()) j["scenario"] = s.name;
    return j;
}

CommandResult validation_failure(const char* command, const std::string& message) {
    CommandResult res;
    res.exit_code = 2;
    res.report = json::object();
    res.report["schema_version"] = 1;
    res.report["command"] = command;
    res.report["error"] = message;
    return res;
}

} // namespace

CommandResult cmd_check_algebra(const std::string& file) {
    Scenario s;
    try {
        s = load_scenario_file(file);
        if (!s.has_algebra) throw ValidationError("scenario has no algebra block");
    } catch (const std::exception& e) {
        return validation_failure("check-algebra", e.what());
    }

    CommandResult res;
    res.report = report_header("check-algebra", s);
    res.report["algebra"] = json::object({{"dim", s.algebra_dim},
                                          {"names", s.algebra_names.empty()
                                                        ? json::array()
                                                        : json(s.algebra_names)}});
    const StructureCheck chk = s.algebra_check();
    res.report["antisymmetry_ok"] = chk.antisymmetry_ok;
    res.report["jacobi_ok"] = chk.jacobi_ok;
    res.report["violations"] = chk.violations;
    if (!chk.ok()) {
        res.exit_code = 1;
        return res;
    }

    const LieAlgebra alg = s.algebra();
    const auto series = lower_central_series(alg);
    json dims = json::array();
    for (const auto& term : series) dims.push_back(term.dim());
    res.report["nilpotent"] = series.back().dim() == 0;
    res.report["lower_central_series_dims"] = dims;

    const Subspace z = center(alg);
    json basis = json::array();
    for (const auto& v : z.basis()) {
        json row = json::array();
        for (const auto& x : v) row.push_back(rat_to_json(x));
        basis.push_back(row);
    }
    res.report["center"] = json::object({{"dim", z.dim()}, {"basis", basis}});
    return res;
}

CommandResult cmd_check_action(const std::string& file) {
    Scenario s;
    try {
        s = load_scenario_file(file);
        if (!s.has_algebra) throw ValidationError("scenario has no algebra block");
        if (s.generators.empty()) throw ValidationError("scenario has no generators block");
        s.algebra(); // algebra must be valid before the homomorphism makes sense
    } catch (const std::exception& e) {
        return validation_failure("check-action", e.what());
    }

    CommandResult res;
    res.report = report_header("check-action", s);
    res.report["surface"] = to_string(s.surface.kind);
    res.report["generators"] = s.generators;
    try {
        s.action();
        res.report["valid"] = true;
    } catch (const ValidationError& e) {
        res.report["valid"] = false;
        res.report["violation"] = e.what();
        res.exit_code = 1;
    }
    return res;
}

CommandResult cmd_index(const std::string& file, const std::string& field, const std::string& region,
                        std::optional<double> flow_t, std::optional<double> modulus_floor) {
    Scenario s;
    try {
        s = load_scenario_file(file);
        s.field(field);
        s.region(region);
    } catch (const std::exception& e) {
        return validation_failure("index", e.what());
    }

    CommandResult res;
    res.report = report_header("index", s);
    res.report["field"] = field;
    res.report["region"] = region;
    res.report["flow_t"] = flow_t ? json(*flow_t) : json(nullptr);

    WindingOptions wopts;
    if (modulus_floor) wopts.modulus_floor = *modulus_floor;
    try {
        IndexResult r;
        if (flow_t) {
            FlowIndexOptions fo;
            fo.winding = wopts;
            r = flow_displacement_index(s.field(field), s.region(region), *flow_t, fo);
        } else {
            r = block_index(s.field(field), s.region(region), wopts);
        }
        res.report["result"] = index_to_json(r);
        res.exit_code = r.certified ? 0 : 1;
    } catch (const BoundaryZeroError& e) {
        res.report["error"] = e.what();
        res.exit_code = 2;
    } catch (const BudgetError& e) {
        res.report["error"] = e.what();
        res.exit_code = 1;
    }
    return res;
}

CommandResult cmd_verify_main(const std::string& file, const std::string& field,
                              const std::string& region, std::optional<double> witness_tol,
                              unsigned seed) {
    Scenario s;
    std::optional<ActionSpec> action;
    int element = 0;
    try {
        s = load_scenario_file(file);
        s.region(region);
        element = s.generator_index(field);
        action = s.action();
    } catch (const std::exception& e) {
        return validation_failure("verify-main", e.what());
    }

    CommandResult res;
    res.report = report_header("verify-main", s);
    res.report["field"] = field;
    res.report["region"] = region;

    VerifyOptions opts;
    if (witness_tol) opts.witness_tol = *witness_tol;
    opts.rng_seed = seed;

    try {
        const VerificationReport rep = verify_essential_block(
            *action, action->algebra.basis_element(element), s.region(region), opts);
        json jr = json::object();
        jr["status"] = to_string(rep.status);
        jr["index"] = rep.index ? index_to_json(*rep.index) : json(nullptr);
        jr["essential"] = rep.essential;
        jr["witness"] = rep.witness ? json(json::array({rep.witness->x(), rep.witness->y()})) : json(nullptr);
        jr["residuals"] = rep.residuals;
        jr["certification"] =
            json::object({{"witness_tol", rep.witness_tol}, {"nilpotent", rep.nilpotent}});
        res.report["report"] = jr;
        res.exit_code = rep.status == VerifyStatus::Inconclusive ? 1 : 0;
    } catch (const BoundaryZeroError& e) {
        res.report["error"] = std::string("region is not isolating: ") + e.what();
        res.exit_code = 2;
    }
    return res;
}

CommandResult cmd_plot(const std::string& file, const std::string& field, const std::string& region) {
    Scenario s;
    try {
        s = load_scenario_file(file);
        s.field(field);
        s.region(region);
    } catch (const std::exception& e) {
        return validation_failure("plot", e.what());
    }

    CommandResult res;
    res.report = report_header("plot", s);
    res.report["field"] = field;
    res.report["region"] = region;

    std::optional<IndexResult> idx;
    std::vector<ZeroCluster> zeros;
    try {
        idx = block_index(s.field(field), s.region(region));
        zeros = find_zeros(s.field(field), s.region(region));
    } catch (const std::exception&) {
        // portrait still renders; the annotation shows n/a
        idx.reset();
        zeros.clear();
    }
    res.svg = render_phase_portrait(s.field(field), s.region(region), zeros, idx);
    res.report["zeros"] = zeros.size();
    res.report["index"] = idx ? json(idx->value) : json(nullptr);
    return res;
}

std::string report_bytes(const nlohmann::ordered_json& report) {
    return report.dump(2) + "\n";
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot open output file: " + tmp);
        out << content;
        if (!out) throw ValidationError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ValidationError("cannot move output into place: " + path);
    }
}

} // namespace nilfix
