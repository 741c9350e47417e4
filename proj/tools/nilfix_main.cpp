#include "nilfix/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct CommonArgs {
    std::string file;
    std::string field;
    std::string region;
    std::string output;
};

int emit(const nilfix::CommandResult& res, const std::string& output, bool svg_output) {
    const std::string report = nilfix::report_bytes(res.report);
    if (svg_output) {
        if (output.empty()) {
            std::cout << res.svg;
        } else {
            try {
                nilfix::atomic_write(output, res.svg);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
            std::cout << report;
        }
        return res.exit_code;
    }
    std::cout << report;
    if (!output.empty()) {
        try {
            nilfix::atomic_write(output, report);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return res.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-point indices of vector fields and nilpotent Lie algebra actions on surfaces"};
    app.require_subcommand(1);

    CommonArgs a;
    double tol = -1.0;
    double flow_t = 0.0;
    bool has_flow_t = false;
    unsigned seed = 0;

    auto* chk = app.add_subcommand("check-algebra", "Validate structure constants and report nilpotency");
    chk->add_option("file", a.file, "scenario JSON file")->required();
    chk->add_option("-o,--output", a.output, "write the JSON report here as well");

    auto* act = app.add_subcommand("check-action", "Verify the generator assignment is a homomorphism");
    act->add_option("file", a.file, "scenario JSON file")->required();
    act->add_option("-o,--output", a.output, "write the JSON report here as well");

    auto* idx = app.add_subcommand("index", "Boundary degree of a field over a region");
    idx->add_option("file", a.file, "scenario JSON file")->required();
    idx->add_option("--field", a.field, "field name")->required();
    idx->add_option("--region", a.region, "region name")->required();
    idx->add_option("--flow-t", flow_t, "compute the displacement index of the time-t map instead")
        ->check(CLI::NonNegativeNumber);
    idx->add_option("--tol", tol, "boundary modulus floor");
    idx->add_option("-o,--output", a.output, "write the JSON report here as well");

    auto* ver = app.add_subcommand("verify-main", "Run the fixed-point verification pipeline");
    ver->add_option("file", a.file, "scenario JSON file")->required();
    ver->add_option("--field", a.field, "generator field name")->required();
    ver->add_option("--region", a.region, "region name")->required();
    ver->add_option("--tol", tol, "witness residual tolerance");
    ver->add_option("--seed", seed, "seed for the multi-start witness search");
    ver->add_option("-o,--output", a.output, "write the JSON report here as well");

    auto* plt = app.add_subcommand("plot", "Render a phase portrait as SVG");
    plt->add_option("file", a.file, "scenario JSON file")->required();
    plt->add_option("--field", a.field, "field name")->required();
    plt->add_option("--region", a.region, "region name")->required();
    plt->add_option("-o,--output", a.output, "output SVG path")->required();

    idx->callback([&] { has_flow_t = idx->count("--flow-t") > 0; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    const std::optional<double> tol_opt = tol >= 0.0 ? std::optional<double>(tol) : std::nullopt;

    if (chk->parsed()) return emit(nilfix::cmd_check_algebra(a.file), a.output, false);
    if (act->parsed()) return emit(nilfix::cmd_check_action(a.file), a.output, false);
    if (idx->parsed()) {
        const std::optional<double> t_opt = has_flow_t ? std::optional<double>(flow_t) : std::nullopt;
        return emit(nilfix::cmd_index(a.file, a.field, a.region, t_opt, tol_opt), a.output, false);
    }
    if (ver->parsed()) {
        return emit(nilfix::cmd_verify_main(a.file, a.field, a.region, tol_opt, seed), a.output, false);
    }
    if (plt->parsed()) return emit(nilfix::cmd_plot(a.file, a.field, a.region), a.output, true);
    return 2;
}
