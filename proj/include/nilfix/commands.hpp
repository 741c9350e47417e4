#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace nilfix {

/// Outcome of one CLI command: the exit code per the documented contract,
/// the JSON report, and (for plot) the SVG body.
struct CommandResult {
    int exit_code = 0;
    nlohmann::ordered_json report;
    std::string svg;
};

/// Exit codes: 0 valid algebra, 1 invariant violations, 2 file/parse errors.
CommandResult cmd_check_algebra(const std::string& file);

/// Exit codes: 0 valid action, 1 homomorphism violation, 2 file/parse errors.
CommandResult cmd_check_action(const std::string& file);

/// Boundary degree (or, with flow_t, the displacement index of the time-t
/// map).  Exit codes: 0 certified, 1 uncertified, 2 boundary-zero or
/// validation errors.
CommandResult cmd_index(const std::string& file, const std::string& field, const std::string& region,
                        std::optional<double> flow_t = std::nullopt,
                        std::optional<double> modulus_floor = std::nullopt);

/// Full verification pipeline.  Exit codes: 0 for VERIFIED, NOT_ESSENTIAL
/// and NOT_APPLICABLE, 1 for INCONCLUSIVE, 2 for validation errors.
CommandResult cmd_verify_main(const std::string& file, const std::string& field,
                              const std::string& region,
                              std::optional<double> witness_tol = std::nullopt, unsigned seed = 0);

/// Phase portrait; the SVG body lands in CommandResult::svg.
CommandResult cmd_plot(const std::string& file, const std::string& field, const std::string& region);

/// Serializes the report (2-space indent, trailing newline) exactly as the
/// CLI writes it; golden tests pin these bytes.
std::string report_bytes(const nlohmann::ordered_json& report);

/// Writes content atomically (temp file + rename).  Throws on I/O failure.
void atomic_write(const std::string& path, const std::string& content);

} // namespace nilfix
