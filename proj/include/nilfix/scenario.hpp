#pragma once

#include "nilfix/action.hpp"
#include "nilfix/lie_algebra.hpp"
#include "nilfix/region.hpp"
#include "nilfix/vector_field.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace nilfix {

/// Parsed scenario file.  The algebra block is kept in raw form so a front
/// end can distinguish "file does not parse" from "algebra is invalid";
/// fields and regions are fully validated at load time.
struct Scenario {
    int schema_version = 1;
    std::string name;

    bool has_algebra = false;
    int algebra_dim = 0;
    std::vector<std::string> algebra_names;
    LieAlgebra::StructureTensor algebra_tensor;

    Surface surface = Surface::plane();
    std::map<std::string, PolyVectorField> fields;
    std::vector<std::string> generators; // field name per basis index
    std::map<std::string, Region> regions;
    nlohmann::ordered_json tasks = nlohmann::ordered_json::array();

    StructureCheck algebra_check() const;
    LieAlgebra algebra() const; // throws when absent or invalid

    const PolyVectorField& field(const std::string& name) const;
    const Region& region(const std::string& name) const;

    /// Builds the action from the generators block (homomorphism verified).
    ActionSpec action() const;

    /// Index of the basis element whose generator field is `field_name`.
    int generator_index(const std::string& field_name) const;
};

Scenario load_scenario(const nlohmann::ordered_json& j);
Scenario load_scenario_file(const std::string& path);

/// Normal-form serialization; parsing the output yields a scenario that
/// serializes to the same JSON.
nlohmann::ordered_json scenario_to_json(const Scenario& s);

/// Rational as an exact [numerator, denominator] pair.
nlohmann::ordered_json rat_to_json(const Rat& r);

} // namespace nilfix
