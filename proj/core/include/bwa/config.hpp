#pragma once

#include "bwa/mass_profile.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace bwa {

// Validated experiment description; `params` holds the command-specific keys
// after range checks. All runs are deterministic (no seeds anywhere).
struct ExperimentConfig {
    std::string command; // evolve-discrete | evolve-continuum | converge | standing-wave | spectrum
    nlohmann::json params;
    std::filesystem::path output_dir;

    nlohmann::json echo() const; // normalized JSON that reparses to an equal config
};

// Parses and validates a config document. Unknown keys are rejected; physical
// parameters are checked against the module preconditions before any
// computation. Throws config_error with a field-path message.
ExperimentConfig parse_config(const nlohmann::json& doc);

MassProfile mass_from_json(const nlohmann::json& j);
nlohmann::json mass_to_json(const MassProfile& m);

} // namespace bwa
