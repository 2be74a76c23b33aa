// config.hpp: run configuration for the CLI. Flat JSON config files with
// exactly these field names; unknown keys are rejected so typos in physics
// parameters cannot pass silently. Precedence: command-line --set overrides
// file values, file values override defaults.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otto/errors.hpp"
#include "otto/model.hpp"

namespace otto::cli {

enum class Command { cycle, sweep, adiabatic, validate };

struct RunConfig {
    // engine parameters
    double g = 0.2;
    double b_h = 10.0;
    double b_l = 0.01;
    double omega = 1.0;
    double k = 0.1;
    double kt_hot = 1.0;
    double tau = 5.0;
    int steps = 5000;
    std::optional<double> meas_cost; // defaults to kt_hot * ln 2 when unset
    model::ZConvention z_convention = model::ZConvention::transport;

    // sweep grid
    double b_h_min = 0.01;
    double b_h_max = 10.0;
    int n_points = 200;

    // ramp study
    std::vector<double> tau_list = {1.0, 5.0, 25.0};

    // output
    std::string output_path;          // empty = stdout
    std::string output_format = "csv";
    std::uint64_t seed = 12345;

    // Defaults reproduce the reference parameter sets; the ramp study uses
    // a cold field of 1 so a bare invocation emits the reference ramp.
    static RunConfig defaults(Command cmd);

    // Throws ConfigError on invalid values (delegates physics invariants
    // to EngineParams::validate).
    void validate() const;

    model::EngineParams engine_params() const;
    double resolved_meas_cost() const;
};

// Parses a flat JSON object; throws ConfigError on unknown keys or type
// mismatches.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Applies one "key=value" assignment; same key set as the config file.
void apply_set(RunConfig& cfg, const std::string& assignment);

std::string to_string(model::ZConvention c);

} // namespace otto::cli
