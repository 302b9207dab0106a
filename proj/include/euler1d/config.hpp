#ifndef EULER1D_CONFIG_HPP
#define EULER1D_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "euler1d/diagnostics.hpp"
#include "euler1d/integrator.hpp"
#include "euler1d/models.hpp"

namespace euler1d {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full run specification. Parsing is strict: unknown keys, type mismatches
/// and range violations are errors that name the offending key.
struct SimConfig {
    ModelSpec model;
    int grid_n = 256;
    double domain_length = 2.0 * 3.14159265358979323846;
    InitialSpec initial;
    StepControl control;
    double t_end = 1.0;
    int diag_cadence = 10;
    int snapshot_count = 20;
    DiagnosticsOptions diag;
    std::string output_dir = ".";
    long long seed = 0;
};

SimConfig parse_config(const std::string& text);
SimConfig load_config_file(const std::string& path);

/// JSON echo of a config with every default filled in; parse_config accepts it
/// back unchanged.
std::string config_to_json(const SimConfig& config, int indent = 2);

}  // namespace euler1d

#endif
