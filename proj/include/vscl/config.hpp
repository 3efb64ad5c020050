#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace vscl {

struct CatalogEntry {
    std::string name;
    std::string claim;               // the mathematical statement targeted
    std::vector<std::string> params;  // accepted keys
    std::string sample_config;       // minimal JSON snippet that validates
};

const std::vector<CatalogEntry>& experiment_catalog();

struct RunOverrides {
    std::string output_dir;  // overrides config "output_dir" when non-empty
    std::uint64_t seed = 0;  // overrides when nonzero
    int jobs = 0;            // overrides when nonzero
};

/// Validates a parsed config against the published schema; throws ConfigError
/// naming the offending key.
void validate_config(const nlohmann::json& config);

/// Executes a config end to end: one report directory per experiment plus a
/// top-level summary.json. Returns the process exit status:
///   0  all verdicts pass
///   1  at least one verdict failed
///   2  configuration error
///   3  solver error
int run_config_file(const std::filesystem::path& config_path,
                    const RunOverrides& overrides = {});

/// Emits the homogenized flux table of the config's flux as CSV
/// (columns p,alpha,xi0); config needs a top-level "cell_table" object.
int run_cell_table(const std::filesystem::path& config_path,
                   const RunOverrides& overrides = {});

/// Builds a shock profile per the config's top-level "shock_build" object and
/// writes profile.csv (x,u,v_lower,v_upper) plus summary.json.
int run_shock_build(const std::filesystem::path& config_path,
                    const RunOverrides& overrides = {});

}  // namespace vscl
