#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scenucb/kernel.hpp"
#include "scenucb/rng.hpp"
#include "scenucb/scenario.hpp"

namespace scenucb {

inline constexpr const char* kLibraryVersion = "1.0.0";

/// Experiment settings. Defaults give the standard study: grid 0:0.01:1,
/// lengthscale 0.05 + 0.01 delta, delta ~ U[0,1], N = 20.
///
/// File format: one `key = value` per line, `#` starts a comment. Keys are the
/// field names below (`T` for the horizon); `n_scenarios = auto` derives N from
/// eta, zeta and alpha(T).
struct ExperimentConfig {
    double grid_min = 0.0;
    double grid_max = 1.0;
    double grid_step = 0.01;
    std::vector<double> grid_points;  // overrides min/max/step when non-empty
    std::string kernel = "squared_exponential";
    LengthscaleMap lengthscale{};
    std::string delta_dist = "uniform(0,1)";
    std::optional<long> n_scenarios = 20;  // nullopt: auto
    long horizon = 1000;
    double noise_var = 0.01;
    double epsilon = 0.1;
    double eta = 0.1;
    double zeta = 0.05;
    std::string alpha = "nu:0.1";
    std::uint64_t seed = 1;
    long repetitions = 1;
    std::string out = "out";

    Grid grid() const;
    DeltaDistribution distribution() const;
    RedrawSchedule schedule() const;
    /// N after resolving `auto` against the configured schedule.
    long scenario_count() const;
    long scenario_count(const RedrawSchedule& schedule) const;
    SeedBundle seeds() const { return {seed}; }

    /// Checks every field against the module preconditions. Throws ConfigError
    /// naming the offending key.
    void validate() const;
};

/// Applies one `key = value` assignment. Throws ConfigError on unknown keys or
/// unparsable values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

/// Full-precision key=value rendering; loading it back yields the same config.
/// Derived stream seeds and the library version are appended as informational keys.
std::string to_manifest(const ExperimentConfig& cfg);

}  // namespace scenucb
