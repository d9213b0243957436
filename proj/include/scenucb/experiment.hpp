#pragma once

#include <memory>
#include <string>
#include <vector>

#include "scenucb/algo.hpp"
#include "scenucb/config.hpp"
#include "scenucb/env.hpp"
#include "scenucb/regret.hpp"
#include "scenucb/scenario.hpp"

namespace scenucb {

enum class ExitCode : int { ok = 0, config_error = 2, numerical_error = 3, validation_failure = 4 };

/// Sampled scenario set D_N materialized on the grid, plus the kernels the
/// algorithm is allowed to know about.
struct Environment {
    GroundTruth truth;
    std::vector<KernelSpec> kernels;
};

Environment make_environment(const ExperimentConfig& cfg, long n_scenarios, const SeedBundle& seeds);

struct RunOutput {
    RunTrace trace;
    RegretCurve curve;
    std::vector<RedrawDraw> redraws;
    ScenarioSolution solution;  // J(D_N) without re-draw
};

/// One Scenario-UCB run under `seeds` with the configured alpha schedule.
RunOutput run_once(const ExperimentConfig& cfg, const SeedBundle& seeds);

struct SweepSeries {
    double nu = 1.0;
    long scenario_count = 0;
    std::vector<double> mean_regret;    // mean over repetitions of R^re-draw_t
    std::vector<double> stderr_regret;  // standard error of that mean
    std::vector<double> mean_bound;
    std::vector<std::shared_ptr<const RunTrace>> traces;  // per repetition
    std::vector<RegretCurve> curves;                      // per repetition
};

/// Runs `cfg.repetitions` seeds (master seed + rep) and evaluates each nu's
/// re-draw schedule. When N is fixed the decision trace of a repetition is
/// shared by every nu, since the algorithm never sees the re-draws.
std::vector<SweepSeries> sweep(const ExperimentConfig& cfg, const std::vector<double>& nus);

/// Writes trace.csv, curve.csv, series.dat and manifest.txt into cfg.out.
RunOutput cmd_run(const ExperimentConfig& cfg);

/// Writes curve_nu_<nu>.csv, series_nu_<nu>.dat, aggregate.csv, plot.svg and
/// manifest.txt into cfg.out.
std::vector<SweepSeries> cmd_sweep(const ExperimentConfig& cfg, const std::vector<double>& nus);

/// Side-by-side sample counts for the three formulas.
std::string cmd_sample_complexity(double eta, double zeta, double alpha_T);

/// Filename-friendly nu label ("0.1", "1").
std::string nu_label(double nu);

}  // namespace scenucb
