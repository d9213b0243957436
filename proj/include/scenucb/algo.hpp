#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scenucb/env.hpp"
#include "scenucb/gp.hpp"
#include "scenucb/kernel.hpp"

namespace scenucb {

enum class BetaVariant { gp_ucb, scenario_ucb };

/// Exploration weights: 2 log(|X| pi^2 t^2 / (c eps)), with c = 6 for the
/// single-GP loop and c = 3 for the scenario loop.
struct BetaSchedule {
    BetaVariant variant = BetaVariant::scenario_ucb;
    std::size_t grid_size = 1;
    double epsilon = 0.1;

    double operator()(long t) const;
};

double beta(const BetaSchedule& schedule, long t);

struct Selection {
    std::size_t x_index = 0;
    std::size_t scenario_index = 0;
    double ucb = 0.0;
};

/// Max-min over a table of UCB values (rows = grid points, columns =
/// scenarios). Ties go to the lowest index in both directions.
Selection select_max_min(const Eigen::MatrixXd& ucb);

/// argmax over x of min over i of mu^i(x) + sqrt(beta) sigma^i(x); i attains
/// that minimum at x.
Selection select_scenario_ucb(std::span<const GpPosterior> states, double beta_t);

struct Decision {
    long t = 0;
    std::size_t x_index = 0;
    std::optional<std::size_t> scenario_index;  // empty for the single-GP loop
    double ucb = 0.0;
    double y = 0.0;
};

/// Audit record of a run. `sigmas[k]` is the pre-update posterior sigma of the
/// selected scenario at the selected point for step k + 1.
struct RunTrace {
    std::vector<Decision> decisions;
    std::vector<double> sigmas;
    std::vector<double> betas;
    double noise_var = 0.0;
    std::size_t scenario_count = 1;

    std::size_t length() const { return decisions.size(); }
    /// Scenario touched at step k; 0 for the single-GP loop.
    std::size_t scenario_at(std::size_t k) const { return decisions[k].scenario_index.value_or(0); }
};

struct Incumbent {
    std::size_t x_index = 0;
    double value = 0.0;
};

/// Scenario-UCB as a resumable loop: one posterior per sampled scenario, one
/// query and one posterior update per step.
class ScenarioUcb {
public:
    ScenarioUcb(const Grid& grid, std::span<const KernelSpec> kernels, double noise_var, BetaSchedule schedule);

    Decision step(Blackbox& env);
    long iteration() const { return t_; }
    const std::vector<GpPosterior>& posteriors() const { return states_; }
    const RunTrace& trace() const { return trace_; }
    RunTrace take_trace() { return std::move(trace_); }
    /// argmax_x min_i mu^i(x) under the current posteriors.
    Incumbent incumbent() const;

private:
    std::vector<GpPosterior> states_;
    BetaSchedule schedule_;
    RunTrace trace_;
    long t_ = 0;
};

/// Full scenario loop for T steps against the sampled scenarios 0..N-1 of `env`.
RunTrace run_scenario_ucb(Blackbox& env, const Grid& grid, std::span<const KernelSpec> kernels, double noise_var,
                          long horizon, const BetaSchedule& schedule);

/// Single-GP baseline on one fixed scenario of `env`.
RunTrace run_gp_ucb(Blackbox& env, std::size_t scenario_id, const Grid& grid, const KernelSpec& kernel,
                    double noise_var, long horizon, const BetaSchedule& schedule);

}  // namespace scenucb
