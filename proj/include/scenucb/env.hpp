#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "scenucb/kernel.hpp"
#include "scenucb/rng.hpp"
#include "scenucb/scenario.hpp"

namespace scenucb {

/// One draw from N(0, K) over the grid, K = kernel_matrix(spec, grid).
/// Cholesky with 1e-10 diagonal jitter, retried once at 1e-8.
Eigen::VectorXd synthesize(const KernelSpec& spec, const Grid& grid, std::uint64_t seed);

/// The only view of the environment the optimization loops get: noisy queries.
class Blackbox {
public:
    virtual ~Blackbox() = default;
    virtual double query(std::size_t x_index, std::size_t scenario_id) = 0;
    virtual std::size_t grid_size() const = 0;
    virtual std::size_t scenario_count() const = 0;
};

/// Materialized realizations of the sampled scenarios plus a measurement-noise stream.
class GroundTruth final : public Blackbox {
public:
    GroundTruth(Grid grid, ScenarioSet scenarios, double noise_var, std::uint64_t noise_seed);

    /// realization + N(0, noise_var); advances only the noise stream.
    double query(std::size_t x_index, std::size_t scenario_id) override;
    /// Noiseless F(x, d_i). Reserved for regret evaluation.
    double truth(std::size_t x_index, std::size_t scenario_id) const;

    std::size_t grid_size() const override { return grid_.size(); }
    std::size_t scenario_count() const override { return scenarios_.size(); }
    const Grid& grid() const { return grid_; }
    const ScenarioSet& scenarios() const { return scenarios_; }
    double noise_var() const { return noise_var_; }
    std::vector<Eigen::VectorXd> truth_tables() const;

private:
    void check(std::size_t x_index, std::size_t scenario_id) const;

    Grid grid_;
    ScenarioSet scenarios_;
    double noise_var_;
    Engine noise_rng_;
    std::normal_distribution<double> standard_normal_{0.0, 1.0};
};

}  // namespace scenucb
