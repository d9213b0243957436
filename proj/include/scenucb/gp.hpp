#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <vector>

#include "scenucb/kernel.hpp"

namespace scenucb {

struct Observation {
    std::size_t x_index = 0;
    double y = 0.0;
    long t = 0;
};

struct Prediction {
    double mean = 0.0;
    double sigma = 0.0;
};

/// Exact zero-mean GP posterior over a finite grid.
///
/// The Cholesky factor L of (K_T + rho^2 I) is extended by one row per
/// observation. L itself is not stored: V = L^{-1} K(A, X) and w = L^{-1} y
/// carry everything needed (the new row of L is a column of V), so
/// mean = V^T w and var = diag(K) - colwise |V|^2 are refreshed in O(T |X|).
/// Every `kRefactorInterval` updates, or when the new pivot looks unreliable,
/// everything is rebuilt from scratch.
class GpPosterior {
public:
    static constexpr std::size_t kRefactorInterval = 64;
    static constexpr double kJitter = 1e-10;

    GpPosterior(KernelSpec kernel, Grid grid, double noise_var);

    void update(const Observation& obs);
    Prediction predict(std::size_t x_index) const;
    /// mu + sqrt(beta) * sigma.
    double ucb(std::size_t x_index, double beta) const;

    const KernelSpec& kernel() const { return kernel_; }
    const Grid& grid() const { return *grid_; }
    double noise_var() const { return noise_var_; }
    const std::vector<Observation>& observations() const { return data_; }
    const Eigen::VectorXd& posterior_mean() const { return mean_; }
    const Eigen::VectorXd& posterior_sigma() const { return sigma_; }
    std::size_t refactor_count() const { return refactors_; }

private:
    void extend(const Observation& obs);
    void refactor();
    void refresh_sigma();

    KernelSpec kernel_;
    std::shared_ptr<const Grid> grid_;
    std::shared_ptr<const Eigen::MatrixXd> prior_;  // K(X, X)
    double noise_var_;
    std::vector<Observation> data_;

    Eigen::MatrixXd proj_;  // rows [0, n) hold V, the rest is spare capacity
    Eigen::VectorXd whitened_y_;
    Eigen::VectorXd mean_;
    Eigen::VectorXd var_;
    Eigen::VectorXd sigma_;
    std::size_t since_refactor_ = 0;
    std::size_t refactors_ = 0;
};

/// Functional form: returns a copy of `state` conditioned on one more observation.
GpPosterior gp_update(GpPosterior state, const Observation& obs);

}  // namespace scenucb
