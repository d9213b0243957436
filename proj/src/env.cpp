#include "scenucb/env.hpp"

#include <cmath>
#include <sstream>

#include "scenucb/errors.hpp"

namespace scenucb {

Eigen::VectorXd synthesize(const KernelSpec& spec, const Grid& grid, std::uint64_t seed) {
    Eigen::MatrixXd k = kernel_matrix(spec, grid);
    const auto n = k.rows();

    Eigen::LLT<Eigen::MatrixXd> llt;
    bool ok = false;
    for (double jitter : {1e-10, 1e-8}) {
        llt.compute(k + jitter * Eigen::MatrixXd::Identity(n, n));
        if (llt.info() == Eigen::Success) {
            ok = true;
            break;
        }
    }
    if (!ok) {
        std::ostringstream msg;
        msg << "synthesize: Cholesky of the " << n << "x" << n << " prior covariance failed at delta " << spec.delta;
        throw NumericalError(msg.str());
    }

    Engine rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
    return llt.matrixL() * z;
}

GroundTruth::GroundTruth(Grid grid, ScenarioSet scenarios, double noise_var, std::uint64_t noise_seed)
    : grid_(std::move(grid)), scenarios_(std::move(scenarios)), noise_var_(noise_var), noise_rng_(noise_seed) {
    detail::require(noise_var_ >= 0.0, "noise variance must be non-negative");
    detail::require(scenarios_.size() >= 1, "ground truth needs at least one scenario");
    for (const auto& s : scenarios_.scenarios)
        detail::require(static_cast<std::size_t>(s.realization.size()) == grid_.size(),
                        "scenario realization length differs from the grid size");
}

void GroundTruth::check(std::size_t x_index, std::size_t scenario_id) const {
    detail::require(x_index < grid_.size(), "grid index out of range");
    detail::require(scenario_id < scenarios_.size(), "invalid scenario id");
}

double GroundTruth::query(std::size_t x_index, std::size_t scenario_id) {
    check(x_index, scenario_id);
    const double value = scenarios_.scenarios[scenario_id].realization(static_cast<Eigen::Index>(x_index));
    if (noise_var_ == 0.0) return value;
    return value + std::sqrt(noise_var_) * standard_normal_(noise_rng_);
}

double GroundTruth::truth(std::size_t x_index, std::size_t scenario_id) const {
    check(x_index, scenario_id);
    return scenarios_.scenarios[scenario_id].realization(static_cast<Eigen::Index>(x_index));
}

std::vector<Eigen::VectorXd> GroundTruth::truth_tables() const {
    std::vector<Eigen::VectorXd> out;
    out.reserve(scenarios_.size());
    for (const auto& s : scenarios_.scenarios) out.push_back(s.realization);
    return out;
}

}  // namespace scenucb
