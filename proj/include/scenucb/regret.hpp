#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "scenucb/algo.hpp"
#include "scenucb/env.hpp"
#include "scenucb/kernel.hpp"
#include "scenucb/scenario.hpp"

namespace scenucb {

/// Solution of max_x min_i F(x, d_i), i.e. max tau s.t. F(x, d_i) >= tau for all i.
struct ScenarioSolution {
    std::size_t x_star = 0;
    std::size_t i_star = 0;
    double tau_star = 0.0;
};

/// Exhaustive max-min over truth tables (one vector per scenario, indexed by
/// grid point). Ties: lowest x, then lowest i.
ScenarioSolution solve_scenario(std::span<const Eigen::VectorXd> tables);

/// Per-point minimum over the scenarios; J(D_N plus extra) is then
/// max_x min(row_min(x), extra(x)).
Eigen::VectorXd scenario_row_minima(std::span<const Eigen::VectorXd> tables);

struct RegretCurve {
    std::vector<double> instantaneous;  // J(D_N u d^t) - F(x_t, d_{i_t})
    std::vector<double> average;        // prefix means of `instantaneous`
    std::vector<double> objective;      // J(D_N u d^t) per step
    std::vector<double> bound;          // sqrt(8 beta_t gamma_t / (t log(1 + 1/rho^2)))
    std::vector<std::size_t> redraw_count;  // distinct extra scenarios drawn through t

    std::size_t length() const { return instantaneous.size(); }
};

/// Scenario regret under re-draw. `redraws` must start at t = 1 and be sorted
/// by time; an empty list gives the plain sampled-set variant with J(D_N).
/// F values come from GroundTruth::truth only.
RegretCurve redraw_regret(const RunTrace& trace, const GroundTruth& gt, std::span<const RedrawDraw> redraws);

struct GammaEstimate {
    std::vector<double> per_scenario;  // empirical gamma^i_T at the end of the trace
    std::vector<double> total_by_step;  // gamma_t = sum_i gamma^i_t, t = 1..T
    std::vector<double> bound_first;    // per-scenario eigenvalue shape, T_* = 1 (filled by with_eigen_bounds)
    std::vector<double> bound_second;   // per-scenario eigenvalue shape, T_* = |X|

    double total() const { return total_by_step.empty() ? 0.0 : total_by_step.back(); }
};

/// gamma^i_T = 1/2 sum over steps with i_t = i of log(1 + sigma^2 / rho^2),
/// using the pre-update sigmas recorded in the trace.
GammaEstimate empirical_gamma(const RunTrace& trace, double rho2);

/// Fills bound_first/bound_second from each scenario's kernel spectrum.
void with_eigen_bounds(GammaEstimate& gamma, std::span<const KernelSpectrum> spectra, long horizon, double rho2);

/// rho^-2 (T sum_{j > t_star} lambda_j + t_star log(T sum_j lambda_j)), unit constant.
double gamma_bound(const KernelSpectrum& spectrum, long horizon, double rho2, std::size_t t_star);

/// sqrt(8 beta_T gamma_T / (T log(1 + 1/rho^2))).
double regret_bound(double beta_T, double gamma_T, long horizon, double rho2);

/// sqrt(T^(nu-1) |X| / eta * log(1/zeta) log(|X| T^2 / eps) log(|X| T)), unit constant.
double consistency_scaling(long horizon, double nu, std::size_t grid_size, double eta, double zeta, double epsilon);

/// Vanishing regret is only guaranteed for strictly sub-linear re-draw frequency.
inline bool consistency_guaranteed(double nu) { return nu < 1.0; }

}  // namespace scenucb
