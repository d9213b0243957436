#include "scenucb/regret.hpp"

#include <cmath>
#include <limits>

#include "scenucb/errors.hpp"

namespace scenucb {

ScenarioSolution solve_scenario(std::span<const Eigen::VectorXd> tables) {
    detail::require(!tables.empty(), "solve_scenario: no scenarios");
    const Eigen::Index m = tables.front().size();
    detail::require(m > 0, "solve_scenario: empty truth table");
    for (const auto& t : tables) detail::require(t.size() == m, "solve_scenario: tables differ in length");

    ScenarioSolution best{0, 0, -std::numeric_limits<double>::infinity()};
    for (Eigen::Index x = 0; x < m; ++x) {
        std::size_t arg_min = 0;
        double row_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < tables.size(); ++i) {
            if (tables[i](x) < row_min) {
                row_min = tables[i](x);
                arg_min = i;
            }
        }
        if (row_min > best.tau_star) best = {static_cast<std::size_t>(x), arg_min, row_min};
    }
    return best;
}

Eigen::VectorXd scenario_row_minima(std::span<const Eigen::VectorXd> tables) {
    detail::require(!tables.empty(), "scenario_row_minima: no scenarios");
    Eigen::VectorXd out = tables.front();
    for (std::size_t i = 1; i < tables.size(); ++i) {
        detail::require(tables[i].size() == out.size(), "scenario_row_minima: tables differ in length");
        out = out.cwiseMin(tables[i]);
    }
    return out;
}

RegretCurve redraw_regret(const RunTrace& trace, const GroundTruth& gt, std::span<const RedrawDraw> redraws) {
    const std::size_t T = trace.length();
    detail::require(trace.sigmas.size() == T && trace.betas.size() == T, "redraw_regret: malformed trace");
    if (!redraws.empty()) detail::require(redraws.front().time == 1, "redraw_regret: first re-draw must be at t = 1");
    for (std::size_t k = 1; k < redraws.size(); ++k)
        detail::require(redraws[k].time > redraws[k - 1].time, "redraw_regret: re-draw times must increase");

    const auto tables = gt.truth_tables();
    const Eigen::VectorXd row_min = scenario_row_minima(tables);
    const double j_base = row_min.maxCoeff();
    for (const auto& r : redraws)
        detail::require(r.scenario.realization.size() == row_min.size(),
                        "redraw_regret: re-draw realization length differs from the grid size");

    const GammaEstimate gamma = empirical_gamma(trace, trace.noise_var);

    RegretCurve curve;
    curve.instantaneous.reserve(T);
    curve.average.reserve(T);
    curve.objective.reserve(T);
    curve.bound.reserve(T);
    curve.redraw_count.reserve(T);

    std::size_t next = 0;
    double j_active = j_base;
    double sum = 0.0;
    for (std::size_t k = 0; k < T; ++k) {
        const long t = static_cast<long>(k) + 1;
        bool fresh = false;
        while (next < redraws.size() && redraws[next].time <= t) {
            ++next;
            fresh = true;
        }
        if (fresh) j_active = row_min.cwiseMin(redraws[next - 1].scenario.realization).maxCoeff();
        const std::size_t count = next;
        const auto& d = trace.decisions[k];
        const double f = gt.truth(d.x_index, trace.scenario_at(k));
        const double r = j_active - f;
        sum += r;
        curve.instantaneous.push_back(r);
        curve.average.push_back(sum / static_cast<double>(t));
        curve.objective.push_back(j_active);
        curve.redraw_count.push_back(count);
        // A zero information gain (sigma clamped to 0) leaves the bound undefined.
        const double g = gamma.total_by_step[k];
        curve.bound.push_back(g > 0.0 ? regret_bound(trace.betas[k], g, t, trace.noise_var)
                                      : std::numeric_limits<double>::infinity());
    }
    return curve;
}

GammaEstimate empirical_gamma(const RunTrace& trace, double rho2) {
    detail::require(rho2 > 0.0, "empirical_gamma: rho^2 must be positive");
    GammaEstimate out;
    out.per_scenario.assign(trace.scenario_count, 0.0);
    out.total_by_step.reserve(trace.length());
    double total = 0.0;
    for (std::size_t k = 0; k < trace.length(); ++k) {
        const double s = trace.sigmas[k];
        const double term = 0.5 * std::log1p(s * s / rho2);
        const std::size_t i = trace.scenario_at(k);
        detail::require(i < out.per_scenario.size(), "empirical_gamma: scenario index out of range");
        out.per_scenario[i] += term;
        total += term;
        out.total_by_step.push_back(total);
    }
    return out;
}

void with_eigen_bounds(GammaEstimate& gamma, std::span<const KernelSpectrum> spectra, long horizon, double rho2) {
    gamma.bound_first.clear();
    gamma.bound_second.clear();
    for (const auto& s : spectra) {
        gamma.bound_first.push_back(gamma_bound(s, horizon, rho2, 1));
        gamma.bound_second.push_back(gamma_bound(s, horizon, rho2, s.eigenvalues.size()));
    }
}

double gamma_bound(const KernelSpectrum& spectrum, long horizon, double rho2, std::size_t t_star) {
    const std::size_t m = spectrum.eigenvalues.size();
    detail::require(m >= 1, "gamma_bound: empty spectrum");
    detail::require(t_star >= 1 && t_star <= m, "gamma_bound: t_star must lie in 1..|X|");
    detail::require(horizon >= 1, "gamma_bound: T must be at least 1");
    detail::require(rho2 > 0.0, "gamma_bound: rho^2 must be positive");
    double tail = 0.0;
    for (std::size_t j = t_star; j < m; ++j) tail += spectrum.eigenvalues[j];
    const double T = static_cast<double>(horizon);
    return (T * tail + static_cast<double>(t_star) * std::log(T * spectrum.sum())) / rho2;
}

double regret_bound(double beta_T, double gamma_T, long horizon, double rho2) {
    detail::require(beta_T > 0.0 && gamma_T > 0.0 && horizon >= 1 && rho2 > 0.0,
                    "regret_bound: all arguments must be positive");
    return std::sqrt(8.0 * beta_T * gamma_T / (static_cast<double>(horizon) * std::log1p(1.0 / rho2)));
}

double consistency_scaling(long horizon, double nu, std::size_t grid_size, double eta, double zeta, double epsilon) {
    detail::require(horizon >= 1, "consistency_scaling: T must be at least 1");
    detail::require(nu >= 0.0 && nu <= 1.0, "consistency_scaling: nu must lie in [0, 1]");
    detail::require(grid_size >= 1, "consistency_scaling: empty grid");
    detail::require(eta > 0.0 && eta < 1.0 && zeta > 0.0 && zeta < 1.0 && epsilon > 0.0 && epsilon < 1.0,
                    "consistency_scaling: eta, zeta, epsilon must lie in (0, 1)");
    const double T = static_cast<double>(horizon);
    const double X = static_cast<double>(grid_size);
    const double alpha_T = std::pow(T, nu);
    return std::sqrt(alpha_T * X / (eta * T) * std::log(1.0 / zeta) * std::log(X * T * T / epsilon) *
                     std::log(X * T));
}

}  // namespace scenucb
