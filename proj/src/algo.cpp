#include "scenucb/algo.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "scenucb/errors.hpp"

namespace scenucb {

namespace {

template <typename Fn>
auto annotate(long t, Fn&& fn) {
    try {
        return fn();
    } catch (const NumericalError& e) {
        std::ostringstream msg;
        msg << "iteration " << t << ": " << e.what();
        throw NumericalError(msg.str());
    }
}

}  // namespace

double BetaSchedule::operator()(long t) const {
    detail::require(t >= 1, "beta: t must be at least 1");
    detail::require(epsilon > 0.0 && epsilon < 1.0, "beta: epsilon must lie in (0, 1)");
    detail::require(grid_size >= 1, "beta: grid size must be positive");
    const double c = variant == BetaVariant::scenario_ucb ? 3.0 : 6.0;
    const double td = static_cast<double>(t);
    return 2.0 * std::log(static_cast<double>(grid_size) * std::numbers::pi * std::numbers::pi * td * td /
                          (c * epsilon));
}

double beta(const BetaSchedule& schedule, long t) { return schedule(t); }

Selection select_max_min(const Eigen::MatrixXd& ucb) {
    detail::require(ucb.rows() > 0 && ucb.cols() > 0, "select_max_min: empty UCB table");
    Selection best{0, 0, -std::numeric_limits<double>::infinity()};
    for (Eigen::Index x = 0; x < ucb.rows(); ++x) {
        Eigen::Index arg_min = 0;
        const double row_min = ucb.row(x).minCoeff(&arg_min);
        if (row_min > best.ucb) best = {static_cast<std::size_t>(x), static_cast<std::size_t>(arg_min), row_min};
    }
    return best;
}

Selection select_scenario_ucb(std::span<const GpPosterior> states, double beta_t) {
    detail::require(!states.empty(), "select_scenario_ucb: no scenario states");
    detail::require(beta_t >= 0.0, "select_scenario_ucb: beta must be non-negative");
    const auto m = static_cast<Eigen::Index>(states.front().grid().size());
    const double root_beta = std::sqrt(beta_t);
    Eigen::MatrixXd table(m, static_cast<Eigen::Index>(states.size()));
    for (std::size_t i = 0; i < states.size(); ++i) {
        detail::require(static_cast<Eigen::Index>(states[i].grid().size()) == m,
                        "scenario states disagree on the grid");
        table.col(static_cast<Eigen::Index>(i)) =
            states[i].posterior_mean() + root_beta * states[i].posterior_sigma();
    }
    return select_max_min(table);
}

ScenarioUcb::ScenarioUcb(const Grid& grid, std::span<const KernelSpec> kernels, double noise_var,
                         BetaSchedule schedule)
    : schedule_(schedule) {
    detail::require(!kernels.empty(), "scenario loop needs at least one scenario");
    states_.reserve(kernels.size());
    for (const auto& k : kernels) states_.emplace_back(k, grid, noise_var);
    trace_.noise_var = noise_var;
    trace_.scenario_count = kernels.size();
}

Decision ScenarioUcb::step(Blackbox& env) {
    const long t = ++t_;
    const double beta_t = schedule_(t);
    const Selection sel = select_scenario_ucb(states_, beta_t);
    const double sigma = states_[sel.scenario_index].predict(sel.x_index).sigma;
    const double y = env.query(sel.x_index, sel.scenario_index);
    annotate(t, [&] {
        states_[sel.scenario_index].update({sel.x_index, y, t});
        return 0;
    });
    Decision d{t, sel.x_index, sel.scenario_index, sel.ucb, y};
    trace_.decisions.push_back(d);
    trace_.sigmas.push_back(sigma);
    trace_.betas.push_back(beta_t);
    return d;
}

Incumbent ScenarioUcb::incumbent() const {
    Incumbent best{0, -std::numeric_limits<double>::infinity()};
    const std::size_t m = states_.front().grid().size();
    for (std::size_t x = 0; x < m; ++x) {
        double row_min = std::numeric_limits<double>::infinity();
        for (const auto& s : states_) row_min = std::min(row_min, s.posterior_mean()(static_cast<Eigen::Index>(x)));
        if (row_min > best.value) best = {x, row_min};
    }
    return best;
}

RunTrace run_scenario_ucb(Blackbox& env, const Grid& grid, std::span<const KernelSpec> kernels, double noise_var,
                          long horizon, const BetaSchedule& schedule) {
    detail::require(horizon >= 1, "run length T must be at least 1");
    detail::require(kernels.size() <= env.scenario_count(), "more scenario kernels than environment scenarios");
    detail::require(grid.size() == env.grid_size(), "grid size differs from the environment's");
    ScenarioUcb loop(grid, kernels, noise_var, schedule);
    for (long t = 1; t <= horizon; ++t) loop.step(env);
    return loop.take_trace();
}

RunTrace run_gp_ucb(Blackbox& env, std::size_t scenario_id, const Grid& grid, const KernelSpec& kernel,
                    double noise_var, long horizon, const BetaSchedule& schedule) {
    detail::require(horizon >= 1, "run length T must be at least 1");
    detail::require(scenario_id < env.scenario_count(), "invalid scenario id");
    detail::require(grid.size() == env.grid_size(), "grid size differs from the environment's");

    GpPosterior state(kernel, grid, noise_var);
    RunTrace trace;
    trace.noise_var = noise_var;
    trace.scenario_count = 1;
    const std::size_t m = grid.size();
    for (long t = 1; t <= horizon; ++t) {
        const double beta_t = schedule(t);
        std::size_t best_x = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t x = 0; x < m; ++x) {
            const double u = state.ucb(x, beta_t);
            if (u > best) {
                best = u;
                best_x = x;
            }
        }
        const double sigma = state.predict(best_x).sigma;
        const double y = env.query(best_x, scenario_id);
        annotate(t, [&] {
            state.update({best_x, y, t});
            return 0;
        });
        trace.decisions.push_back({t, best_x, std::nullopt, best, y});
        trace.sigmas.push_back(sigma);
        trace.betas.push_back(beta_t);
    }
    return trace;
}

}  // namespace scenucb
