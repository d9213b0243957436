#include "scenucb/validation.hpp"

#include <cmath>
#include <sstream>

#include "scenucb/algo.hpp"
#include "scenucb/env.hpp"
#include "scenucb/errors.hpp"
#include "scenucb/output.hpp"
#include "scenucb/parallel.hpp"
#include "scenucb/regret.hpp"

namespace scenucb {

namespace {

long resolve_reps(const ValidationSettings& s, long fallback, double p, const std::string& suite) {
    const long reps = s.repetitions > 0 ? s.repetitions : fallback;
    const long need = minimum_repetitions(p);
    if (reps < need) {
        std::ostringstream msg;
        msg << suite << ": " << reps << " repetitions cannot resolve p = " << format_number(p)
            << " at 3 standard errors; need at least " << need;
        throw UnderpoweredError(msg.str(), need);
    }
    return reps;
}

double binomial_se(double p, long n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

struct PopulationRun {
    RunTrace trace;
    std::vector<Eigen::VectorXd> tables;
};

PopulationRun simulate(const ValidationSettings& s, std::size_t rep) {
    const SeedBundle seeds = SeedBundle{s.seed}.repetition(rep);
    Grid grid(s.grid_points);
    ScenarioSet set = draw_scenarios(static_cast<std::size_t>(s.n_scenarios), seeds,
                                     DeltaDistribution::parse(s.delta_dist), grid, s.lengthscale);
    const auto kernels = set.kernels(s.lengthscale);
    GroundTruth gt(grid, std::move(set), s.noise_var, seeds.stream(Stream::noise));
    const BetaSchedule beta{BetaVariant::scenario_ucb, grid.size(), s.epsilon};
    PopulationRun run;
    run.trace = run_scenario_ucb(gt, grid, kernels, s.noise_var, s.horizon, beta);
    run.tables = gt.truth_tables();
    return run;
}

SuiteReport finish(std::string suite, long hits, long reps, double nominal, bool upper, std::string details) {
    SuiteReport r;
    r.suite = std::move(suite);
    r.repetitions = reps;
    r.threshold = nominal;
    r.standard_error = binomial_se(upper ? nominal : 1.0 - nominal, reps);
    r.observed = static_cast<double>(hits) / static_cast<double>(reps);
    r.comparison = upper ? "<=" : ">=";
    r.passed = upper ? r.observed <= nominal + 3.0 * r.standard_error : r.observed >= nominal - 3.0 * r.standard_error;
    r.details = std::move(details);
    return r;
}

}  // namespace

std::string SuiteReport::to_text() const {
    std::ostringstream os;
    os << "suite = " << suite << "\n";
    os << "result = " << (passed ? "PASS" : "FAIL") << "\n";
    os << "observed = " << format_number(observed) << "\n";
    os << "comparison = " << comparison << "\n";
    os << "threshold = " << format_number(threshold) << "\n";
    os << "standard_error = " << format_number(standard_error) << "\n";
    os << "acceptance_limit = "
       << format_number(comparison == "<=" ? threshold + 3.0 * standard_error : threshold - 3.0 * standard_error)
       << "\n";
    os << "repetitions = " << repetitions << "\n";
    if (!details.empty()) os << "details = " << details << "\n";
    return os.str();
}

long minimum_repetitions(double p) {
    detail::require(p > 0.0 && p < 1.0, "minimum_repetitions: p must lie in (0, 1)");
    return static_cast<long>(std::ceil(9.0 * (1.0 - p) / p - 1e-9));
}

SuiteReport validate_concentration(const ValidationSettings& s) {
    const long reps = resolve_reps(s, 200, s.epsilon, "concentration");
    std::vector<char> exceeded(static_cast<std::size_t>(reps), 0);
    parallel_for(exceeded.size(), [&](std::size_t rep) {
        const PopulationRun run = simulate(s, rep);
        const double j = solve_scenario(run.tables).tau_star;
        for (std::size_t k = 0; k < run.trace.length(); ++k) {
            const auto& d = run.trace.decisions[k];
            const double r = j - run.tables[run.trace.scenario_at(k)](static_cast<Eigen::Index>(d.x_index));
            if (r > 2.0 * std::sqrt(run.trace.betas[k]) * run.trace.sigmas[k]) {
                exceeded[rep] = 1;
                break;
            }
        }
    });
    long hits = 0;
    for (char e : exceeded) hits += e;
    std::ostringstream details;
    details << "|X|=" << s.grid_points.size() << " N=" << s.n_scenarios << " T=" << s.horizon
            << " noise_var=" << format_number(s.noise_var) << " eps=" << format_number(s.epsilon);
    return finish("concentration", hits, reps, s.epsilon, true, details.str());
}

SuiteReport validate_bound(const ValidationSettings& s) {
    const long reps = resolve_reps(s, 200, s.epsilon, "bound");
    std::vector<char> exceeded(static_cast<std::size_t>(reps), 0);
    parallel_for(exceeded.size(), [&](std::size_t rep) {
        const PopulationRun run = simulate(s, rep);
        const double j = solve_scenario(run.tables).tau_star;
        const GammaEstimate gamma = empirical_gamma(run.trace, s.noise_var);
        double sum = 0.0;
        for (std::size_t k = 0; k < run.trace.length(); ++k) {
            const auto& d = run.trace.decisions[k];
            sum += j - run.tables[run.trace.scenario_at(k)](static_cast<Eigen::Index>(d.x_index));
            const long t = static_cast<long>(k) + 1;
            const double avg = sum / static_cast<double>(t);
            const double g = gamma.total_by_step[k];
            const double bound = g > 0.0 ? regret_bound(run.trace.betas[k], g, t, s.noise_var)
                                         : std::numeric_limits<double>::infinity();
            if (avg > bound) {
                exceeded[rep] = 1;
                break;
            }
        }
    });
    long hits = 0;
    for (char e : exceeded) hits += e;
    std::ostringstream details;
    details << "|X|=" << s.grid_points.size() << " N=" << s.n_scenarios << " T=" << s.horizon
            << " noise_var=" << format_number(s.noise_var) << " eps=" << format_number(s.epsilon);
    return finish("bound", hits, reps, s.epsilon, true, details.str());
}

SuiteReport validate_violation(const ValidationSettings& s) {
    const long reps = resolve_reps(s, 2000, s.zeta, "violation");
    const long n = sample_count_relaxed(s.eta, s.zeta);
    const double x_hat = s.violation_point;
    auto g = [x_hat](double v) { return (x_hat - v) * (x_hat - v); };

    std::vector<char> violated(static_cast<std::size_t>(reps), 0);
    parallel_for(violated.size(), [&](std::size_t rep) {
        Engine rng = SeedBundle{s.seed}.repetition(rep).engine(Stream::scenarios);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double m = -std::numeric_limits<double>::infinity();
        for (long j = 0; j < n; ++j) m = std::max(m, g(unif(rng)));
        long broken = 0;
        for (long k = 0; k < s.violation_inner; ++k) broken += g(unif(rng)) > m ? 1 : 0;
        const double p_v = static_cast<double>(broken) / static_cast<double>(s.violation_inner);
        violated[rep] = p_v > s.eta ? 1 : 0;
    });
    long hits = 0;
    for (char e : violated) hits += e;
    std::ostringstream details;
    details << "N=" << n << " eta=" << format_number(s.eta) << " inner=" << s.violation_inner
            << " G(x,v)=(x-v)^2 x=" << format_number(x_hat) << " v~U[0,1]";
    return finish("violation", hits, reps, s.zeta, true, details.str());
}

SuiteReport validate_robustness(const ValidationSettings& s) {
    const long reps = resolve_reps(s, 500, s.zeta, "robustness");
    const RedrawSchedule schedule = RedrawSchedule::power(s.robustness_nu, s.horizon);
    const double alpha_T = schedule.alpha(s.horizon);
    const long n = sample_count_redraw(s.eta, s.zeta, alpha_T);
    const std::size_t draws_per_sequence = redraw_times(schedule).size();
    const DeltaDistribution dist = DeltaDistribution::parse(s.delta_dist);
    const Grid grid(s.grid_points);

    std::vector<char> robust(static_cast<std::size_t>(reps), 0);
    std::vector<double> inner_freq(static_cast<std::size_t>(reps), 0.0);
    parallel_for(robust.size(), [&](std::size_t rep) {
        const SeedBundle seeds = SeedBundle{s.seed}.repetition(rep);
        const ScenarioSet set = draw_scenarios(static_cast<std::size_t>(n), seeds, dist, grid, s.lengthscale);
        std::vector<Eigen::VectorXd> tables;
        for (const auto& sc : set.scenarios) tables.push_back(sc.realization);
        const Eigen::VectorXd row_min = scenario_row_minima(tables);
        const double j = row_min.maxCoeff();

        Engine rng = seeds.engine(Stream::redraw);
        long altered = 0;
        for (long k = 0; k < s.robustness_inner; ++k) {
            bool changed = false;
            for (std::size_t d = 0; d < draws_per_sequence; ++d) {
                const double delta = dist.sample(rng);
                const Eigen::VectorXd fresh =
                    synthesize(KernelSpec{KernelFamily::squared_exponential, delta, s.lengthscale}, grid, rng());
                if (row_min.cwiseMin(fresh).maxCoeff() != j) changed = true;
            }
            altered += changed ? 1 : 0;
        }
        inner_freq[rep] = static_cast<double>(altered) / static_cast<double>(s.robustness_inner);
        robust[rep] = inner_freq[rep] <= s.eta ? 1 : 0;
    });
    long hits = 0;
    double mean_inner = 0.0;
    for (std::size_t k = 0; k < robust.size(); ++k) {
        hits += robust[k];
        mean_inner += inner_freq[k];
    }
    mean_inner /= static_cast<double>(reps);
    std::ostringstream details;
    details << "|X|=" << grid.size() << " N=" << n << " alpha(T)=" << format_number(alpha_T)
            << " redraws=" << draws_per_sequence << " inner=" << s.robustness_inner
            << " mean_inner_alter_freq=" << format_number(mean_inner);
    return finish("robustness", hits, reps, 1.0 - s.zeta, false, details.str());
}

SuiteReport run_suite(const std::string& name, const ValidationSettings& s) {
    if (name == "concentration") return validate_concentration(s);
    if (name == "violation") return validate_violation(s);
    if (name == "bound") return validate_bound(s);
    if (name == "robustness") return validate_robustness(s);
    throw ConfigError("suite: unknown suite '" + name + "' (concentration, violation, bound, robustness)");
}

}  // namespace scenucb
