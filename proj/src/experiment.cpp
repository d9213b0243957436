#include "scenucb/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <map>
#include <sstream>

#include "scenucb/errors.hpp"
#include "scenucb/output.hpp"
#include "scenucb/parallel.hpp"

namespace scenucb {

namespace {

BetaSchedule scenario_beta(const ExperimentConfig& cfg, std::size_t grid_size) {
    return {BetaVariant::scenario_ucb, grid_size, cfg.epsilon};
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("out: cannot create directory '" + dir + "': " + ec.message());
}

struct RepRun {
    std::shared_ptr<const RunTrace> trace;
    std::shared_ptr<const Environment> env;
};

RepRun run_trace(const ExperimentConfig& cfg, long n, const SeedBundle& seeds) {
    auto env = std::make_shared<Environment>(make_environment(cfg, n, seeds));
    const Grid& grid = env->truth.grid();
    auto trace = std::make_shared<RunTrace>(run_scenario_ucb(env->truth, grid, env->kernels, cfg.noise_var,
                                                             cfg.horizon, scenario_beta(cfg, grid.size())));
    return {std::move(trace), std::move(env)};
}

}  // namespace

Environment make_environment(const ExperimentConfig& cfg, long n_scenarios, const SeedBundle& seeds) {
    detail::require(n_scenarios >= 1, "make_environment: need at least one scenario");
    Grid grid = cfg.grid();
    ScenarioSet set =
        draw_scenarios(static_cast<std::size_t>(n_scenarios), seeds, cfg.distribution(), grid, cfg.lengthscale);
    std::vector<KernelSpec> kernels = set.kernels(cfg.lengthscale);
    return {GroundTruth(std::move(grid), std::move(set), cfg.noise_var, seeds.stream(Stream::noise)),
            std::move(kernels)};
}

RunOutput run_once(const ExperimentConfig& cfg, const SeedBundle& seeds) {
    const RedrawSchedule schedule = cfg.schedule();
    const RepRun rep = run_trace(cfg, cfg.scenario_count(schedule), seeds);
    RunOutput out;
    out.trace = *rep.trace;
    const Grid& grid = rep.env->truth.grid();
    out.redraws = draw_redraw_sequence(schedule, seeds, cfg.distribution(), grid, cfg.lengthscale);
    out.curve = redraw_regret(out.trace, rep.env->truth, out.redraws);
    const auto tables = rep.env->truth.truth_tables();
    out.solution = solve_scenario(tables);
    return out;
}

std::vector<SweepSeries> sweep(const ExperimentConfig& cfg, const std::vector<double>& nus) {
    if (nus.empty()) throw ConfigError("nu: list must not be empty");
    std::vector<RedrawSchedule> schedules;
    std::vector<SweepSeries> series(nus.size());
    for (std::size_t v = 0; v < nus.size(); ++v) {
        if (!(nus[v] > 0.0 && nus[v] <= 1.0)) throw ConfigError("nu: every value must lie in (0, 1]");
        schedules.push_back(RedrawSchedule::power(nus[v], cfg.horizon));
        series[v].nu = nus[v];
        series[v].scenario_count = cfg.scenario_count(schedules.back());
        series[v].traces.resize(static_cast<std::size_t>(cfg.repetitions));
        series[v].curves.resize(static_cast<std::size_t>(cfg.repetitions));
    }

    parallel_for(static_cast<std::size_t>(cfg.repetitions), [&](std::size_t rep) {
        const SeedBundle seeds = cfg.seeds().repetition(rep);
        std::map<long, RepRun> by_n;
        for (std::size_t v = 0; v < nus.size(); ++v) {
            const long n = series[v].scenario_count;
            auto it = by_n.find(n);
            if (it == by_n.end()) it = by_n.emplace(n, run_trace(cfg, n, seeds)).first;
            const RepRun& run = it->second;
            const auto redraws =
                draw_redraw_sequence(schedules[v], seeds, cfg.distribution(), run.env->truth.grid(), cfg.lengthscale);
            series[v].traces[rep] = run.trace;
            series[v].curves[rep] = redraw_regret(*run.trace, run.env->truth, redraws);
        }
    });

    const auto T = static_cast<std::size_t>(cfg.horizon);
    const double reps = static_cast<double>(cfg.repetitions);
    for (auto& s : series) {
        s.mean_regret.assign(T, 0.0);
        s.stderr_regret.assign(T, 0.0);
        s.mean_bound.assign(T, 0.0);
        for (std::size_t k = 0; k < T; ++k) {
            double sum = 0.0, sum_bound = 0.0;
            for (const auto& c : s.curves) {
                sum += c.average[k];
                sum_bound += c.bound[k];
            }
            const double mean = sum / reps;
            double sq = 0.0;
            for (const auto& c : s.curves) sq += (c.average[k] - mean) * (c.average[k] - mean);
            s.mean_regret[k] = mean;
            s.mean_bound[k] = sum_bound / reps;
            s.stderr_regret[k] = cfg.repetitions > 1 ? std::sqrt(sq / (reps - 1.0) / reps) : 0.0;
        }
    }
    return series;
}

RunOutput cmd_run(const ExperimentConfig& cfg) {
    cfg.validate();
    RunOutput out = run_once(cfg, cfg.seeds());
    ensure_dir(cfg.out);

    std::ostringstream curve, trace, series;
    write_curve_csv(curve, out.trace, out.curve);
    write_trace_csv(trace, out.trace);
    Series s{"R_redraw", {}, out.curve.average};
    for (std::size_t k = 0; k < out.trace.length(); ++k) s.x.push_back(static_cast<double>(k + 1));
    write_series(series, s);

    write_file(join(cfg.out, "curve.csv"), curve.str());
    write_file(join(cfg.out, "trace.csv"), trace.str());
    write_file(join(cfg.out, "series.dat"), series.str());
    write_file(join(cfg.out, "manifest.txt"), to_manifest(cfg));
    return out;
}

std::string nu_label(double nu) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", nu);
    return buf;
}

std::vector<SweepSeries> cmd_sweep(const ExperimentConfig& cfg, const std::vector<double>& nus) {
    cfg.validate();
    auto result = sweep(cfg, nus);
    ensure_dir(cfg.out);

    std::ostringstream aggregate;
    aggregate << "nu,t,n_scenarios,repetitions,mean_r_redraw_avg,stderr_r_redraw_avg,mean_bound\n";
    std::vector<Series> plot;
    for (const auto& s : result) {
        const std::string label = nu_label(s.nu);
        std::ostringstream curves;
        for (std::size_t rep = 0; rep < s.curves.size(); ++rep)
            write_curve_csv(curves, *s.traces[rep], s.curves[rep], "rep", std::to_string(rep), rep == 0);
        write_file(join(cfg.out, "curve_nu_" + label + ".csv"), curves.str());

        Series line{"nu=" + label, {}, s.mean_regret};
        for (std::size_t k = 0; k < s.mean_regret.size(); ++k) {
            line.x.push_back(static_cast<double>(k + 1));
            aggregate << label << ',' << k + 1 << ',' << s.scenario_count << ',' << cfg.repetitions << ','
                      << format_number(s.mean_regret[k]) << ',' << format_number(s.stderr_regret[k]) << ','
                      << format_number(s.mean_bound[k]) << "\n";
        }
        std::ostringstream dat;
        write_series(dat, line);
        write_file(join(cfg.out, "series_nu_" + label + ".dat"), dat.str());
        plot.push_back(std::move(line));
    }
    write_file(join(cfg.out, "aggregate.csv"), aggregate.str());
    std::ostringstream svg;
    write_svg(svg, plot, "mean regret under re-draw");
    write_file(join(cfg.out, "plot.svg"), svg.str());
    write_file(join(cfg.out, "manifest.txt"), to_manifest(cfg));
    return result;
}

std::string cmd_sample_complexity(double eta, double zeta, double alpha_T) {
    const long n2 = sample_count_exact(eta, zeta);
    const long n1 = sample_count_relaxed(eta, zeta);
    const long nr = sample_count_redraw(eta, zeta, alpha_T);
    std::ostringstream os;
    os << "eta=" << format_number(eta) << " zeta=" << format_number(zeta) << " alpha_T=" << format_number(alpha_T)
       << "\n";
    os << std::left << std::setw(12) << "exact" << std::setw(12) << "relaxed" << "redraw\n";
    os << std::left << std::setw(12) << n2 << std::setw(12) << n1 << nr << "\n";
    return os.str();
}

}  // namespace scenucb
