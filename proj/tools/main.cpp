// Command-line driver: run, sweep, sample-complexity, validate.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "scenucb/config.hpp"
#include "scenucb/errors.hpp"
#include "scenucb/experiment.hpp"
#include "scenucb/output.hpp"
#include "scenucb/validation.hpp"

using namespace scenucb;

namespace {

struct CommonOptions {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
    std::vector<std::string> settings;
    long reps = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "key=value config file (a saved manifest works too)");
    cmd->add_option("--seed", opt.seed, "master seed")->each([&](const std::string&) { opt.seed_set = true; });
    cmd->add_option("--out", opt.out, "output directory");
    cmd->add_option("--set", opt.settings, "override one config key, e.g. --set T=200");
    cmd->add_option("--reps", opt.reps, "repetitions");
}

ExperimentConfig build_config(const CommonOptions& opt) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty()) cfg = load_config(opt.config_path);
    for (const auto& kv : opt.settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opt.seed_set) cfg.seed = opt.seed;
    if (!opt.out.empty()) cfg.out = opt.out;
    if (opt.reps > 0) cfg.repetitions = opt.reps;
    cfg.validate();
    return cfg;
}

std::vector<double> parse_nu_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("nu: bad value '" + item + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scenario-based robust GP-UCB experiments"};
    app.require_subcommand(1);

    CommonOptions run_opt, sweep_opt, validate_opt;
    std::string run_nu, sweep_nu = "0.1,0.4,1", suite;
    double eta = 0.1, zeta = 0.05, alpha_T = 1.0;

    auto* run = app.add_subcommand("run", "single Scenario-UCB run with regret curve");
    add_common(run, run_opt);
    run->add_option("--nu", run_nu, "re-draw exponent, alpha(t) = t^nu");

    auto* sw = app.add_subcommand("sweep", "mean regret curves for several re-draw exponents");
    add_common(sw, sweep_opt);
    sw->add_option("--nu", sweep_nu, "comma-separated exponents")->capture_default_str();

    auto* sc = app.add_subcommand("sample-complexity", "scenario sample counts");
    sc->add_option("--eta", eta)->capture_default_str();
    sc->add_option("--zeta", zeta)->capture_default_str();
    sc->add_option("--alpha-T", alpha_T, "alpha(T) for the re-draw count")->capture_default_str();

    auto* val = app.add_subcommand("validate", "Monte-Carlo check of one statistical guarantee");
    add_common(val, validate_opt);
    val->add_option("--suite", suite, "concentration | violation | bound | robustness")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::config_error);
    }

    try {
        if (*run) {
            ExperimentConfig cfg = build_config(run_opt);
            if (!run_nu.empty()) {
                apply_setting(cfg, "alpha", "nu:" + run_nu);
                cfg.validate();
            }
            const RunOutput out = cmd_run(cfg);
            std::cout << "wrote " << out.trace.length() << " rows to " << cfg.out << "/curve.csv; R_T = "
                      << format_number(out.curve.average.back()) << "\n";
        } else if (*sw) {
            const ExperimentConfig cfg = build_config(sweep_opt);
            const auto series = cmd_sweep(cfg, parse_nu_list(sweep_nu));
            for (const auto& s : series)
                std::cout << "nu=" << nu_label(s.nu) << " N=" << s.scenario_count
                          << " mean R_T=" << format_number(s.mean_regret.back()) << "\n";
        } else if (*sc) {
            std::cout << cmd_sample_complexity(eta, zeta, alpha_T);
        } else if (*val) {
            const ExperimentConfig cfg = build_config(validate_opt);
            ValidationSettings settings;
            settings.seed = cfg.seed;
            settings.noise_var = cfg.noise_var;
            settings.epsilon = cfg.epsilon;
            settings.eta = cfg.eta;
            settings.zeta = cfg.zeta;
            settings.delta_dist = cfg.delta_dist;
            settings.lengthscale = cfg.lengthscale;
            settings.repetitions = validate_opt.reps;
            const SuiteReport report = run_suite(suite, settings);
            std::filesystem::create_directories(cfg.out);
            write_file((std::filesystem::path(cfg.out) / ("validate_" + suite + ".txt")).string(), report.to_text());
            std::cout << report.to_text();
            return report.passed ? 0 : static_cast<int>(ExitCode::validation_failure);
        }
    } catch (const UnderpoweredError& e) {
        std::cerr << "underpowered: " << e.what() << "\n";
        return static_cast<int>(ExitCode::config_error);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::config_error);
    } catch (const ContractViolation& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return static_cast<int>(ExitCode::config_error);
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::numerical_error);
    }
    return 0;
}
