#include "scenucb/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "scenucb/errors.hpp"

namespace scenucb {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
}

long to_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
        const auto v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
    }
}

std::string exact(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

const std::set<std::string>& informational_keys() {
    static const std::set<std::string> keys{"library_version", "seed_scenarios", "seed_realizations", "seed_redraw",
                                            "seed_noise", "n_scenarios_resolved"};
    return keys;
}

void check_unit_open(const std::string& key, double v) {
    if (!(v > 0.0 && v < 1.0)) throw ConfigError(key + ": must lie in (0, 1), got " + exact(v));
}

}  // namespace

Grid ExperimentConfig::grid() const {
    if (!grid_points.empty()) return Grid(grid_points);
    return Grid::uniform(grid_min, grid_max, grid_step);
}

DeltaDistribution ExperimentConfig::distribution() const { return DeltaDistribution::parse(delta_dist); }

RedrawSchedule ExperimentConfig::schedule() const { return RedrawSchedule::parse(alpha, horizon); }

long ExperimentConfig::scenario_count() const { return scenario_count(schedule()); }

long ExperimentConfig::scenario_count(const RedrawSchedule& schedule) const {
    if (n_scenarios) return *n_scenarios;
    return sample_count_redraw(eta, zeta, schedule.alpha(schedule.horizon()));
}

void ExperimentConfig::validate() const {
    if (grid_points.empty()) {
        if (!(grid_step > 0.0)) throw ConfigError("grid_step: must be positive");
        if (!(grid_max >= grid_min)) throw ConfigError("grid_max: must not be below grid_min");
    }
    try {
        (void)grid();
    } catch (const ContractViolation& e) {
        throw ConfigError(std::string("grid_points: ") + e.what());
    }
    if (kernel != "squared_exponential") throw ConfigError("kernel: unsupported family '" + kernel + "'");
    try {
        (void)distribution();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("delta_dist: ") + e.what());
    }
    if (horizon < 1) throw ConfigError("T: must be at least 1");
    if (!(noise_var > 0.0)) throw ConfigError("noise_var: must be positive");
    check_unit_open("epsilon", epsilon);
    check_unit_open("eta", eta);
    check_unit_open("zeta", zeta);
    RedrawSchedule sched = [&] {
        try {
            return schedule();
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("alpha: ") + e.what());
        }
    }();
    if (n_scenarios && *n_scenarios < 1) throw ConfigError("n_scenarios: must be at least 1 or 'auto'");
    if (repetitions < 1) throw ConfigError("repetitions: must be at least 1");
    if (out.empty()) throw ConfigError("out: output directory must not be empty");
    // The affine lengthscale map is monotone, so checking both ends of the
    // delta support covers every draw.
    const DeltaDistribution dist = distribution();
    for (double probe : {dist.lower(), dist.upper()}) {
        if (!(lengthscale(probe) > 0.0))
            throw ConfigError("lengthscale_offset: lengthscale must stay positive over the delta support");
    }
    (void)scenario_count(sched);
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "grid_min") cfg.grid_min = to_double(key, value);
    else if (key == "grid_max") cfg.grid_max = to_double(key, value);
    else if (key == "grid_step") cfg.grid_step = to_double(key, value);
    else if (key == "grid_points") {
        cfg.grid_points.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) cfg.grid_points.push_back(to_double(key, item));
        }
    } else if (key == "kernel") cfg.kernel = value;
    else if (key == "lengthscale_offset") cfg.lengthscale.offset = to_double(key, value);
    else if (key == "lengthscale_slope") cfg.lengthscale.slope = to_double(key, value);
    else if (key == "delta_dist") cfg.delta_dist = value;
    else if (key == "n_scenarios") {
        if (value == "auto") cfg.n_scenarios.reset();
        else cfg.n_scenarios = to_long(key, value);
    } else if (key == "T") cfg.horizon = to_long(key, value);
    else if (key == "noise_var") cfg.noise_var = to_double(key, value);
    else if (key == "epsilon") cfg.epsilon = to_double(key, value);
    else if (key == "eta") cfg.eta = to_double(key, value);
    else if (key == "zeta") cfg.zeta = to_double(key, value);
    else if (key == "alpha") cfg.alpha = value;
    else if (key == "seed") cfg.seed = to_u64(key, value);
    else if (key == "repetitions") cfg.repetitions = to_long(key, value);
    else if (key == "out") cfg.out = value;
    else if (informational_keys().count(key)) return;
    else throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

std::string to_manifest(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "grid_min = " << exact(cfg.grid_min) << "\n";
    os << "grid_max = " << exact(cfg.grid_max) << "\n";
    os << "grid_step = " << exact(cfg.grid_step) << "\n";
    os << "grid_points = ";
    for (std::size_t k = 0; k < cfg.grid_points.size(); ++k) os << (k ? "," : "") << exact(cfg.grid_points[k]);
    os << "\n";
    os << "kernel = " << cfg.kernel << "\n";
    os << "lengthscale_offset = " << exact(cfg.lengthscale.offset) << "\n";
    os << "lengthscale_slope = " << exact(cfg.lengthscale.slope) << "\n";
    os << "delta_dist = " << cfg.delta_dist << "\n";
    os << "n_scenarios = " << (cfg.n_scenarios ? std::to_string(*cfg.n_scenarios) : std::string("auto")) << "\n";
    os << "T = " << cfg.horizon << "\n";
    os << "noise_var = " << exact(cfg.noise_var) << "\n";
    os << "epsilon = " << exact(cfg.epsilon) << "\n";
    os << "eta = " << exact(cfg.eta) << "\n";
    os << "zeta = " << exact(cfg.zeta) << "\n";
    os << "alpha = " << cfg.alpha << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "repetitions = " << cfg.repetitions << "\n";
    os << "out = " << cfg.out << "\n";
    os << "# informational\n";
    os << "library_version = " << kLibraryVersion << "\n";
    const SeedBundle seeds = cfg.seeds();
    os << "seed_scenarios = " << seeds.stream(Stream::scenarios) << "\n";
    os << "seed_realizations = " << seeds.stream(Stream::realizations) << "\n";
    os << "seed_redraw = " << seeds.stream(Stream::redraw) << "\n";
    os << "seed_noise = " << seeds.stream(Stream::noise) << "\n";
    os << "n_scenarios_resolved = " << cfg.scenario_count() << "\n";
    return os.str();
}

}  // namespace scenucb
