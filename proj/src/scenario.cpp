#include "scenucb/scenario.hpp"

#include <cmath>
#include <iomanip>
#include <regex>
#include <sstream>

#include "scenucb/env.hpp"
#include "scenucb/errors.hpp"

namespace scenucb {

namespace {

// Absorbs round-off in t^nu at exact integer crossings (e.g. 4^0.5).
constexpr double kFloorSlack = 1e-9;

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void require_unit_open(double eta, double zeta) {
    detail::require(eta > 0.0 && eta < 1.0, "eta must lie in (0, 1)");
    detail::require(zeta > 0.0 && zeta < 1.0, "zeta must lie in (0, 1)");
}

// ceil() that ignores relative round-off of order 1e-12 just above an integer.
long ceil_tolerant(double r) { return static_cast<long>(std::ceil(r * (1.0 - 1e-12))); }

}  // namespace

DeltaDistribution DeltaDistribution::uniform(double lo, double hi) {
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw ConfigError("uniform delta distribution needs finite lo <= hi");
    return {Kind::uniform, lo, hi};
}

DeltaDistribution DeltaDistribution::fixed(double value) {
    if (!std::isfinite(value)) throw ConfigError("fixed delta must be finite");
    return {Kind::fixed, value, value};
}

DeltaDistribution DeltaDistribution::parse(const std::string& text) {
    static const std::regex pattern(R"(\s*([a-z_]+)\s*\(([^)]*)\)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw ConfigError("malformed delta distribution '" + text + "'");
    std::vector<double> args;
    std::stringstream ss(m[2].str());
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            args.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("bad number '" + item + "' in delta distribution '" + text + "'");
        }
    }
    const std::string name = m[1].str();
    if (name == "uniform" && args.size() == 2) return uniform(args[0], args[1]);
    if (name == "fixed" && args.size() == 1) return fixed(args[0]);
    throw ConfigError("unsupported delta distribution '" + text + "' (expected uniform(a,b) or fixed(v))");
}

double DeltaDistribution::sample(Engine& rng) const {
    if (kind_ == Kind::fixed) return a_;
    return std::uniform_real_distribution<double>(a_, b_)(rng);
}

std::string DeltaDistribution::to_string() const {
    if (kind_ == Kind::fixed) return "fixed(" + format_double(a_) + ")";
    return "uniform(" + format_double(a_) + "," + format_double(b_) + ")";
}

std::vector<KernelSpec> ScenarioSet::kernels(const LengthscaleMap& map) const {
    std::vector<KernelSpec> out;
    out.reserve(scenarios.size());
    for (const auto& s : scenarios) out.push_back(KernelSpec{KernelFamily::squared_exponential, s.delta, map});
    return out;
}

std::vector<double> draw_deltas(std::size_t n, std::uint64_t seed, const DeltaDistribution& dist) {
    detail::require(n >= 1, "need at least one scenario");
    Engine rng(seed);
    std::vector<double> deltas(n);
    for (auto& d : deltas) d = dist.sample(rng);
    return deltas;
}

ScenarioSet draw_scenarios(std::size_t n, const SeedBundle& seeds, const DeltaDistribution& dist, const Grid& grid,
                           const LengthscaleMap& map) {
    const auto deltas = draw_deltas(n, seeds.stream(Stream::scenarios), dist);
    Engine realization_rng = seeds.engine(Stream::realizations);
    ScenarioSet set;
    set.rng_seed = seeds.master;
    set.scenarios.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto realization_seed = realization_rng();
        set.scenarios.push_back(
            {static_cast<int>(i), deltas[i], synthesize(KernelSpec{KernelFamily::squared_exponential, deltas[i], map},
                                                        grid, realization_seed)});
    }
    return set;
}

long sample_count_exact(double eta, double zeta) {
    require_unit_open(eta, zeta);
    return ceil_tolerant(std::log(1.0 / zeta) / std::log(1.0 / (1.0 - eta)));
}

long sample_count_relaxed(double eta, double zeta) {
    require_unit_open(eta, zeta);
    return ceil_tolerant(std::log(1.0 / zeta) / eta);
}

long sample_count_redraw(double eta, double zeta, double alpha_T) {
    require_unit_open(eta, zeta);
    detail::require(alpha_T >= 1.0, "alpha(T) must be at least 1");
    return ceil_tolerant(alpha_T * std::log(1.0 / zeta) / eta);
}

RedrawSchedule RedrawSchedule::power(double nu, long horizon) {
    if (!(nu >= 0.0 && nu <= 1.0)) throw ScheduleError("alpha(t) = t^nu needs 0 <= nu <= 1, got " + format_double(nu));
    if (horizon < 1) throw ScheduleError("re-draw horizon must be at least 1");
    RedrawSchedule s;
    s.nu_ = nu;
    s.horizon_ = horizon;
    return s;
}

RedrawSchedule RedrawSchedule::table(std::vector<double> values) {
    if (values.empty()) throw ScheduleError("alpha table is empty");
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double t = static_cast<double>(k + 1);
        if (!(values[k] >= 1.0 && values[k] <= t)) {
            std::ostringstream msg;
            msg << "alpha(" << k + 1 << ") = " << values[k] << " violates 1 <= alpha(t) <= t";
            throw ScheduleError(msg.str());
        }
        if (k > 0 && values[k] < values[k - 1]) {
            std::ostringstream msg;
            msg << "alpha table decreases at t = " << k + 1;
            throw ScheduleError(msg.str());
        }
    }
    RedrawSchedule s;
    s.horizon_ = static_cast<long>(values.size());
    s.table_ = std::move(values);
    return s;
}

double RedrawSchedule::alpha(long t) const {
    detail::require(t >= 1 && t <= horizon_, "alpha(t) queried outside 1..horizon");
    if (!table_.empty()) return table_[static_cast<std::size_t>(t - 1)];
    return std::pow(static_cast<double>(t), nu_);
}

std::string RedrawSchedule::to_string() const {
    if (table_.empty()) return "nu:" + format_double(nu_);
    std::string out = "table:";
    for (std::size_t k = 0; k < table_.size(); ++k) out += (k ? "," : "") + format_double(table_[k]);
    return out;
}

RedrawSchedule RedrawSchedule::parse(const std::string& text, long horizon) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("alpha spec must be 'nu:<v>' or 'table:<v1>,...'");
    const std::string kind = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    try {
        if (kind == "nu") return power(std::stod(body), horizon);
        if (kind == "table") {
            std::vector<double> values;
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
            if (static_cast<long>(values.size()) < horizon)
                throw ScheduleError("alpha table shorter than the horizon T");
            values.resize(static_cast<std::size_t>(horizon));
            return table(std::move(values));
        }
    } catch (const std::invalid_argument&) {
        throw ConfigError("malformed number in alpha spec '" + text + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("number out of range in alpha spec '" + text + "'");
    }
    throw ConfigError("unknown alpha spec kind '" + kind + "'");
}

std::vector<long> redraw_times(const RedrawSchedule& schedule) {
    std::vector<long> times{1};
    double prev = std::floor(schedule.alpha(1) + kFloorSlack);
    for (long t = 2; t <= schedule.horizon(); ++t) {
        const double cur = std::floor(schedule.alpha(t) + kFloorSlack);
        if (cur > prev) times.push_back(t);
        prev = cur;
    }
    return times;
}

std::vector<std::size_t> redraw_blocks(const std::vector<long>& times, long horizon) {
    detail::require(!times.empty() && times.front() == 1, "re-draw times must start at t = 1");
    std::vector<std::size_t> blocks(static_cast<std::size_t>(horizon));
    std::size_t k = 0;
    for (long t = 1; t <= horizon; ++t) {
        while (k + 1 < times.size() && times[k + 1] <= t) ++k;
        blocks[static_cast<std::size_t>(t - 1)] = k;
    }
    return blocks;
}

std::vector<RedrawDraw> draw_redraw_sequence(const RedrawSchedule& schedule, const SeedBundle& seeds,
                                             const DeltaDistribution& dist, const Grid& grid,
                                             const LengthscaleMap& map) {
    Engine rng = seeds.engine(Stream::redraw);
    std::vector<RedrawDraw> out;
    int id = 0;
    for (long t : redraw_times(schedule)) {
        const double delta = dist.sample(rng);
        const auto realization_seed = rng();
        out.push_back({t, Scenario{id++, delta,
                                   synthesize(KernelSpec{KernelFamily::squared_exponential, delta, map}, grid,
                                              realization_seed)}});
    }
    return out;
}

}  // namespace scenucb
