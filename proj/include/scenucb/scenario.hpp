#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "scenucb/kernel.hpp"
#include "scenucb/rng.hpp"

namespace scenucb {

/// Distribution of the kernel uncertainty parameter. Text form: "uniform(a,b)"
/// or "fixed(v)".
class DeltaDistribution {
public:
    static DeltaDistribution uniform(double lo, double hi);
    static DeltaDistribution fixed(double value);
    /// Throws ConfigError for unknown names or malformed parameters.
    static DeltaDistribution parse(const std::string& text);

    double sample(Engine& rng) const;
    std::string to_string() const;
    double lower() const { return a_; }
    double upper() const { return b_; }

private:
    enum class Kind { uniform, fixed };
    DeltaDistribution(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
    Kind kind_;
    double a_;
    double b_;
};

struct Scenario {
    int id = 0;
    double delta = 0.0;
    Eigen::VectorXd realization;  // true F(x, d) over the grid
};

struct ScenarioSet {
    std::vector<Scenario> scenarios;
    std::uint64_t rng_seed = 0;

    std::size_t size() const { return scenarios.size(); }
    std::vector<KernelSpec> kernels(const LengthscaleMap& map) const;
};

/// Kernel parameters only, from the scenario sub-stream of `seeds`.
std::vector<double> draw_deltas(std::size_t n, std::uint64_t seed, const DeltaDistribution& dist);

/// N i.i.d. scenarios with realizations synthesized on `grid`. Deltas come from
/// the scenario stream and realization seeds from the realization stream.
ScenarioSet draw_scenarios(std::size_t n, const SeedBundle& seeds, const DeltaDistribution& dist, const Grid& grid,
                           const LengthscaleMap& map = {});

// Sample counts. All require eta, zeta in (0, 1).

/// Smallest N with N >= log(1/zeta) / log(1/(1-eta)).
long sample_count_exact(double eta, double zeta);
/// ceil(log(1/zeta) / eta).
long sample_count_relaxed(double eta, double zeta);
/// ceil(alpha_T * log(1/zeta) / eta); alpha_T >= 1.
long sample_count_redraw(double eta, double zeta, double alpha_T);

/// Frequency-of-re-draw function alpha on 1..horizon, either t^nu or an explicit table.
class RedrawSchedule {
public:
    /// Throws ScheduleError unless 0 <= nu <= 1.
    static RedrawSchedule power(double nu, long horizon);
    /// table[t-1] = alpha(t). Throws ScheduleError when 1 <= alpha(t) <= t fails
    /// or the table decreases somewhere.
    static RedrawSchedule table(std::vector<double> values);

    double alpha(long t) const;
    long horizon() const { return horizon_; }
    bool is_power() const { return table_.empty(); }
    double nu() const { return nu_; }
    const std::vector<double>& values() const { return table_; }
    /// "nu:<v>" or "table:<v1>,<v2>,...".
    std::string to_string() const;
    static RedrawSchedule parse(const std::string& text, long horizon);

private:
    RedrawSchedule() = default;
    double nu_ = 1.0;
    std::vector<double> table_;
    long horizon_ = 0;
};

/// Iterations at which a fresh extra scenario is drawn: t = 1, then every t
/// where floor(alpha(t)) exceeds floor(alpha(t-1)).
std::vector<long> redraw_times(const RedrawSchedule& schedule);

/// For t = 1..T, the index into `times` of the extra scenario active at t.
std::vector<std::size_t> redraw_blocks(const std::vector<long>& times, long horizon);

struct RedrawDraw {
    long time = 1;
    Scenario scenario;
};

/// Fresh extra scenarios at each re-draw time, all from the re-draw stream.
std::vector<RedrawDraw> draw_redraw_sequence(const RedrawSchedule& schedule, const SeedBundle& seeds,
                                             const DeltaDistribution& dist, const Grid& grid,
                                             const LengthscaleMap& map = {});

}  // namespace scenucb
