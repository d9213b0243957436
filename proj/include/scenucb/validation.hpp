#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scenucb/errors.hpp"

#include "scenucb/kernel.hpp"
#include "scenucb/scenario.hpp"

namespace scenucb {

/// Raised when a suite is asked to run with too few repetitions to resolve its
/// threshold at three standard errors.
class UnderpoweredError : public ConfigError {
public:
    UnderpoweredError(const std::string& what, long required) : ConfigError(what), required_(required) {}
    long required() const { return required_; }

private:
    long required_;
};

/// Population shared by the statistical suites. Defaults: 11 points on [0, 1],
/// N = 3 sampled scenarios, T = 200 steps, rho^2 = 0.01, eps = 0.1.
struct ValidationSettings {
    long repetitions = 0;  // 0: the suite's default count
    std::uint64_t seed = 1;
    std::vector<double> grid_points = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    LengthscaleMap lengthscale{};
    std::string delta_dist = "uniform(0,1)";
    long n_scenarios = 3;
    long horizon = 200;
    double noise_var = 0.01;
    double epsilon = 0.1;
    double eta = 0.1;
    double zeta = 0.05;
    long violation_inner = 5000;   // fresh samples per outer draw
    double violation_point = 0.3;  // fixed decision for the synthetic constraint
    long robustness_inner = 1000;  // re-draw sequences per outer draw
    double robustness_nu = 0.4;    // alpha(t) = t^nu over `horizon`
};

struct SuiteReport {
    std::string suite;
    bool passed = false;
    double observed = 0.0;
    double threshold = 0.0;  // nominal value the observation is compared against
    double standard_error = 0.0;
    long repetitions = 0;
    std::string comparison;  // "<=" or ">="
    std::string details;

    std::string to_text() const;
};

/// Smallest repetition count with 3 * sqrt(p (1 - p) / n) <= p.
long minimum_repetitions(double p);

/// Fraction of runs in which r_t > 2 sqrt(beta_t) sigma_t at some step; pass when <= eps + 3 SE.
SuiteReport validate_concentration(const ValidationSettings& s);
/// Synthetic constraint G(x, v) = (x - v)^2, v ~ U[0,1], N from sample_count_relaxed
/// formula. Fraction of outer draws whose estimated violation probability
/// exceeds eta; pass when <= zeta + 3 SE.
SuiteReport validate_violation(const ValidationSettings& s);
/// Fraction of runs where R_T over the sampled set exceeds
/// sqrt(8 beta_T gamma_T / (T log(1 + 1/rho^2))) at some T; pass when <= eps + 3 SE.
SuiteReport validate_bound(const ValidationSettings& s);
/// With N from the re-draw formula, fraction of outer draws whose estimated
/// probability that some re-draw alters J stays <= eta; pass when >= 1 - zeta - 3 SE.
SuiteReport validate_robustness(const ValidationSettings& s);

/// Dispatch by name: concentration, violation, bound, robustness.
SuiteReport run_suite(const std::string& name, const ValidationSettings& s);

}  // namespace scenucb
