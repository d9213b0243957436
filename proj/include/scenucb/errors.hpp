#pragma once

#include <stdexcept>
#include <string>

namespace scenucb {

/// Caller broke a documented precondition (bad index, out-of-range argument).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Invalid user-facing configuration: kernel spec, distribution spec, config file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The re-draw frequency function violates 1 <= alpha(t) <= t or is not monotone.
class ScheduleError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// A factorization or solve failed even after the bounded jitter retries.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractViolation(what);
}

}  // namespace detail
}  // namespace scenucb
