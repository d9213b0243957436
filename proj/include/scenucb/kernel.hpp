#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace scenucb {

inline constexpr double kPsdTolerance = 1e-8;

/// Finite decision domain. Rows of `points()` are the grid points; a point is
/// identified by its row index for the lifetime of a run.
class Grid {
public:
    /// Throws ContractViolation if empty or if two points coincide.
    explicit Grid(Eigen::MatrixXd points);
    explicit Grid(const std::vector<double>& points_1d);
    Grid(std::initializer_list<double> points_1d) : Grid(std::vector<double>(points_1d)) {}

    /// Points min, min+step, ..., up to max (inclusive, within half a step).
    static Grid uniform(double min, double max, double step);

    std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(points_.cols()); }
    Eigen::VectorXd point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)).transpose(); }
    const Eigen::MatrixXd& points() const { return points_; }

private:
    Eigen::MatrixXd points_;
};

enum class KernelFamily { squared_exponential };

/// Affine map from the uncertainty parameter to a lengthscale: offset + slope * delta.
struct LengthscaleMap {
    double offset = 0.05;
    double slope = 0.01;
    double operator()(double delta) const { return offset + slope * delta; }
};

struct KernelSpec {
    KernelFamily family = KernelFamily::squared_exponential;
    double delta = 0.0;
    LengthscaleMap lengthscale_map{};

    double lengthscale() const { return lengthscale_map(delta); }
    /// Throws ConfigError when the evaluated lengthscale is not strictly positive.
    void validate() const;
};

/// k(a, b) = exp(-|a - b|^2 / l^2) for the squared-exponential family.
double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& a,
                   const Eigen::Ref<const Eigen::VectorXd>& b);
double kernel_eval(const KernelSpec& spec, double a, double b);

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Grid& grid);

/// Eigenvalues sorted descending; values in (-kPsdTolerance, 0) are clamped to zero.
struct KernelSpectrum {
    std::vector<double> eigenvalues;

    double sum() const;
};

/// Throws ContractViolation for non-symmetric input and NumericalError when an
/// eigenvalue falls below -kPsdTolerance.
KernelSpectrum spectrum(const Eigen::MatrixXd& matrix);

}  // namespace scenucb
