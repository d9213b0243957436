#include "scenucb/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "scenucb/errors.hpp"

namespace scenucb {

Grid::Grid(Eigen::MatrixXd points) : points_(std::move(points)) {
    detail::require(points_.rows() >= 1 && points_.cols() >= 1, "grid must contain at least one point");
    for (Eigen::Index i = 0; i < points_.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < points_.rows(); ++j) {
            if ((points_.row(i) - points_.row(j)).squaredNorm() == 0.0) {
                std::ostringstream msg;
                msg << "grid points " << i << " and " << j << " coincide";
                throw ContractViolation(msg.str());
            }
        }
    }
}

Grid::Grid(const std::vector<double>& points_1d)
    : Grid(Eigen::Map<const Eigen::VectorXd>(points_1d.data(), static_cast<Eigen::Index>(points_1d.size()))) {}

Grid Grid::uniform(double min, double max, double step) {
    detail::require(step > 0.0, "grid step must be positive");
    detail::require(max >= min, "grid max must not be below min");
    // Points are generated as min + i*step to avoid accumulated drift.
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 0.5)) + 1;
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i) pts[i] = min + static_cast<double>(i) * step;
    return Grid(pts);
}

void KernelSpec::validate() const {
    const double l = lengthscale();
    if (!(l > 0.0) || !std::isfinite(l)) {
        std::ostringstream msg;
        msg << "invalid kernel spec: lengthscale " << l << " at delta " << delta << " is not positive";
        throw ConfigError(msg.str());
    }
}

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& a,
                   const Eigen::Ref<const Eigen::VectorXd>& b) {
    spec.validate();
    const double l = spec.lengthscale();
    switch (spec.family) {
        case KernelFamily::squared_exponential:
            return std::exp(-(a - b).squaredNorm() / (l * l));
    }
    throw ConfigError("unknown kernel family");
}

double kernel_eval(const KernelSpec& spec, double a, double b) {
    spec.validate();
    const double l = spec.lengthscale();
    const double d = a - b;
    return std::exp(-d * d / (l * l));
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Grid& grid) {
    spec.validate();
    const auto n = static_cast<Eigen::Index>(grid.size());
    const double inv_l2 = 1.0 / (spec.lengthscale() * spec.lengthscale());
    const auto& pts = grid.points();
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = std::exp(-(pts.row(i) - pts.row(j)).squaredNorm() * inv_l2);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

double KernelSpectrum::sum() const { return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0); }

KernelSpectrum spectrum(const Eigen::MatrixXd& matrix) {
    detail::require(matrix.rows() == matrix.cols() && matrix.rows() > 0, "spectrum needs a non-empty square matrix");
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ContractViolation("spectrum: matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("spectrum: symmetric eigensolver did not converge");

    KernelSpectrum out;
    out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    for (double& v : out.eigenvalues) {
        if (v < -kPsdTolerance) {
            std::ostringstream msg;
            msg << "spectrum: eigenvalue " << v << " below -" << kPsdTolerance << ", matrix is not PSD";
            throw NumericalError(msg.str());
        }
        if (v < 0.0) v = 0.0;
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
    return out;
}

}  // namespace scenucb
