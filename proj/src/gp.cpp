#include "scenucb/gp.hpp"

#include <cmath>
#include <sstream>

#include "scenucb/errors.hpp"

namespace scenucb {

GpPosterior::GpPosterior(KernelSpec kernel, Grid grid, double noise_var)
    : kernel_(kernel), grid_(std::make_shared<const Grid>(std::move(grid))), noise_var_(noise_var) {
    detail::require(noise_var_ > 0.0, "GP noise variance must be positive");
    kernel_.validate();
    prior_ = std::make_shared<const Eigen::MatrixXd>(kernel_matrix(kernel_, *grid_));
    const auto m = static_cast<Eigen::Index>(grid_->size());
    mean_ = Eigen::VectorXd::Zero(m);
    var_ = prior_->diagonal();
    proj_.resize(16, m);
    whitened_y_.resize(16);
    refresh_sigma();
}

void GpPosterior::update(const Observation& obs) {
    detail::require(obs.x_index < grid_->size(), "observation index outside the grid");
    if (since_refactor_ + 1 >= kRefactorInterval) {
        data_.push_back(obs);
        refactor();
        return;
    }
    extend(obs);
}

void GpPosterior::extend(const Observation& obs) {
    const auto n = static_cast<Eigen::Index>(data_.size());
    const auto m = static_cast<Eigen::Index>(grid_->size());
    const auto x = static_cast<Eigen::Index>(obs.x_index);

    // l = L^{-1} k_A(x) is already stored as column x of V.
    const Eigen::VectorXd l = proj_.topRows(n).col(x);
    const double pivot2 = (*prior_)(x, x) + noise_var_ - l.squaredNorm();
    // In exact arithmetic pivot2 = sigma^2(x) + rho^2 >= rho^2.
    if (!(pivot2 > 0.5 * noise_var_)) {
        data_.push_back(obs);
        refactor();
        return;
    }
    const double pivot = std::sqrt(pivot2);

    if (proj_.rows() <= n) {
        const Eigen::Index cap = 2 * n;
        proj_.conservativeResize(cap, m);
        whitened_y_.conservativeResize(cap);
    }

    Eigen::RowVectorXd v = prior_->row(x);
    if (n > 0) v.noalias() -= l.transpose() * proj_.topRows(n);
    v /= pivot;
    proj_.row(n) = v;

    const double w = (obs.y - (n > 0 ? l.dot(whitened_y_.head(n)) : 0.0)) / pivot;
    whitened_y_(n) = w;

    mean_ += w * v.transpose();
    var_ -= v.transpose().cwiseAbs2();
    data_.push_back(obs);
    ++since_refactor_;
    refresh_sigma();
}

void GpPosterior::refactor() {
    const auto n = static_cast<Eigen::Index>(data_.size());
    const auto m = static_cast<Eigen::Index>(grid_->size());
    Eigen::MatrixXd system(n, n);
    Eigen::MatrixXd cross(n, m);
    Eigen::VectorXd y(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const auto xa = static_cast<Eigen::Index>(data_[a].x_index);
        cross.row(a) = prior_->row(xa);
        y(a) = data_[a].y;
        for (Eigen::Index b = 0; b <= a; ++b) {
            const double kab = (*prior_)(xa, static_cast<Eigen::Index>(data_[b].x_index));
            system(a, b) = kab;
            system(b, a) = kab;
        }
    }
    system.diagonal().array() += noise_var_;

    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() != Eigen::Success) {
        system.diagonal().array() += kJitter;
        llt.compute(system);
        if (llt.info() != Eigen::Success) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(system, Eigen::EigenvaluesOnly);
            std::ostringstream msg;
            msg << "GP solve failed after jitter: n=" << n << " noise_var=" << noise_var_;
            if (eig.info() == Eigen::Success)
                msg << " eigenvalue range [" << eig.eigenvalues().minCoeff() << ", " << eig.eigenvalues().maxCoeff()
                    << "]";
            throw NumericalError(msg.str());
        }
    }

    const Eigen::Index cap = std::max<Eigen::Index>({16, 2 * n, proj_.rows()});
    proj_.resize(cap, m);
    proj_.topRows(n) = llt.matrixL().solve(cross);
    whitened_y_.resize(cap);
    whitened_y_.head(n) = llt.matrixL().solve(y);

    mean_.noalias() = proj_.topRows(n).transpose() * whitened_y_.head(n);
    var_ = prior_->diagonal() - proj_.topRows(n).colwise().squaredNorm().transpose();
    since_refactor_ = 0;
    ++refactors_;
    refresh_sigma();
}

void GpPosterior::refresh_sigma() { sigma_ = var_.cwiseMax(0.0).cwiseSqrt(); }

Prediction GpPosterior::predict(std::size_t x_index) const {
    detail::require(x_index < grid_->size(), "predict: index outside the grid");
    const auto x = static_cast<Eigen::Index>(x_index);
    return {mean_(x), sigma_(x)};
}

double GpPosterior::ucb(std::size_t x_index, double beta) const {
    detail::require(beta >= 0.0, "ucb: beta must be non-negative");
    const Prediction p = predict(x_index);
    return p.mean + std::sqrt(beta) * p.sigma;
}

GpPosterior gp_update(GpPosterior state, const Observation& obs) {
    state.update(obs);
    return state;
}

}  // namespace scenucb
