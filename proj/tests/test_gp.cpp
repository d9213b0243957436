#include <doctest.h>

#include <cmath>
#include <random>

#include "scenucb/errors.hpp"
#include "scenucb/gp.hpp"

using namespace scenucb;

namespace {

KernelSpec se(double delta) { return KernelSpec{KernelFamily::squared_exponential, delta, {}}; }

struct Batch {
    Eigen::VectorXd mean;
    Eigen::VectorXd sigma;
};

// Direct evaluation of the posterior formulas with a dense LU solve, one shot
// over all observations.
Batch batch_posterior(const KernelSpec& spec, const Grid& grid, double rho2, const std::vector<Observation>& data) {
    const auto m = static_cast<Eigen::Index>(grid.size());
    const auto n = static_cast<Eigen::Index>(data.size());
    Batch out{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Ones(m)};
    if (n == 0) return out;
    Eigen::MatrixXd kaa(n, n), kax(n, m);
    Eigen::VectorXd y(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        y(a) = data[a].y;
        for (Eigen::Index b = 0; b < n; ++b)
            kaa(a, b) = kernel_eval(spec, grid.point(data[a].x_index), grid.point(data[b].x_index));
        for (Eigen::Index x = 0; x < m; ++x) kax(a, x) = kernel_eval(spec, grid.point(data[a].x_index), grid.point(x));
    }
    kaa.diagonal().array() += rho2;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(kaa);
    const Eigen::VectorXd alpha = lu.solve(y);
    const Eigen::MatrixXd solved = lu.solve(kax);
    for (Eigen::Index x = 0; x < m; ++x) {
        out.mean(x) = kax.col(x).dot(alpha);
        const double var = 1.0 - kax.col(x).dot(solved.col(x));
        out.sigma(x) = std::sqrt(std::max(var, 0.0));
    }
    return out;
}

}  // namespace

TEST_CASE("prior state") {
    const GpPosterior gp(se(0.2), Grid({0.0, 0.5, 1.0}), 0.01);
    for (std::size_t x = 0; x < 3; ++x) {
        CHECK(gp.predict(x).mean == 0.0);
        CHECK(gp.predict(x).sigma == 1.0);
    }
    CHECK(gp.ucb(1, 4.0) == doctest::Approx(2.0));
}

TEST_CASE("single observation matches closed-form 1x1 conditioning") {
    GpPosterior gp(se(0.0), Grid({0.0, 0.5}), 0.01);
    gp.update({0, 1.0, 1});
    const Prediction p = gp.predict(0);
    CHECK(p.mean == doctest::Approx(1.0 / 1.01).epsilon(1e-12));
    CHECK(p.sigma * p.sigma == doctest::Approx(0.01 / 1.01).epsilon(1e-12));
    CHECK(p.mean == doctest::Approx(0.990099).epsilon(1e-6));
    CHECK(p.sigma == doctest::Approx(0.099504).epsilon(1e-5));

    const double expected = 1.0 / 1.01 + std::sqrt(16.217) * std::sqrt(0.01 / 1.01);
    CHECK(gp.ucb(0, 16.217) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(gp.ucb(0, 16.217) == doctest::Approx(1.3908).epsilon(1e-4));

    // 0.5 is ten lengthscales away: essentially untouched.
    CHECK(std::abs(gp.predict(1).mean) < 1e-12);
    CHECK(gp.predict(1).sigma == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("contract violations") {
    GpPosterior gp(se(0.0), Grid({0.0, 0.5}), 0.01);
    CHECK_THROWS_AS(gp.predict(2), ContractViolation);
    CHECK_THROWS_AS(gp.ucb(0, -1.0), ContractViolation);
    CHECK_THROWS_AS(gp.update({5, 1.0, 1}), ContractViolation);
    CHECK_THROWS_AS(GpPosterior(se(0.0), Grid({0.0}), 0.0), ContractViolation);
}

TEST_CASE("gp_update returns a new state and leaves the input untouched") {
    const GpPosterior prior(se(0.0), Grid({0.0, 0.05}), 0.01);
    const GpPosterior post = gp_update(prior, {1, 0.7, 1});
    CHECK(prior.observations().empty());
    CHECK(post.observations().size() == 1);
    CHECK(prior.predict(1).sigma == 1.0);
    CHECK(post.predict(1).sigma < 1.0);
}

TEST_CASE("incremental updates equal one-shot conditioning") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int seq = 0; seq < 100; ++seq) {
        const std::size_t m = 2 + rng() % 20;  // <= 21 points
        std::vector<double> pts(m);
        for (std::size_t i = 0; i < m; ++i) pts[i] = static_cast<double>(i) * (0.2 / static_cast<double>(m));
        const Grid grid(pts);
        const KernelSpec spec = se(u(rng));
        const double rho2 = std::pow(10.0, -2.0 + 2.0 * u(rng));
        GpPosterior gp(spec, grid, rho2);
        std::vector<Observation> data;
        const std::size_t n = 1 + rng() % 50;
        for (std::size_t k = 0; k < n; ++k) {
            data.push_back({rng() % m, 2.0 * u(rng) - 1.0, static_cast<long>(k + 1)});
            gp.update(data.back());
        }
        const Batch ref = batch_posterior(spec, grid, rho2, data);
        for (std::size_t x = 0; x < m; ++x) {
            CHECK(std::abs(gp.predict(x).mean - ref.mean(static_cast<Eigen::Index>(x))) <= 1e-8);
            CHECK(std::abs(gp.predict(x).sigma - ref.sigma(static_cast<Eigen::Index>(x))) <= 1e-8);
        }
    }
}

TEST_CASE("periodic refactorization keeps the posterior exact") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Grid grid = Grid::uniform(0.0, 0.3, 0.02);
    const KernelSpec spec = se(0.4);
    GpPosterior gp(spec, grid, 0.05);
    std::vector<Observation> data;
    for (int k = 0; k < 200; ++k) {
        data.push_back({rng() % grid.size(), u(rng), k + 1});
        gp.update(data.back());
    }
    CHECK(gp.refactor_count() >= 3);
    const Batch ref = batch_posterior(spec, grid, 0.05, data);
    for (std::size_t x = 0; x < grid.size(); ++x) {
        CHECK(gp.predict(x).mean == doctest::Approx(ref.mean(static_cast<Eigen::Index>(x))).epsilon(1e-8));
        CHECK(std::abs(gp.predict(x).sigma - ref.sigma(static_cast<Eigen::Index>(x))) <= 1e-8);
    }
}

TEST_CASE("posterior sigma never increases") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Grid grid = Grid::uniform(0.0, 0.2, 0.01);
    for (int trial = 0; trial < 20; ++trial) {
        GpPosterior gp(se(u(rng)), grid, 0.001 + 0.1 * u(rng));
        Eigen::VectorXd prev = gp.posterior_sigma();
        for (int k = 0; k < 150; ++k) {
            gp.update({rng() % grid.size(), u(rng), k + 1});
            const Eigen::VectorXd cur = gp.posterior_sigma();
            CHECK((cur.array() <= prev.array() + 1e-9).all());
            CHECK((cur.array() >= 0.0).all());
            prev = cur;
        }
    }
}

TEST_CASE("near noise-free conditioning interpolates") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Grid grid = Grid::uniform(0.0, 1.0, 0.1);
    GpPosterior gp(se(0.5), grid, 1e-10);
    std::vector<double> ys(grid.size());
    for (std::size_t x = 0; x < grid.size(); x += 2) {
        ys[x] = u(rng);
        gp.update({x, ys[x], static_cast<long>(x)});
    }
    for (std::size_t x = 0; x < grid.size(); x += 2) CHECK(std::abs(gp.predict(x).mean - ys[x]) <= 1e-4);
}

TEST_CASE("posterior is calibrated against prior samples") {
    // Draw F from the prior, observe a few noisy values, and standardize the
    // error of the posterior at every grid point.
    const Grid grid = Grid::uniform(0.0, 0.1, 0.02);
    const KernelSpec spec = se(0.5);
    const double rho2 = 0.04;
    const Eigen::MatrixXd k = kernel_matrix(spec, grid) + 1e-10 * Eigen::MatrixXd::Identity(6, 6);
    const Eigen::MatrixXd chol = k.llt().matrixL();
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal(0.0, 1.0);

    double sum = 0.0, sum_sq = 0.0;
    long count = 0;
    for (int draw = 0; draw < 2500; ++draw) {
        Eigen::VectorXd z(6);
        for (auto& v : z) v = normal(rng);
        const Eigen::VectorXd f = chol * z;
        GpPosterior gp(spec, grid, rho2);
        for (std::size_t x : {1u, 4u}) gp.update({x, f(x) + std::sqrt(rho2) * normal(rng), 1});
        for (std::size_t x = 0; x < 6; x += 2) {
            const Prediction p = gp.predict(x);
            const double r = (f(static_cast<Eigen::Index>(x)) - p.mean) / p.sigma;
            sum += r;
            sum_sq += r * r;
            ++count;
        }
        const Prediction p = gp.predict(1);
        const double r = (f(1) - p.mean) / p.sigma;
        sum += r;
        sum_sq += r * r;
        ++count;
    }
    REQUIRE(count >= 10000);
    const double mean = sum / static_cast<double>(count);
    const double var = sum_sq / static_cast<double>(count) - mean * mean;
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(var - 1.0) < 0.1);
}

TEST_CASE("repeated queries at the same point are handled") {
    GpPosterior gp(se(0.0), Grid({0.0, 0.05, 0.1}), 0.01);
    std::vector<Observation> data;
    for (int k = 0; k < 80; ++k) {
        data.push_back({1, 0.5 + 0.01 * (k % 3), k + 1});
        gp.update(data.back());
    }
    const Batch ref = batch_posterior(se(0.0), Grid({0.0, 0.05, 0.1}), 0.01, data);
    CHECK(gp.predict(1).mean == doctest::Approx(ref.mean(1)).epsilon(1e-9));
    CHECK(gp.predict(1).sigma == doctest::Approx(ref.sigma(1)).epsilon(1e-7));
}
