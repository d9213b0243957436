#include <doctest.h>

#include <cmath>

#include "scenucb/env.hpp"
#include "scenucb/errors.hpp"

using namespace scenucb;

namespace {

KernelSpec se(double delta) { return KernelSpec{KernelFamily::squared_exponential, delta, {}}; }

ScenarioSet two_scenarios(const Grid& grid) {
    ScenarioSet set;
    for (int i = 0; i < 2; ++i) {
        const double delta = 0.2 + 0.5 * i;
        set.scenarios.push_back({i, delta, synthesize(se(delta), grid, 100 + i)});
    }
    return set;
}

}  // namespace

TEST_CASE("synthesize is deterministic per seed") {
    const Grid grid = Grid::uniform(0.0, 1.0, 0.01);
    const auto a = synthesize(se(0.5), grid, 42);
    const auto b = synthesize(se(0.5), grid, 42);
    REQUIRE(a.size() == 101);
    CHECK(a == b);
    CHECK(a != synthesize(se(0.5), grid, 43));
}

TEST_CASE("synthesize, per-point moments and neighbour correlation") {
    const Grid grid({0.0, 0.05});
    const int draws = 10000;
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    Eigen::Vector2d sq = Eigen::Vector2d::Zero();
    double cross = 0.0;
    for (int s = 0; s < draws; ++s) {
        const auto f = synthesize(se(0.0), grid, static_cast<std::uint64_t>(s));
        sum += f;
        sq += f.cwiseProduct(f);
        cross += f(0) * f(1);
    }
    const Eigen::Vector2d mean = sum / draws;
    const Eigen::Vector2d var = sq / draws - mean.cwiseProduct(mean);
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(mean(i)) < 0.05);
        CHECK(std::abs(var(i) - 1.0) < 0.1);
    }
    const double corr = (cross / draws - mean(0) * mean(1)) / std::sqrt(var(0) * var(1));
    CHECK(std::abs(corr - std::exp(-1.0)) < 0.05);
}

TEST_CASE("synthesize, empirical covariance on three points") {
    const Grid grid({0.0, 0.04, 0.1});
    const KernelSpec spec = se(0.3);
    const Eigen::MatrixXd k = kernel_matrix(spec, grid);
    const int draws = 100000;
    Eigen::Matrix3d acc = Eigen::Matrix3d::Zero();
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (int s = 0; s < draws; ++s) {
        const Eigen::Vector3d f = synthesize(spec, grid, 1000000 + static_cast<std::uint64_t>(s));
        sum += f;
        acc += f * f.transpose();
    }
    const Eigen::Vector3d mean = sum / draws;
    const Eigen::Matrix3d cov = acc / draws - mean * mean.transpose();
    CHECK((cov - k).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("synthesize survives a near-singular dense grid") {
    const Grid grid = Grid::uniform(0.0, 1.0, 0.001);
    const auto f = synthesize(se(1.0), grid, 3);
    CHECK(f.size() == 1001);
    CHECK(f.allFinite());
}

TEST_CASE("noiseless queries return the truth") {
    const Grid grid = Grid::uniform(0.0, 1.0, 0.1);
    GroundTruth gt(grid, two_scenarios(grid), 0.0, 9);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t x = 0; x < grid.size(); ++x) {
            CHECK(gt.query(x, i) == gt.truth(x, i));
            CHECK(gt.truth(x, i) == gt.scenarios().scenarios[i].realization(static_cast<Eigen::Index>(x)));
            CHECK(gt.truth(x, i) == gt.truth(x, i));
        }
    }
    CHECK(gt.grid_size() == 11);
    CHECK(gt.scenario_count() == 2);
    const auto tables = gt.truth_tables();
    REQUIRE(tables.size() == 2);
    CHECK(tables[1] == gt.scenarios().scenarios[1].realization);
}

TEST_CASE("noisy query moments") {
    const Grid grid = Grid::uniform(0.0, 1.0, 0.1);
    const double rho2 = 0.04;
    GroundTruth gt(grid, two_scenarios(grid), rho2, 17);
    const std::size_t x = 4;
    const std::size_t i = 1;
    const int n = 10000;
    double sum = 0.0;
    double sq = 0.0;
    for (int k = 0; k < n; ++k) {
        const double y = gt.query(x, i);
        sum += y;
        sq += y * y;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(var - rho2) < 0.05 * rho2);
    CHECK(std::abs(mean - gt.truth(x, i)) < 3.0 * std::sqrt(rho2) / 100.0);
}

TEST_CASE("noise stream is reproducible and independent of truth lookups") {
    const Grid grid = Grid::uniform(0.0, 1.0, 0.1);
    GroundTruth a(grid, two_scenarios(grid), 0.01, 5);
    GroundTruth b(grid, two_scenarios(grid), 0.01, 5);
    for (int k = 0; k < 20; ++k) {
        (void)b.truth(3, 0);
        CHECK(a.query(static_cast<std::size_t>(k % 11), 1) == b.query(static_cast<std::size_t>(k % 11), 1));
    }
}

TEST_CASE("invalid indices") {
    const Grid grid = Grid::uniform(0.0, 1.0, 0.1);
    GroundTruth gt(grid, two_scenarios(grid), 0.01, 5);
    CHECK_THROWS_AS(gt.query(0, 2), ContractViolation);
    CHECK_THROWS_AS(gt.query(11, 0), ContractViolation);
    CHECK_THROWS_AS((void)gt.truth(0, 5), ContractViolation);
    CHECK_THROWS_AS((void)gt.truth(20, 0), ContractViolation);
}
