#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "scenucb/config.hpp"
#include "scenucb/errors.hpp"
#include "scenucb/experiment.hpp"
#include "scenucb/output.hpp"
#include "scenucb/validation.hpp"

using namespace scenucb;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("scenucb_test_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string sub(const std::string& name) const { return (path / name).string(); }
    fs::path path;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

ExperimentConfig small_config(const std::string& out) {
    ExperimentConfig cfg;
    cfg.grid_step = 0.1;
    cfg.n_scenarios = 4;
    cfg.horizon = 10;
    cfg.out = out;
    return cfg;
}

}  // namespace

TEST_CASE("defaults describe the standard study") {
    const ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.grid().size() == 101);
    CHECK(cfg.grid().point(100)(0) == doctest::Approx(1.0));
    CHECK(cfg.lengthscale.offset == 0.05);
    CHECK(cfg.lengthscale.slope == 0.01);
    CHECK(cfg.distribution().lower() == 0.0);
    CHECK(cfg.distribution().upper() == 1.0);
    CHECK(cfg.scenario_count() == 20);
    CHECK(cfg.horizon == 1000);
    CHECK(cfg.schedule().nu() == 0.1);
}

TEST_CASE("settings and validation") {
    ExperimentConfig cfg;
    apply_setting(cfg, "T", "250");
    apply_setting(cfg, "grid_points", "0,0.5,1");
    apply_setting(cfg, "alpha", "nu:0.4");
    CHECK(cfg.horizon == 250);
    CHECK(cfg.grid().size() == 3);
    CHECK(cfg.schedule().alpha(250) == doctest::Approx(std::pow(250.0, 0.4)));

    apply_setting(cfg, "n_scenarios", "auto");
    CHECK_FALSE(cfg.n_scenarios.has_value());
    CHECK(cfg.scenario_count() == sample_count_redraw(cfg.eta, cfg.zeta, std::pow(250.0, 0.4)));

    CHECK_THROWS_AS(apply_setting(cfg, "bogus", "1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "T", "ten"), ConfigError);

    auto bad = [](const std::string& key, const std::string& value) {
        ExperimentConfig c;
        apply_setting(c, key, value);
        c.validate();
    };
    CHECK_THROWS_AS(bad("noise_var", "0"), ConfigError);
    CHECK_THROWS_AS(bad("epsilon", "1.5"), ConfigError);
    CHECK_THROWS_AS(bad("T", "0"), ConfigError);
    CHECK_THROWS_AS(bad("alpha", "nu:1.2"), ConfigError);
    CHECK_THROWS_AS(bad("delta_dist", "gamma(1,1)"), ConfigError);
    CHECK_THROWS_AS(bad("lengthscale_offset", "-1"), ConfigError);
    try {
        bad("noise_var", "-1");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("noise_var") != std::string::npos);
    }
}

TEST_CASE("config text parsing and manifest round trip") {
    const auto cfg = parse_config("# comment\nT = 40\n  seed=9  \n\ngrid_step = 0.05 # trailing\nalpha = table:1,2\n",
                                  ExperimentConfig{});
    CHECK(cfg.horizon == 40);
    CHECK(cfg.seed == 9);
    CHECK(cfg.grid_step == 0.05);
    CHECK_THROWS_AS(parse_config("T 40\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("nonsense = 1\n"), ConfigError);

    ExperimentConfig a;
    a.noise_var = 0.1 / 3.0;
    a.epsilon = 0.07;
    a.n_scenarios.reset();
    a.seed = 123456789012345ULL;
    a.grid_points = {0.0, 0.25, 1.0 / 3.0};
    const std::string text = to_manifest(a);
    const auto b = parse_config(text);
    CHECK(b.noise_var == a.noise_var);
    CHECK(b.epsilon == a.epsilon);
    CHECK_FALSE(b.n_scenarios.has_value());
    CHECK(b.seed == a.seed);
    CHECK(b.grid_points == a.grid_points);
    CHECK(to_manifest(b) == text);
    CHECK(text.find("library_version") != std::string::npos);
}

TEST_CASE("single run writes the documented files") {
    TempDir tmp;
    const auto cfg = small_config(tmp.sub("run"));
    const auto out = cmd_run(cfg);
    CHECK(out.trace.length() == 10);
    const auto curve = lines(slurp(tmp.sub("run/curve.csv")));
    REQUIRE(curve.size() == 11);
    CHECK(curve[0] == "t,redraw_count,x_index,i_t,y_t,sigma_it,beta_t,r_inst,r_redraw_avg,bound");
    CHECK(curve[1].rfind("1,1,", 0) == 0);
    CHECK(lines(slurp(tmp.sub("run/trace.csv"))).size() == 11);
    CHECK(lines(slurp(tmp.sub("run/series.dat"))).size() >= 10);
    CHECK(fs::exists(tmp.sub("run/manifest.txt")));

    // default study size: one row per step
    ExperimentConfig full;
    full.horizon = 10;
    full.out = tmp.sub("full");
    cmd_run(full);
    CHECK(lines(slurp(tmp.sub("full/curve.csv"))).size() == 11);
}

TEST_CASE("reruns and manifest reruns are byte-identical") {
    TempDir tmp;
    auto cfg = small_config(tmp.sub("a"));
    cfg.horizon = 60;
    cfg.alpha = "nu:0.5";
    cmd_run(cfg);
    cfg.out = tmp.sub("b");
    cmd_run(cfg);
    auto again = load_config(tmp.sub("a/manifest.txt"));
    again.out = tmp.sub("c");
    cmd_run(again);
    for (const char* f : {"curve.csv", "trace.csv", "series.dat"}) {
        CAPTURE(f);
        const auto ref = slurp(tmp.sub(std::string("a/") + f));
        CHECK(ref == slurp(tmp.sub(std::string("b/") + f)));
        CHECK(ref == slurp(tmp.sub(std::string("c/") + f)));
    }

    cfg.seed = 2;
    cfg.out = tmp.sub("d");
    cmd_run(cfg);
    CHECK(slurp(tmp.sub("a/curve.csv")) != slurp(tmp.sub("d/curve.csv")));
}

TEST_CASE("sweep files and aggregate rows") {
    TempDir tmp;
    auto cfg = small_config(tmp.sub("sweep"));
    cfg.horizon = 25;
    cfg.repetitions = 3;
    const auto series = cmd_sweep(cfg, {0.1, 0.4, 1.0});
    REQUIRE(series.size() == 3);
    for (const char* nu : {"0.1", "0.4", "1"}) {
        CHECK(fs::exists(tmp.sub(std::string("sweep/series_nu_") + nu + ".dat")));
        const auto curve = lines(slurp(tmp.sub(std::string("sweep/curve_nu_") + nu + ".csv")));
        CHECK(curve.size() == 1 + 3 * 25);
    }
    const auto agg = lines(slurp(tmp.sub("sweep/aggregate.csv")));
    CHECK(agg.size() == 1 + 3 * 25);
    CHECK(fs::exists(tmp.sub("sweep/plot.svg")));
    for (const auto& s : series) {
        CHECK(s.mean_regret.size() == 25);
        CHECK(s.curves.size() == 3);
    }
    // with N fixed the decisions do not depend on nu
    CHECK(series[0].traces[1] == series[2].traces[1]);

    // each repetition equals a single run with seed master + rep
    auto single = cfg;
    single.alpha = "nu:0.4";
    const auto one = run_once(single, cfg.seeds().repetition(2));
    for (std::size_t k = 0; k < 25; ++k) CHECK(series[1].curves[2].average[k] == one.curve.average[k]);

    CHECK_THROWS_AS(cmd_sweep(cfg, {}), ConfigError);
    CHECK_THROWS_AS(cmd_sweep(cfg, {0.0}), ConfigError);
}

TEST_CASE("sample complexity table") {
    const auto a = lines(cmd_sample_complexity(0.1, 0.05, 1.0));
    REQUIRE(a.size() == 3);
    std::stringstream row(a[2]);
    long n2, n1, nr;
    row >> n2 >> n1 >> nr;
    CHECK(n2 == 29);
    CHECK(n1 == 30);
    CHECK(nr == 30);
    std::stringstream half(lines(cmd_sample_complexity(0.5, 0.5, 1.0))[2]);
    half >> n2 >> n1 >> nr;
    CHECK(n2 == 1);
    CHECK(n1 == 2);
    CHECK(nr == 2);
    std::stringstream ten(lines(cmd_sample_complexity(0.1, 0.05, 10.0))[2]);
    ten >> n2 >> n1 >> nr;
    CHECK(nr == 300);
    CHECK_THROWS_AS(cmd_sample_complexity(0.0, 0.05, 1.0), ContractViolation);
}

TEST_CASE("validation refuses underpowered runs") {
    CHECK(minimum_repetitions(0.1) == 81);
    CHECK(minimum_repetitions(0.05) == 171);
    ValidationSettings s;
    s.repetitions = 20;
    try {
        run_suite("concentration", s);
        FAIL("expected an underpowered error");
    } catch (const UnderpoweredError& e) {
        CHECK(e.required() == 81);
    }
    CHECK_THROWS_AS(run_suite("violation", s), UnderpoweredError);
    CHECK_THROWS_AS(run_suite("nonsense", s), ConfigError);
}

TEST_CASE("validation report text") {
    SuiteReport r;
    r.suite = "bound";
    r.passed = true;
    r.observed = 0.02;
    r.threshold = 0.1;
    r.standard_error = 0.01;
    r.repetitions = 200;
    r.comparison = "<=";
    const auto text = r.to_text();
    CHECK(text.find("bound") != std::string::npos);
    CHECK(text.find("PASS") != std::string::npos);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(16.21710618574) == "16.2171061857");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}
