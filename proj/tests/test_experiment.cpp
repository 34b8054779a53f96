#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mvgdp/dataset.hpp"
#include "mvgdp/decomp.hpp"
#include "mvgdp/errors.hpp"
#include "mvgdp/experiment.hpp"
#include "mvgdp/matrix.hpp"

using namespace mvgdp;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string temp_path(const char* name) {
    return std::string("/tmp/mvgdp_test_") + name;
}

} // namespace

TEST_SUITE("experiment") {

TEST_CASE("benchmark queries expose the features and their scaled gram matrix") {
    Matrix eye = Matrix::identity(2);
    const Dataset d(std::move(eye), {"a", "b"}, 0.0, 1.0);
    CHECK(&query_identity(d) == &d.features());

    const SpdMatrix cov = query_covariance(d);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(cov.mat()(i, j) == doctest::Approx(i == j ? 0.5 : 0.0).epsilon(1e-15));

    // Brute-force column-sum oracle on random data.
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Matrix x(3, 50);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 50; ++j) x(i, j) = unit(gen);
    const Dataset rd(x, {"a", "b", "c"}, -1.0, 1.0);
    const SpdMatrix got = query_covariance(rd);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            double want = 0.0;
            for (std::size_t j = 0; j < 50; ++j) want += x(a, j) * x(b, j);
            want /= 50.0;
            CHECK(got.mat()(a, b) == doctest::Approx(want).epsilon(1e-12));
        }
}

TEST_CASE("doubles survive the decimal round trip exactly") {
    std::mt19937_64 gen(19);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-30, 30);
    for (int rep = 0; rep < 1000; ++rep) {
        const double v = mant(gen) * std::pow(10.0, expo(gen));
        const std::string s = format_double(v);
        double back = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(ec == std::errc());
        REQUIRE(ptr == s.data() + s.size());
        CHECK(back == v);
    }
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-1.5) == "-1.5");
}

TEST_CASE("matrix csv files round trip byte for byte") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> unit(-5.0, 5.0);
    Matrix m(4, 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = unit(gen) * std::pow(10.0, (int(i) - 2) * 7);

    const std::string p1 = temp_path("m1.csv");
    const std::string p2 = temp_path("m2.csv");
    save_matrix_csv(m, p1);
    const Matrix back = load_matrix_csv(p1);
    REQUIRE(back.rows() == 4);
    REQUIRE(back.cols() == 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(back(i, j) == m(i, j));
    save_matrix_csv(back, p2);
    CHECK(slurp(p1) == slurp(p2));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("dataset csv files round trip and derive their range from the data") {
    const Dataset d = synthetic_regression(4, 20, RandomSeed{77, 0});
    const std::string p1 = temp_path("d1.csv");
    const std::string p2 = temp_path("d2.csv");
    save_dataset_csv(d, p1);

    const Dataset back = load_dataset_csv(p1);
    REQUIRE(back.num_features() == 4);
    REQUIRE(back.num_samples() == 20);
    CHECK(back.feature_names() == d.feature_names());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 20; ++j)
            CHECK(back.features()(i, j) == d.features()(i, j));
    // Derived range hugs the observed extremes inside the declared one.
    CHECK(back.lo() >= d.lo());
    CHECK(back.hi() <= d.hi());

    save_dataset_csv(back, p2);
    CHECK(slurp(p1) == slurp(p2));

    const Dataset declared = load_dataset_csv(p1, -1.0, 1.0);
    CHECK(declared.lo() == -1.0);
    CHECK(declared.hi() == 1.0);
    CHECK_THROWS_AS(load_dataset_csv(p1, 0.0, 0.5), ConfigError); // data outside range
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("dataset construction enforces its invariants") {
    Matrix ok(2, 3);
    CHECK_THROWS_AS(Dataset(ok, {"a"}, 0.0, 1.0), ConfigError);       // name count
    CHECK_THROWS_AS(Dataset(ok, {"a", "b"}, 1.0, 0.0), ConfigError);  // inverted range
    CHECK_THROWS_AS(Dataset(Matrix(2, 1), {"a", "b"}, 0.0, 1.0), ConfigError); // one sample
    Matrix out_of_range(2, 2);
    out_of_range(0, 0) = 2.0;
    CHECK_THROWS_AS(Dataset(out_of_range, {"a", "b"}, 0.0, 1.0), ConfigError);

    const Dataset d(ok, {"a", "b"}, -2.0, 1.0);
    CHECK(d.abs_bound() == 2.0);
    CHECK(d.feature_index("b") == 1);
    CHECK_THROWS_AS(d.feature_index("missing"), ConfigError);
}

TEST_CASE("synthetic datasets are bounded, deterministic, and directional") {
    const RandomSeed seed{11, 0};
    const Dataset reg = synthetic_regression(6, 120, seed);
    const Dataset ani = synthetic_anisotropic(4, 800, 100.0, seed);
    const Dataset low = synthetic_bounded01(8, 300, seed);

    const auto in_range = [](const Dataset& d) {
        for (std::size_t i = 0; i < d.num_features(); ++i)
            for (std::size_t j = 0; j < d.num_samples(); ++j) {
                const double v = d.features()(i, j);
                if (v < d.lo() || v > d.hi()) return false;
            }
        return true;
    };
    CHECK(in_range(reg));
    CHECK(in_range(ani));
    CHECK(in_range(low));
    CHECK(reg.feature_names().back() == "target");

    const Dataset reg2 = synthetic_regression(6, 120, seed);
    CHECK(frobenius_norm(sub(reg.features(), reg2.features())) == 0.0);
    const Dataset reg3 = synthetic_regression(6, 120, RandomSeed{12, 0});
    CHECK(frobenius_norm(sub(reg.features(), reg3.features())) > 0.0);

    // The anisotropic generator has a strongly dominant first direction.
    const std::vector<double> spectrum = query_covariance(ani).eigenvalues();
    CHECK(spectrum[0] > 5.0 * spectrum[1]);
}

TEST_CASE("experiment configuration problems are rejected before any trial") {
    const Dataset data = synthetic_regression(4, 40, RandomSeed{3, 0});
    ExperimentConfig cfg{Task::Regression, MechanismKind::Gaussian, PrivacyParams(1.0, 0.01)};
    cfg.trials = 2;
    cfg.seed = RandomSeed{5, 0};

    ExperimentConfig bad = cfg;
    bad.mechanism = MechanismKind::MvgEquimodal;
    CHECK_THROWS_AS(run_experiment(bad, data), ConfigError);

    bad = cfg;
    bad.task = Task::FirstPc;
    bad.mechanism = MechanismKind::MvgUnimodal;
    CHECK_THROWS_AS(run_experiment(bad, data), ConfigError);

    bad = cfg;
    bad.theorem = DesignTheorem::Psd;
    CHECK_THROWS_AS(run_experiment(bad, data), ConfigError);

    bad = cfg;
    bad.trials = 0;
    CHECK_THROWS_AS(run_experiment(bad, data), ConfigError);

    bad = cfg;
    bad.target_feature = "missing";
    CHECK_THROWS_AS(run_experiment(bad, data), ConfigError);

    bad = cfg;
    bad.holdout_samples = 39;
    CHECK_THROWS_AS(run_experiment(bad, data), ConfigError);

    bad = cfg;
    bad.mechanism = MechanismKind::MvgUnimodal;
    bad.directions = BasisDirections{{}, 0.7};
    CHECK_THROWS_AS(run_experiment(bad, data), ConfigError);

    bad.directions = PrivateSvdDirections{1.5};
    CHECK_THROWS_AS(run_experiment(bad, data), ConfigError);

    CHECK_THROWS_AS(direction_study(cfg, data, {IidDirections{}}, {1.0}), ConfigError);
}

TEST_CASE("runs are bit-reproducible and a single trial has no interval") {
    const Dataset data = synthetic_regression(4, 60, RandomSeed{21, 0});
    ExperimentConfig cfg{Task::Regression, MechanismKind::Gaussian, PrivacyParams(1.0, 0.01)};
    cfg.trials = 3;
    cfg.seed = RandomSeed{9, 0};

    const TrialReport a = run_experiment(cfg, data);
    const TrialReport b = run_experiment(cfg, data);
    REQUIRE(a.values.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(a.values[i] == b.values[i]);
    CHECK(a.mean == b.mean);
    CHECK(a.ci_half > 0.0);

    cfg.trials = 1;
    const TrialReport single = run_experiment(cfg, data);
    CHECK(single.values.size() == 1);
    CHECK(single.ci_half == 0.0);
}

TEST_CASE("a loose privacy budget reaches the clean-pipeline floor") {
    const Dataset data = synthetic_regression(6, 345, RandomSeed{2, 0});
    ExperimentConfig cfg{Task::Regression, MechanismKind::MvgUnimodal,
                         PrivacyParams(1e8, 1.0 / 248.0)};
    cfg.trials = 5;
    cfg.seed = RandomSeed{14, 0};
    cfg.holdout_samples = 97;

    const TrialReport loose = run_experiment(cfg, data);
    cfg.privacy = PrivacyParams(1e9, 1.0 / 248.0);
    const TrialReport looser = run_experiment(cfg, data);
    ExperimentConfig gauss = cfg;
    gauss.mechanism = MechanismKind::Gaussian;
    gauss.privacy = PrivacyParams(1e8, 1.0 / 248.0);
    const TrialReport gauss_loose = run_experiment(gauss, data);

    // All three sit on the non-private ridge floor.
    CHECK(loose.mean > 0.0);
    CHECK(loose.mean < 0.2);
    CHECK(loose.mean == doctest::Approx(looser.mean).epsilon(1e-3));
    CHECK(loose.mean == doctest::Approx(gauss_loose.mean).epsilon(1e-3));
}

TEST_CASE("the tighter matched-pair branch wastes less of the spectrum") {
    const Dataset data = synthetic_anisotropic(4, 10176, 100.0, RandomSeed{6, 0});
    ExperimentConfig cfg{Task::FirstPc, MechanismKind::MvgEquimodal,
                         PrivacyParams(1.0, 1.0 / 10176.0)};
    cfg.trials = 20;
    cfg.seed = RandomSeed{30, 0};

    cfg.theorem = DesignTheorem::Psd;
    const TrialReport tight = run_experiment(cfg, data);
    cfg.theorem = DesignTheorem::General;
    const TrialReport loose = run_experiment(cfg, data);
    CHECK(tight.mean < loose.mean);
}

TEST_CASE("informative direction choices beat anti-informative ones") {
    const Dataset data = synthetic_regression(3, 60, RandomSeed{31, 0});
    ExperimentConfig base{Task::Regression, MechanismKind::MvgUnimodal,
                          PrivacyParams(3e4, 1.0 / 45.0)};
    base.trials = 20;
    base.seed = RandomSeed{40, 0};

    // Favor the strong feature and the response row, or favor the weak
    // feature only.
    const std::vector<DirectionSource> choices = {BasisDirections{{0, 2}, 0.85},
                                                  BasisDirections{{1}, 0.85}};
    const std::vector<double> eps = {3e4};
    const std::vector<StudyCell> cells = direction_study(base, data, choices, eps);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].epsilon == 3e4);
    CHECK(cells[0].directions != cells[1].directions);
    CHECK(cells[0].report.mean < cells[1].report.mean);

    // Identical choices give bit-identical paired reports.
    const std::vector<DirectionSource> same = {IidDirections{}, IidDirections{}};
    const std::vector<StudyCell> paired = direction_study(base, data, same, eps);
    REQUIRE(paired.size() == 2);
    for (std::size_t i = 0; i < paired[0].report.values.size(); ++i)
        CHECK(paired[0].report.values[i] == paired[1].report.values[i]);
}

TEST_CASE("estimation error shrinks as the budget grows") {
    const Dataset data = synthetic_bounded01(21, 600, RandomSeed{50, 0});

    SUBCASE("iid baseline across moderate budgets") {
        ExperimentConfig cfg{Task::CovarianceEstimation, MechanismKind::Gaussian,
                             PrivacyParams(0.1, 1.0 / 600.0)};
        cfg.trials = 30;
        cfg.seed = RandomSeed{60, 0};
        const TrialReport strict = run_experiment(cfg, data);
        cfg.privacy = PrivacyParams(1.0, 1.0 / 600.0);
        const TrialReport mid = run_experiment(cfg, data);
        cfg.privacy = PrivacyParams(10.0, 1.0 / 600.0);
        const TrialReport loose = run_experiment(cfg, data);
        CHECK(strict.mean > mid.mean);
        CHECK(mid.mean > loose.mean);
    }
    SUBCASE("directional design across its responsive budgets") {
        ExperimentConfig cfg{Task::CovarianceEstimation, MechanismKind::MvgUnimodal,
                             PrivacyParams(1e6, 1.0 / 600.0)};
        cfg.trials = 20;
        cfg.seed = RandomSeed{61, 0};
        const TrialReport strict = run_experiment(cfg, data);
        cfg.privacy = PrivacyParams(1e7, 1.0 / 600.0);
        const TrialReport mid = run_experiment(cfg, data);
        cfg.privacy = PrivacyParams(1e8, 1.0 / 600.0);
        const TrialReport loose = run_experiment(cfg, data);
        CHECK(strict.mean > mid.mean);
        CHECK(mid.mean > loose.mean);
    }
}

} // TEST_SUITE
