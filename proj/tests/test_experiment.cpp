#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "invbandit/experiment.hpp"
#include "invbandit/io.hpp"

using namespace invbandit;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig config;
    config.means = std::vector<double>{1.0, 0.5};
    config.model = RewardModel::gaussian;
    config.variance = 1.0;
    config.algorithm = Algorithm::ucb;
    config.estimators = {EstimatorKind::procedure_ucb, EstimatorKind::naive};
    config.naive_c0_grid = {1.0};
    config.alpha_grid = {0.25};
    config.horizon_grid = {60, 90};
    config.replications = 5;
    config.master_seed = 7;
    return config;
}

}  // namespace

TEST_CASE("derived run seeds are collision free across the grid") {
    std::set<std::uint64_t> seeds;
    int total = 0;
    for (double alpha : {0.15, 0.25}) {
        for (std::int64_t horizon : {500, 695, 965, 1341, 1864, 2590, 3599, 5000}) {
            for (int run = 1; run <= 100; ++run) {
                seeds.insert(derive_run_seed(7, alpha, horizon, run));
                ++total;
            }
        }
    }
    CHECK(static_cast<int>(seeds.size()) == total);
}

TEST_CASE("run_experiment output is independent of the thread count") {
    const auto config = small_config();
    const auto serial = run_experiment(config, 1);
    const auto threaded = run_experiment(config, 4);
    CHECK(raw_csv(serial) == raw_csv(threaded));
    CHECK(aggregated_csv(serial) == aggregated_csv(threaded));
    CHECK(metadata_json(serial) == metadata_json(threaded));
}

TEST_CASE("run_experiment row shape and ordering") {
    auto config = small_config();
    config.replications = 1;
    config.horizon_grid = {60};
    config.model = RewardModel::deterministic;
    const auto table = run_experiment(config, 1);

    // One row per (estimator, arm): 2 estimators x 2 arms.
    REQUIRE(table.raw.size() == 4);
    for (const auto& row : table.raw) {
        CHECK(row.run_id == 1);
        CHECK(row.horizon == 60);
        CHECK(!row.beta.has_value());
    }
    // Sorted by (alpha, T, run, arm); the best arm has no estimate.
    CHECK(table.raw[0].arm == 1);
    CHECK(table.raw[1].arm == 1);
    CHECK(table.raw[2].arm == 2);
    CHECK(table.raw[3].arm == 2);
    CHECK(!table.raw[0].estimate.has_value());
    CHECK(table.raw[2].estimate.has_value());

    // Reproducible end to end.
    const auto table2 = run_experiment(config, 1);
    CHECK(raw_csv(table) == raw_csv(table2));
}

TEST_CASE("run_experiment emits a precondition warning on short horizons") {
    auto config = small_config();
    // 16 * kappa greatly exceeds these horizons for alpha = 0.25, gap 0.5.
    const auto table = run_experiment(config, 1);
    bool found = false;
    for (const auto& warning : table.metadata.warnings)
        found = found || warning.find("16*sum(kappa)") != std::string::npos;
    CHECK(found);
    CHECK(table.metadata.generator_name == "splitmix64-counter");
    CHECK(table.metadata.gaussian_method == "box-muller");
}

TEST_CASE("gap schedule instances") {
    auto config = small_config();
    config.means.reset();
    config.gap_schedule_beta = 0.5;
    config.horizon_grid = {100};
    config.replications = 2;
    const auto table = run_experiment(config, 1);
    for (const auto& row : table.raw) {
        REQUIRE(row.beta.has_value());
        CHECK(*row.beta == 0.5);
        if (row.arm == 2) CHECK(row.true_mean == doctest::Approx(1.0 - 0.1).epsilon(1e-12));
    }
}

TEST_CASE("config validation") {
    auto config = small_config();
    config.alpha_grid.clear();
    CHECK_THROWS_AS(run_experiment(config, 1), ConfigError);

    config = small_config();
    config.estimators = {EstimatorKind::procedure_sae};  // mismatched with ucb
    CHECK_THROWS_AS(run_experiment(config, 1), AlgorithmTagMismatch);
    config.force = true;
    CHECK_NOTHROW(run_experiment(config, 1));

    config = small_config();
    config.gap_schedule_beta = 0.5;  // two instance sources at once
    CHECK_THROWS_AS(run_experiment(config, 1), ConfigError);

    config = small_config();
    config.means = std::vector<double>{1.0};  // estimation needs >= 2 arms
    CHECK_THROWS_AS(run_experiment(config, 1), ConfigError);

    config = small_config();
    config.replications = 0;
    CHECK_THROWS_AS(run_experiment(config, 1), ConfigError);

    config = small_config();
    config.means.reset();
    config.gap_schedule_beta = 0.7;  // outside (0, 0.5]
    CHECK_THROWS_AS(run_experiment(config, 1), ConfigError);

    config = small_config();
    config.etc_exploration_rounds = 10;  // only meaningful for etc
    CHECK_THROWS_AS(run_experiment(config, 1), ConfigError);
}

TEST_CASE("dataset-sourced experiments run through the harness") {
    const auto j = nlohmann::json::parse(R"({
        "instance": {"dataset": {"path": ")" + std::string(INVBANDIT_DATA_DIR) +
                                        R"(/battery_fixture.csv",
                                  "normalization": "max", "mu_max": 1208, "sigma_raw": 164,
                                  "subsample": {"k": 5, "seed": 3}}},
        "algorithm": "ucb",
        "estimators": ["procedure_ucb"],
        "alpha_grid": [0.25],
        "horizon_grid": [80],
        "replications": 2,
        "master_seed": 7,
        "width_scale": 0.6788079470198676
    })");
    const auto config = experiment_config_from_json(j);
    REQUIRE(config.dataset.has_value());
    CHECK(config.dataset->subsample->k == 5);

    const auto table = run_experiment(config, 1);
    // 2 runs x 5 arms, one estimator.
    CHECK(table.raw.size() == 10);
    for (const auto& row : table.raw) {
        CHECK(row.true_mean > 0.0);
        CHECK(row.true_mean <= 1.0);
    }
    const auto again = run_experiment(config, 2);
    CHECK(raw_csv(table) == raw_csv(again));
}

TEST_CASE("experiment config JSON parsing") {
    const auto j = nlohmann::json::parse(R"({
        "instance": {"means": [1.0, 0.5], "model": {"type": "gaussian", "variance": 1.0}},
        "algorithm": "ucb",
        "estimators": ["procedure_ucb", "naive"],
        "naive_c0_grid": [0.2, 1.5],
        "alpha_grid": [0.15, 0.25],
        "horizon_grid": [500, 5000],
        "replications": 10,
        "master_seed": 7,
        "width_scale": 1.0
    })");
    const auto config = experiment_config_from_json(j);
    CHECK(config.means == std::vector<double>{1.0, 0.5});
    CHECK(config.algorithm == Algorithm::ucb);
    CHECK(config.estimators.size() == 2);
    CHECK(config.naive_c0_grid == std::vector<double>{0.2, 1.5});
    CHECK(config.master_seed == 7);

    CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json::parse("{}")), ConfigError);
}

TEST_CASE("trajectory JSON round trip") {
    auto config = small_config();
    DemonstratorConfig dem;
    dem.algorithm = Algorithm::ucb;
    dem.alpha = 0.25;
    dem.horizon = 80;
    const auto instance = make_instance(*config.means, RewardModel::gaussian, 1.0);
    const auto trajectory = run_ucb(instance, dem, 11);

    const auto restored = trajectory_from_json(trajectory_to_json(trajectory));
    CHECK(restored.algorithm == trajectory.algorithm);
    CHECK(restored.horizon == trajectory.horizon);
    CHECK(restored.alpha == trajectory.alpha);
    CHECK(restored.width_scale == trajectory.width_scale);
    CHECK(restored.actions == trajectory.actions);
    CHECK(restored.pull_counts == trajectory.pull_counts);

    // Tampered counts are rejected.
    auto j = trajectory_to_json(trajectory);
    j["pull_counts"][0] = j["pull_counts"][0].get<std::int64_t>() + 1;
    CHECK_THROWS_AS(trajectory_from_json(j), ConfigError);
}

TEST_CASE("instance JSON round trip") {
    const auto instance = make_instance({0.3, 0.9, 0.1}, RewardModel::gaussian, 0.25);
    const auto restored = instance_from_json(instance_to_json(instance));
    CHECK(restored.means == instance.means);
    CHECK(restored.model == instance.model);
    CHECK(restored.variance == instance.variance);

    const auto bern = instance_from_json(nlohmann::json::parse(
        R"({"means": [0.2, 0.8], "model": {"type": "bernoulli"}})"));
    CHECK(bern.model == RewardModel::bernoulli);
}

TEST_CASE("format_double round trips") {
    for (double value : {0.5, 1.0 / 3.0, 0.1, 123456.789, 1e-17, -0.0078125}) {
        CHECK(std::stod(format_double(value)) == value);
    }
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("report CSV layout") {
    Trajectory trajectory;
    trajectory.algorithm = Algorithm::sae;
    trajectory.horizon = 6;
    trajectory.actions = {0, 1, 0, 2, 0, 0};
    trajectory.pull_counts = {4, 1, 1};
    trajectory.hidden_rewards.assign(6, 0.0);
    const auto report = estimate_sae(trajectory, 1.0);

    std::ostringstream out;
    write_report_csv(report, out);
    const std::string csv = out.str();
    CHECK(csv.rfind("arm,tau,pulls_at_switch,estimate\n", 0) == 0);
    CHECK(csv.find("\n2,2,1,") != std::string::npos);
    CHECK(csv.find("\n3,4,1,") != std::string::npos);

    const auto j = report_to_json(report);
    CHECK(j["identified_best"] == 1);
    CHECK(j["arms"].size() == 2);
}
