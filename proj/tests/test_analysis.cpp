#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "invbandit/analysis.hpp"

using namespace invbandit;

namespace {

Trajectory with_counts(std::vector<std::int64_t> counts) {
    Trajectory trajectory;
    trajectory.pull_counts = std::move(counts);
    std::int64_t total = 0;
    for (std::int64_t c : trajectory.pull_counts) total += c;
    trajectory.horizon = total;
    return trajectory;
}

}  // namespace

TEST_CASE("pseudo_regret worked examples") {
    const auto two = make_instance({1.0, 0.5}, RewardModel::gaussian, 1.0);
    CHECK(pseudo_regret(two, with_counts({900, 100})) == 50.0);
    CHECK(pseudo_regret(two, with_counts({1000, 0})) == 0.0);

    const auto four = make_instance({1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0}, RewardModel::gaussian, 0.25);
    CHECK(pseudo_regret(four, with_counts({700, 100, 100, 100})) ==
          doctest::Approx(200.0).epsilon(1e-12));

    CHECK_THROWS_AS(pseudo_regret(make_instance({1.0, 1.0}, RewardModel::gaussian, 1.0),
                                  with_counts({5, 5})),
                    NonUniqueBest);
}

TEST_CASE("pseudo_regret is permutation equivariant") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> means{0.9, 0.4, 0.1};
        std::vector<std::int64_t> counts{40 + static_cast<std::int64_t>(rng() % 100),
                                         static_cast<std::int64_t>(rng() % 50),
                                         static_cast<std::int64_t>(rng() % 50)};
        const double base =
            pseudo_regret(make_instance(means, RewardModel::gaussian, 1.0), with_counts(counts));
        // Swap arms 2 and 3 together with their counts.
        std::swap(means[1], means[2]);
        std::swap(counts[1], counts[2]);
        const double swapped =
            pseudo_regret(make_instance(means, RewardModel::gaussian, 1.0), with_counts(counts));
        CHECK(base == doctest::Approx(swapped).epsilon(1e-14));
    }
}

TEST_CASE("estimation_errors") {
    const auto inst = make_instance({1.0, 0.5, 0.0}, RewardModel::gaussian, 1.0);
    EstimateReport report;
    report.identified_best = 0;
    report.arms.resize(3);
    report.arm_errors.assign(3, ArmEstimateError::none);
    report.arms[1] = ArmEstimate{std::nullopt, 10, 0.45};
    report.arms[2] = ArmEstimate{std::nullopt, 10, -0.1};

    const auto errors = estimation_errors(inst, report);
    CHECK(!errors[0].has_value());
    CHECK(*errors[1] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(*errors[2] == doctest::Approx(0.1).epsilon(1e-12));  // negative estimates allowed
}

TEST_CASE("kappa worked values and scaling") {
    CHECK(std::abs(kappa(0.0, 100, 0.5) - 73.682722975809469) < 1e-9);
    CHECK(std::abs(kappa(0.5, 10000, 1.0) - 792.0) < 1e-9);
    CHECK(kappa(0.2, 3000, 0.25) == doctest::Approx(4.0 * kappa(0.2, 3000, 0.5)).epsilon(1e-12));
    // kappa * gap^2 depends only on (alpha, T).
    CHECK(kappa(0.3, 700, 0.17) * 0.17 * 0.17 ==
          doctest::Approx(kappa(0.3, 700, 0.71) * 0.71 * 0.71).epsilon(1e-12));
    CHECK_THROWS_AS(kappa(0.0, 100, 0.0), ZeroGap);
}

TEST_CASE("minimax_lower_bound") {
    CHECK(minimax_lower_bound(64.0) == doctest::Approx(0.0078125).epsilon(1e-15));
    CHECK(minimax_lower_bound(1.0) == 1.0 / 16.0);
    CHECK(minimax_lower_bound(0.25) == 1.0 / 16.0);
    CHECK(minimax_lower_bound(0.0) == 1.0 / 16.0);
    // Nonincreasing in the expected pulls.
    double previous = 1.0;
    for (double n : {0.5, 1.0, 2.0, 10.0, 1000.0}) {
        CHECK(minimax_lower_bound(n) <= previous);
        previous = minimax_lower_bound(n);
    }
}

TEST_CASE("tradeoff_curve") {
    CHECK(tradeoff_curve(0.5, 50.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(tradeoff_curve(0.5, 200.0) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(tradeoff_curve(3.0, 3.0) == 1.0);
    CHECK_THROWS_AS(tradeoff_curve(0.0, 50.0), NonPositiveInput);
    CHECK_THROWS_AS(tradeoff_curve(0.5, 0.0), NonPositiveInput);
}

TEST_CASE("reference_curves bundles the bounds consistently") {
    const auto curves = reference_curves(0.0, 100, 0.5);
    CHECK(std::abs(curves.kappa - 73.682722975809469) < 1e-9);
    CHECK(curves.pulls_lower == doctest::Approx(curves.kappa / 32.0).epsilon(1e-15));
    CHECK(curves.pulls_upper == doctest::Approx(8.0 * curves.kappa).epsilon(1e-15));
    CHECK(std::abs(curves.regret_bound - 294.73089190323788) < 1e-9);
    CHECK(curves.minimax_error_lb ==
          doctest::Approx(minimax_lower_bound(curves.kappa)).epsilon(1e-15));
    CHECK(curves.tradeoff_error ==
          doctest::Approx(tradeoff_curve(0.5, curves.regret_bound)).epsilon(1e-15));
}

TEST_CASE("regret_upper_bound") {
    CHECK(std::abs(regret_upper_bound(0.0, 100, {0.0, 0.5}) - 294.73089190323788) < 1e-9);
    CHECK(regret_upper_bound(0.0, 100, {0.0, 1.0}) ==
          doctest::Approx(regret_upper_bound(0.0, 100, {0.0, 2.0}) * 2.0).epsilon(1e-12));
    CHECK(regret_upper_bound(0.25, 500, {0.0}) == 0.0);  // no suboptimal arms
    CHECK_THROWS_AS(regret_upper_bound(0.0, 100, {0.0, -0.5}), ZeroGap);
}

TEST_CASE("aggregate worked examples") {
    RunMetrics a{10.0, {std::nullopt, 0.1}, {90, 10}};
    RunMetrics b{20.0, {std::nullopt, 0.3}, {80, 20}};
    const auto agg = aggregate({a, b});
    CHECK(agg.replications == 2);
    CHECK(agg.mean_regret == 15.0);
    CHECK(agg.arms[1].estimate_count == 2);
    CHECK(*agg.arms[1].mean_abs_error == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(*agg.arms[1].mse == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(agg.arms[1].mean_pulls == 15.0);
    CHECK(!agg.arms[0].mean_abs_error.has_value());

    // Single run: stderr defined as 0 and flagged.
    const auto single = aggregate({a});
    CHECK(*single.arms[1].stderr_abs_error == 0.0);
    CHECK(single.degenerate_stderr);

    // Identical runs: MSE equals the squared error, stderr 0.
    const auto repeated = aggregate(std::vector<RunMetrics>(100, a));
    CHECK(*repeated.arms[1].mse == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(*repeated.arms[1].stderr_abs_error == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(aggregate({}), EmptyRuns);
}

TEST_CASE("aggregate satisfies mse >= mean^2") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<RunMetrics> runs;
        for (int i = 0; i < 20; ++i)
            runs.push_back({unif(rng) * 100.0, {std::optional<double>(unif(rng))}, {50}});
        const auto agg = aggregate(runs);
        CHECK(*agg.arms[0].mse >=
              *agg.arms[0].mean_abs_error * *agg.arms[0].mean_abs_error - 1e-12);
    }
}

TEST_CASE("loglog_slope exact recoveries") {
    const auto inverse = loglog_slope({{1.0, 1.0}, {10.0, 0.1}});
    CHECK(inverse.slope == doctest::Approx(-1.0).epsilon(1e-12));

    const auto flat = loglog_slope({{1.0, 2.0}, {std::exp(1.0), 2.0}});
    CHECK(flat.slope == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(flat.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    const auto half = loglog_slope({{1.0, 1.0}, {4.0, 2.0}, {16.0, 4.0}});
    CHECK(half.slope == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(loglog_slope({{1.0, 1.0}}), TooFewPoints);
    CHECK_THROWS_AS(loglog_slope({{1.0, 1.0}, {-2.0, 1.0}}), NonPositivePoint);
    CHECK_THROWS_AS(loglog_slope({{1.0, 1.0}, {1.0, 0.0}}), NonPositivePoint);
}

TEST_CASE("loglog_slope recovers random power laws") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double exponent = unif(rng);
        const double scale = std::exp(unif(rng));
        std::vector<std::pair<double, double>> points;
        for (double x : {0.5, 1.0, 3.0, 10.0, 40.0})
            points.emplace_back(x, scale * std::pow(x, exponent));
        const auto fit = loglog_slope(points);
        CHECK(fit.slope == doctest::Approx(exponent).epsilon(1e-9));
        CHECK(fit.intercept == doctest::Approx(std::log(scale)).epsilon(1e-9));
    }
}
