#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "invbandit/bandit.hpp"

using namespace invbandit;

TEST_CASE("make_instance basic construction") {
    const auto two_arm = make_instance({1.0, 0.5}, RewardModel::gaussian, 1.0);
    CHECK(two_arm.num_arms() == 2);
    CHECK(two_arm.unique_best());

    const auto tied = make_instance({0.5, 0.5}, RewardModel::bernoulli);
    CHECK_FALSE(tied.unique_best());

    const auto four_arm = make_instance({1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0},
                                        RewardModel::gaussian, 0.25);
    CHECK(four_arm.num_arms() == 4);
    CHECK(four_arm.unique_best());
}

TEST_CASE("make_instance validation") {
    CHECK_THROWS_AS(make_instance({}, RewardModel::gaussian), EmptyMeans);
    CHECK_THROWS_AS(make_instance({0.5, 1.2}, RewardModel::bernoulli), BernoulliMeanOutOfRange);
    CHECK_THROWS_AS(make_instance({0.5, -0.1}, RewardModel::bernoulli), BernoulliMeanOutOfRange);
    CHECK_THROWS_AS(make_instance({0.5}, RewardModel::gaussian, -1.0), NegativeVariance);
}

TEST_CASE("gap_profile on worked instances") {
    const auto p1 = gap_profile(make_instance({1.0, 0.5}, RewardModel::gaussian, 1.0));
    CHECK(p1.optimal_arm == 0);
    CHECK(p1.optimal_mean == 1.0);
    CHECK(p1.gaps == std::vector<double>{0.0, 0.5});

    const auto p2 = gap_profile(make_instance({0.0, 1.0}, RewardModel::gaussian, 1.0));
    CHECK(p2.optimal_arm == 1);
    CHECK(p2.gaps == std::vector<double>{1.0, 0.0});

    const auto p3 = gap_profile(make_instance({1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0},
                                              RewardModel::gaussian, 0.25));
    REQUIRE(p3.gaps.size() == 4);
    CHECK(p3.gaps[0] == 0.0);
    CHECK(p3.gaps[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(p3.gaps[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(p3.gaps[3] == 1.0);

    CHECK_THROWS_AS(gap_profile(make_instance({0.5, 0.5}, RewardModel::bernoulli)), NonUniqueBest);
}

TEST_CASE("gap_profile commutes with arm permutations") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int num_arms = 2 + static_cast<int>(rng() % 5);
        std::vector<double> means(static_cast<std::size_t>(num_arms));
        for (auto& m : means) m = unif(rng);
        std::sort(means.begin(), means.end());
        means.back() += 0.05;  // force a unique best

        std::vector<int> perm(means.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);

        std::vector<double> permuted(means.size());
        for (std::size_t i = 0; i < means.size(); ++i)
            permuted[static_cast<std::size_t>(perm[i])] = means[i];

        const auto base = gap_profile(make_instance(means, RewardModel::gaussian, 1.0));
        const auto moved = gap_profile(make_instance(permuted, RewardModel::gaussian, 1.0));
        CHECK(moved.optimal_arm == perm[static_cast<std::size_t>(base.optimal_arm)]);
        for (std::size_t i = 0; i < means.size(); ++i)
            CHECK(moved.gaps[static_cast<std::size_t>(perm[i])] ==
                  doctest::Approx(base.gaps[i]).epsilon(1e-14));
    }
}

TEST_CASE("sample_reward degenerate models") {
    const auto det = make_instance({0.7, 0.2}, RewardModel::deterministic);
    RewardTape tape(42, 2);
    CHECK(sample_reward(tape, det, 0) == 0.7);
    CHECK(sample_reward(tape, det, 1) == 0.2);

    const auto certain = make_instance({1.0, 1.0}, RewardModel::bernoulli);
    RewardTape tape2(7, 2);
    for (int i = 0; i < 20; ++i) CHECK(sample_reward(tape2, certain, 0) == 1.0);

    const auto never = make_instance({0.0, 1.0}, RewardModel::bernoulli);
    RewardTape tape3(7, 2);
    for (int i = 0; i < 20; ++i) CHECK(sample_reward(tape3, never, 0) == 0.0);

    CHECK_THROWS_AS(sample_reward(tape3, never, 5), ArmIndexOutOfRange);
}

TEST_CASE("reward tape replay determinism") {
    const auto inst = make_instance({0.0, 0.3}, RewardModel::gaussian, 1.0);
    RewardTape tape(123, 2);

    // Re-reading a cell yields the identical value.
    const double first = tape.read_cell(inst, 0, 0);
    CHECK(tape.read_cell(inst, 0, 0) == first);

    // Consuming the tape matches a pure replay on a fresh tape.
    std::vector<double> drawn;
    for (int i = 0; i < 100; ++i) drawn.push_back(sample_reward(tape, inst, 1));
    CHECK(tape.cells_consumed(1) == 100);
    RewardTape replay(123, 2);
    for (int i = 0; i < 100; ++i) CHECK(replay.read_cell(inst, 1, i) == drawn[static_cast<std::size_t>(i)]);

    // Distinct seeds produce distinct streams.
    RewardTape other(124, 2);
    CHECK(other.read_cell(inst, 1, 0) != tape.read_cell(inst, 1, 0));
}

TEST_CASE("empirical moments of the samplers") {
    const int n = 100000;

    const auto bern = make_instance({0.3}, RewardModel::bernoulli);
    RewardTape tape(2024, 1);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_reward(tape, bern, 0);
        REQUIRE((x == 0.0 || x == 1.0));
        sum += x;
    }
    CHECK(std::abs(sum / n - 0.3) < 0.01);

    const auto gauss = make_instance({0.5}, RewardModel::gaussian, 1.0);
    RewardTape tape2(2025, 1);
    double gsum = 0.0;
    for (int i = 0; i < n; ++i) gsum += sample_reward(tape2, gauss, 0);
    CHECK(std::abs(gsum / n - 0.5) < 3.0 / std::sqrt(static_cast<double>(n)));
}
