#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "invbandit/bandit.hpp"

namespace invbandit {

enum class Algorithm { sae, ucb, etc };

const char* to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);

/// Parameters of a demonstrator run. `alpha` inflates the confidence widths
/// (more exploration, higher regret); `width_scale` multiplies every width
/// (e.g. 5*sigma for variance-adjusted runs on non-unit-variance instances).
struct DemonstratorConfig {
    Algorithm algorithm = Algorithm::ucb;
    double alpha = 0.0;
    std::int64_t horizon = 0;
    double width_scale = 1.0;
    std::optional<std::int64_t> etc_exploration_rounds;  // ETC only; default ceil(T^(2/3))
};

/// Running per-arm tallies. `mean()` is defined only once `pulls >= 1`.
struct ArmStatistics {
    std::int64_t pulls = 0;
    double reward_sum = 0.0;
    double mean() const { return reward_sum / static_cast<double>(pulls); }
};

/// A demonstration: the action sequence plus derived pull counts. Rewards
/// are kept only for diagnostics; estimators operate on a view that cannot
/// see them.
struct Trajectory {
    Algorithm algorithm = Algorithm::ucb;
    std::int64_t horizon = 0;
    double alpha = 0.0;
    double width_scale = 1.0;
    std::vector<std::int32_t> actions;       // 0-based arm per round, length = horizon
    std::vector<std::int64_t> pull_counts;   // per arm, sums to horizon
    std::vector<double> hidden_rewards;      // diagnostics only, never read by estimators
    std::vector<std::optional<std::int64_t>> elimination_epochs;  // SAE only

    int num_arms() const { return static_cast<int>(pull_counts.size()); }
};

// (T^alpha - 1)/alpha, with the ln T limit taken for alpha below 1e-12
// (direct evaluation loses all precision there).
double exploration_factor(double alpha, std::int64_t horizon);

// width_scale * sqrt(2 * exploration_factor / pulls). Zero pulls means a
// conceptually infinite width; callers must special-case before calling.
double confidence_width(double alpha, std::int64_t horizon, std::int64_t pulls,
                        double width_scale = 1.0);

// Exact ceil(T^(2/3)), computed in integer arithmetic.
std::int64_t default_etc_exploration(std::int64_t horizon);

void validate_config(const DemonstratorConfig& config, int num_arms);

/// Epoch-based successive arm elimination. Each epoch pulls every active arm
/// once in ascending index order; at epoch end, arms whose sample mean falls
/// 2 widths below the best active sample mean are dropped. The survivor is
/// pulled for the remaining rounds.
Trajectory run_sae(const BanditInstance& instance, const DemonstratorConfig& config,
                   std::uint64_t seed);

/// Optimism-based index policy: each round pulls the arm maximizing sample
/// mean + confidence width. Unpulled arms have infinite width and are taken
/// first in ascending index order; finite ties break to the lowest index.
Trajectory run_ucb(const BanditInstance& instance, const DemonstratorConfig& config,
                   std::uint64_t seed);

/// Explore-then-commit: uniformly random pulls for a fixed number of rounds,
/// then commit to the best sample mean. Low regret, but the action sequence
/// carries no information about how suboptimal the other arms are.
Trajectory run_etc(const BanditInstance& instance, const DemonstratorConfig& config,
                   std::uint64_t seed);

Trajectory run_demonstrator(const BanditInstance& instance, const DemonstratorConfig& config,
                            std::uint64_t seed);

}  // namespace invbandit
