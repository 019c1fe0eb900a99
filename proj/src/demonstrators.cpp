#include "invbandit/demonstrators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "invbandit/rng.hpp"

namespace invbandit {

namespace {

constexpr std::uint64_t kEtcStreamSalt = 0x45544353414c5455ULL;

struct RunState {
    RunState(const BanditInstance& instance, const DemonstratorConfig& config,
             std::uint64_t seed)
        : tape(seed, instance.num_arms()), stats(instance.means.size()) {
        trajectory.algorithm = config.algorithm;
        trajectory.horizon = config.horizon;
        trajectory.alpha = config.alpha;
        trajectory.width_scale = config.width_scale;
        trajectory.actions.reserve(static_cast<std::size_t>(config.horizon));
        trajectory.hidden_rewards.reserve(static_cast<std::size_t>(config.horizon));
    }

    void pull(const BanditInstance& instance, int arm) {
        const double reward = sample_reward(tape, instance, arm);
        stats[static_cast<std::size_t>(arm)].pulls += 1;
        stats[static_cast<std::size_t>(arm)].reward_sum += reward;
        trajectory.actions.push_back(arm);
        trajectory.hidden_rewards.push_back(reward);
    }

    Trajectory finish() {
        trajectory.pull_counts.resize(stats.size(), 0);
        for (std::size_t i = 0; i < stats.size(); ++i)
            trajectory.pull_counts[i] = stats[i].pulls;
        return std::move(trajectory);
    }

    RewardTape tape;
    std::vector<ArmStatistics> stats;
    Trajectory trajectory;
};

}  // namespace

const char* to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::sae: return "sae";
        case Algorithm::ucb: return "ucb";
        case Algorithm::etc: return "etc";
    }
    return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "sae") return Algorithm::sae;
    if (name == "ucb") return Algorithm::ucb;
    if (name == "etc") return Algorithm::etc;
    throw ConfigError("unknown algorithm '" + name + "'");
}

double exploration_factor(double alpha, std::int64_t horizon) {
    if (horizon < 2) throw HorizonTooSmall("horizon must be at least 2, got " +
                                           std::to_string(horizon));
    if (alpha < 0.0 || alpha >= 1.0)
        throw ConfigError("alpha must lie in [0, 1), got " + std::to_string(alpha));
    const double t = static_cast<double>(horizon);
    if (alpha < 1e-12) return std::log(t);
    return (std::pow(t, alpha) - 1.0) / alpha;
}

double confidence_width(double alpha, std::int64_t horizon, std::int64_t pulls,
                        double width_scale) {
    if (pulls <= 0) throw ZeroPulls();
    return width_scale *
           std::sqrt(2.0 * exploration_factor(alpha, horizon) / static_cast<double>(pulls));
}

std::int64_t default_etc_exploration(std::int64_t horizon) {
    // Smallest m with m^3 >= T^2; float pow alone misrounds perfect cubes.
    const double t = static_cast<double>(horizon);
    std::int64_t m = static_cast<std::int64_t>(std::cbrt(t * t));
    while (m > 1 && (m - 1) * (m - 1) * (m - 1) >= horizon * horizon) --m;
    while (m * m * m < horizon * horizon) ++m;
    return m;
}

void validate_config(const DemonstratorConfig& config, int num_arms) {
    if (config.alpha < 0.0 || config.alpha >= 1.0)
        throw ConfigError("alpha must lie in [0, 1), got " + std::to_string(config.alpha));
    if (config.width_scale <= 0.0)
        throw ConfigError("width_scale must be positive, got " +
                          std::to_string(config.width_scale));
    if (config.horizon < num_arms)
        throw HorizonTooSmall("horizon " + std::to_string(config.horizon) +
                              " smaller than number of arms " + std::to_string(num_arms));
    if (config.horizon < 2)
        throw HorizonTooSmall("horizon must be at least 2, got " +
                              std::to_string(config.horizon));
    if (config.etc_exploration_rounds) {
        if (config.algorithm != Algorithm::etc)
            throw ConfigError("etc_exploration_rounds is only valid for the etc algorithm");
        if (*config.etc_exploration_rounds < 0 || *config.etc_exploration_rounds > config.horizon)
            throw ConfigError("etc_exploration_rounds must lie in [0, horizon]");
    }
}

Trajectory run_sae(const BanditInstance& instance, const DemonstratorConfig& config,
                   std::uint64_t seed) {
    if (config.algorithm != Algorithm::sae)
        throw ConfigError("run_sae called with a non-sae config");
    const int num_arms = instance.num_arms();
    validate_config(config, num_arms);

    RunState state(instance, config, seed);
    state.trajectory.elimination_epochs.assign(static_cast<std::size_t>(num_arms),
                                               std::nullopt);

    std::vector<bool> active(static_cast<std::size_t>(num_arms), true);
    int active_count = num_arms;
    std::int64_t round = 0;
    std::int64_t epoch = 0;

    while (active_count > 1 && round < config.horizon) {
        ++epoch;
        int pulled_this_epoch = 0;
        for (int arm = 0; arm < num_arms && round < config.horizon; ++arm) {
            if (!active[static_cast<std::size_t>(arm)]) continue;
            state.pull(instance, arm);
            ++round;
            ++pulled_this_epoch;
        }
        // Rounds ran out mid-epoch: truncate without an elimination check.
        if (pulled_this_epoch < active_count) break;

        const double width = confidence_width(config.alpha, config.horizon, epoch,
                                              config.width_scale);
        double best_active_mean = -std::numeric_limits<double>::infinity();
        for (int arm = 0; arm < num_arms; ++arm)
            if (active[static_cast<std::size_t>(arm)])
                best_active_mean = std::max(best_active_mean,
                                            state.stats[static_cast<std::size_t>(arm)].mean());

        for (int arm = 0; arm < num_arms; ++arm) {
            if (!active[static_cast<std::size_t>(arm)]) continue;
            if (state.stats[static_cast<std::size_t>(arm)].mean() <=
                best_active_mean - 2.0 * width) {
                active[static_cast<std::size_t>(arm)] = false;
                state.trajectory.elimination_epochs[static_cast<std::size_t>(arm)] = epoch;
                --active_count;
            }
        }
    }

    int survivor = 0;
    for (int arm = 0; arm < num_arms; ++arm)
        if (active[static_cast<std::size_t>(arm)]) { survivor = arm; break; }
    while (round < config.horizon) {
        state.pull(instance, survivor);
        ++round;
    }
    return state.finish();
}

Trajectory run_ucb(const BanditInstance& instance, const DemonstratorConfig& config,
                   std::uint64_t seed) {
    if (config.algorithm != Algorithm::ucb)
        throw ConfigError("run_ucb called with a non-ucb config");
    const int num_arms = instance.num_arms();
    validate_config(config, num_arms);

    RunState state(instance, config, seed);
    for (std::int64_t round = 0; round < config.horizon; ++round) {
        int choice = -1;
        for (int arm = 0; arm < num_arms; ++arm) {
            if (state.stats[static_cast<std::size_t>(arm)].pulls == 0) { choice = arm; break; }
        }
        if (choice < 0) {
            double best_index = -std::numeric_limits<double>::infinity();
            for (int arm = 0; arm < num_arms; ++arm) {
                const auto& s = state.stats[static_cast<std::size_t>(arm)];
                const double index =
                    s.mean() + confidence_width(config.alpha, config.horizon, s.pulls,
                                                config.width_scale);
                if (index > best_index) {
                    best_index = index;
                    choice = arm;
                }
            }
        }
        state.pull(instance, choice);
    }
    return state.finish();
}

Trajectory run_etc(const BanditInstance& instance, const DemonstratorConfig& config,
                   std::uint64_t seed) {
    if (config.algorithm != Algorithm::etc)
        throw ConfigError("run_etc called with a non-etc config");
    const int num_arms = instance.num_arms();
    validate_config(config, num_arms);

    const std::int64_t exploration =
        std::min<std::int64_t>(config.etc_exploration_rounds.value_or(
                                   default_etc_exploration(config.horizon)),
                               config.horizon);

    RunState state(instance, config, seed);
    for (std::int64_t round = 0; round < exploration; ++round) {
        const std::uint64_t key = mix_key(seed ^ kEtcStreamSalt, 0,
                                          static_cast<std::uint64_t>(round));
        state.pull(instance, static_cast<int>(bounded_draw(key,
                                              static_cast<std::uint64_t>(num_arms))));
    }

    int commit = 0;
    double best_mean = -std::numeric_limits<double>::infinity();
    for (int arm = 0; arm < num_arms; ++arm) {
        const auto& s = state.stats[static_cast<std::size_t>(arm)];
        if (s.pulls > 0 && s.mean() > best_mean) {
            best_mean = s.mean();
            commit = arm;
        }
    }
    for (std::int64_t round = exploration; round < config.horizon; ++round)
        state.pull(instance, commit);
    return state.finish();
}

Trajectory run_demonstrator(const BanditInstance& instance, const DemonstratorConfig& config,
                            std::uint64_t seed) {
    switch (config.algorithm) {
        case Algorithm::sae: return run_sae(instance, config, seed);
        case Algorithm::ucb: return run_ucb(instance, config, seed);
        case Algorithm::etc: return run_etc(instance, config, seed);
    }
    throw ConfigError("unknown algorithm");
}

}  // namespace invbandit
