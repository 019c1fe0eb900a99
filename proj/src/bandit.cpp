#include "invbandit/bandit.hpp"

#include <algorithm>
#include <cmath>

#include "invbandit/rng.hpp"

namespace invbandit {

const char* to_string(RewardModel model) {
    switch (model) {
        case RewardModel::gaussian: return "gaussian";
        case RewardModel::bernoulli: return "bernoulli";
        case RewardModel::deterministic: return "deterministic";
    }
    return "unknown";
}

RewardModel reward_model_from_string(const std::string& name) {
    if (name == "gaussian") return RewardModel::gaussian;
    if (name == "bernoulli") return RewardModel::bernoulli;
    if (name == "deterministic") return RewardModel::deterministic;
    throw ConfigError("unknown reward model '" + name + "'");
}

bool BanditInstance::unique_best() const {
    const double best = *std::max_element(means.begin(), means.end());
    return std::count(means.begin(), means.end(), best) == 1;
}

BanditInstance make_instance(std::vector<double> means, RewardModel model, double variance) {
    if (means.empty()) throw EmptyMeans();
    if (model == RewardModel::bernoulli) {
        for (double mu : means)
            if (mu < 0.0 || mu > 1.0) throw BernoulliMeanOutOfRange(mu);
    }
    if (model == RewardModel::gaussian && variance < 0.0) throw NegativeVariance(variance);

    BanditInstance instance;
    instance.means = std::move(means);
    instance.model = model;
    instance.variance = model == RewardModel::gaussian ? variance : 0.0;
    return instance;
}

GapProfile gap_profile(const BanditInstance& instance) {
    if (!instance.unique_best()) throw NonUniqueBest();

    GapProfile profile;
    const auto best = std::max_element(instance.means.begin(), instance.means.end());
    profile.optimal_arm = static_cast<int>(best - instance.means.begin());
    profile.optimal_mean = *best;
    profile.gaps.reserve(instance.means.size());
    for (double mu : instance.means) profile.gaps.push_back(profile.optimal_mean - mu);
    return profile;
}

RewardTape::RewardTape(std::uint64_t seed, int num_arms)
    : seed_(seed), cursor_(static_cast<std::size_t>(num_arms), 0) {
    if (num_arms < 1) throw EmptyMeans();
}

std::int64_t RewardTape::cells_consumed(int arm) const {
    if (arm < 0 || arm >= num_arms()) throw ArmIndexOutOfRange(arm, num_arms());
    return cursor_[static_cast<std::size_t>(arm)];
}

double RewardTape::read_cell(const BanditInstance& instance, int arm, std::int64_t cell) const {
    if (arm < 0 || arm >= num_arms() || arm >= instance.num_arms())
        throw ArmIndexOutOfRange(arm, std::min(num_arms(), instance.num_arms()));

    const double mu = instance.means[static_cast<std::size_t>(arm)];
    const std::uint64_t key = mix_key(seed_, static_cast<std::uint64_t>(arm) + 1,
                                      static_cast<std::uint64_t>(cell));
    switch (instance.model) {
        case RewardModel::deterministic:
            return mu;
        case RewardModel::bernoulli:
            return unit_uniform(key) < mu ? 1.0 : 0.0;
        case RewardModel::gaussian:
            return mu + std::sqrt(instance.variance) * standard_normal(key);
    }
    return mu;
}

double sample_reward(RewardTape& tape, const BanditInstance& instance, int arm) {
    const double value = tape.read_cell(instance, arm, tape.cells_consumed(arm));
    ++tape.cursor_[static_cast<std::size_t>(arm)];
    return value;
}

}  // namespace invbandit
