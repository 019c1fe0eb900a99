#pragma once

#include <cstdint>
#include <vector>

#include "invbandit/errors.hpp"

namespace invbandit {

enum class RewardModel { gaussian, bernoulli, deterministic };

const char* to_string(RewardModel model);
RewardModel reward_model_from_string(const std::string& name);

/// A stochastic multi-armed bandit instance: one mean per arm plus a shared
/// reward model. Gaussian means are intentionally NOT truncated to [0, 1];
/// the variance field applies to the Gaussian model only.
struct BanditInstance {
    std::vector<double> means;
    RewardModel model = RewardModel::gaussian;
    double variance = 1.0;

    int num_arms() const { return static_cast<int>(means.size()); }
    bool unique_best() const;
};

/// Derived quantities of an instance with a unique best arm: the optimal
/// arm index (0-based internally; all user-facing I/O is 1-based), its mean,
/// and the per-arm suboptimality gaps (zero at the optimal arm).
struct GapProfile {
    int optimal_arm = 0;
    double optimal_mean = 0.0;
    std::vector<double> gaps;
};

BanditInstance make_instance(std::vector<double> means, RewardModel model,
                             double variance = 1.0);

GapProfile gap_profile(const BanditInstance& instance);

/// Per-arm i.i.d. sample streams addressed by cell index. A cell's value is
/// a pure function of (seed, arm, cell), so replaying a run re-reads the
/// same rewards without storing them; cursors only move forward.
class RewardTape {
  public:
    RewardTape(std::uint64_t seed, int num_arms);

    std::uint64_t seed() const { return seed_; }
    int num_arms() const { return static_cast<int>(cursor_.size()); }
    std::int64_t cells_consumed(int arm) const;

    /// Pure read of one cell; does not move the cursor.
    double read_cell(const BanditInstance& instance, int arm, std::int64_t cell) const;

  private:
    friend double sample_reward(RewardTape& tape, const BanditInstance& instance, int arm);

    std::uint64_t seed_;
    std::vector<std::int64_t> cursor_;
};

/// Draws one reward from the arm's distribution at its current cell and
/// advances that arm's cursor.
double sample_reward(RewardTape& tape, const BanditInstance& instance, int arm);

}  // namespace invbandit
