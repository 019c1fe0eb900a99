#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "invbandit/demonstrators.hpp"

namespace invbandit {

/// What an estimator is allowed to see of a trajectory: the action sequence
/// and run parameters, but never the rewards. Constructed implicitly from a
/// Trajectory so the exclusion is enforced by the type.
struct DemonstrationView {
    Algorithm algorithm;
    std::int64_t horizon;
    double alpha;
    double width_scale;
    std::span<const std::int32_t> actions;
    std::span<const std::int64_t> pull_counts;

    DemonstrationView(const Trajectory& trajectory)
        : algorithm(trajectory.algorithm),
          horizon(trajectory.horizon),
          alpha(trajectory.alpha),
          width_scale(trajectory.width_scale),
          actions(trajectory.actions),
          pull_counts(trajectory.pull_counts) {}

    int num_arms() const { return static_cast<int>(pull_counts.size()); }
};

enum class EstimatorKind { procedure_sae, procedure_ucb, naive };

const char* to_string(EstimatorKind kind);
EstimatorKind estimator_kind_from_string(const std::string& name);

enum class ArmEstimateError {
    none,
    arm_never_pulled,
    arm_still_active,
    no_valid_switch,
    best_arm_unpulled,  // best arm has zero pulls at the switching round
};

const char* to_string(ArmEstimateError error);

struct ArmEstimate {
    std::optional<std::int64_t> switching_round;  // 1-based; absent for the naive estimator
    std::int64_t pulls_at_switch = 0;
    double value = 0.0;
};

/// Per-arm mean estimates recovered from the action sequence alone. One
/// arm's failure is isolated to its own error entry; the other arms are
/// still estimated. Estimates are raw (never clipped to [0, 1]).
struct EstimateReport {
    EstimatorKind estimator = EstimatorKind::procedure_ucb;
    double mu_star = 0.0;
    int identified_best = 0;  // 0-based
    std::vector<std::optional<ArmEstimate>> arms;   // size K; empty at the best arm
    std::vector<ArmEstimateError> arm_errors;       // size K
    std::optional<double> naive_c0;
};

struct NaiveEstimatorConfig {
    double c0 = 1.0;
};

/// Arm with the largest final pull count; ties break to the lowest index.
int most_pulled_arm(const DemonstrationView& demonstration);

/// Last round at which `arm` is pulled, provided it is not pulled again
/// afterwards (in particular, not at the final round).
std::int64_t sae_switching_round(const DemonstrationView& demonstration, int arm);

/// Last round at which `arm` is pulled with `best` pulled at least once
/// afterwards.
std::int64_t ucb_switching_round(const DemonstrationView& demonstration, int arm, int best);

/// Pulls of `arm` up to and including 1-based `round`.
std::int64_t pulls_up_to(const DemonstrationView& demonstration, int arm, std::int64_t round);

// Single-arm estimate formulas, exposed separately so they can be checked
// against direct evaluation. estimate_sae/estimate_ucb/estimate_naive route
// every arm through these.
double sae_point_estimate(double mu_star, double alpha, std::int64_t horizon,
                          std::int64_t pulls_at_switch, double width_scale);
double ucb_point_estimate(double mu_star, double alpha, std::int64_t horizon,
                          std::int64_t arm_pulls, std::int64_t best_pulls,
                          double width_scale);
double naive_point_estimate(double mu_star, double c0, std::int64_t horizon,
                            std::int64_t final_pulls);

/// Reward estimator for elimination-style demonstrations: each suboptimal
/// arm's gap is read off as twice the confidence width at its last pull.
EstimateReport estimate_sae(const DemonstrationView& demonstration, double mu_star,
                            bool force = false);

/// Reward estimator for optimism-style demonstrations: each suboptimal arm's
/// gap is the difference of the two confidence widths at its switching round.
EstimateReport estimate_ucb(const DemonstrationView& demonstration, double mu_star,
                            bool force = false);

/// Baseline using only final pull counts; not consistent in the horizon.
EstimateReport estimate_naive(const DemonstrationView& demonstration, double mu_star,
                              const NaiveEstimatorConfig& config);

}  // namespace invbandit
