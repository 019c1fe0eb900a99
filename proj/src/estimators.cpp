#include "invbandit/estimators.hpp"

#include <algorithm>
#include <cmath>

namespace invbandit {

namespace {

void check_arm(const DemonstrationView& demonstration, int arm) {
    if (arm < 0 || arm >= demonstration.num_arms())
        throw ArmIndexOutOfRange(arm, demonstration.num_arms());
}

void check_tag(const DemonstrationView& demonstration, Algorithm expected, bool force) {
    if (force || demonstration.algorithm == expected) return;
    throw AlgorithmTagMismatch(std::string("trajectory was produced by '") +
                               to_string(demonstration.algorithm) + "' but the estimator expects '" +
                               to_string(expected) + "' (pass force to override)");
}

EstimateReport make_report(EstimatorKind kind, double mu_star, int best, int num_arms) {
    EstimateReport report;
    report.estimator = kind;
    report.mu_star = mu_star;
    report.identified_best = best;
    report.arms.assign(static_cast<std::size_t>(num_arms), std::nullopt);
    report.arm_errors.assign(static_cast<std::size_t>(num_arms), ArmEstimateError::none);
    return report;
}

}  // namespace

const char* to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::procedure_sae: return "procedure_sae";
        case EstimatorKind::procedure_ucb: return "procedure_ucb";
        case EstimatorKind::naive: return "naive";
    }
    return "unknown";
}

EstimatorKind estimator_kind_from_string(const std::string& name) {
    if (name == "procedure_sae") return EstimatorKind::procedure_sae;
    if (name == "procedure_ucb") return EstimatorKind::procedure_ucb;
    if (name == "naive") return EstimatorKind::naive;
    throw ConfigError("unknown estimator '" + name + "'");
}

const char* to_string(ArmEstimateError error) {
    switch (error) {
        case ArmEstimateError::none: return "none";
        case ArmEstimateError::arm_never_pulled: return "arm_never_pulled";
        case ArmEstimateError::arm_still_active: return "arm_still_active";
        case ArmEstimateError::no_valid_switch: return "no_valid_switch";
        case ArmEstimateError::best_arm_unpulled: return "best_arm_unpulled";
    }
    return "unknown";
}

int most_pulled_arm(const DemonstrationView& demonstration) {
    if (demonstration.actions.empty() || demonstration.pull_counts.empty())
        throw EmptyTrajectory();
    int best = 0;
    for (int arm = 1; arm < demonstration.num_arms(); ++arm)
        if (demonstration.pull_counts[static_cast<std::size_t>(arm)] >
            demonstration.pull_counts[static_cast<std::size_t>(best)])
            best = arm;
    return best;
}

std::int64_t sae_switching_round(const DemonstrationView& demonstration, int arm) {
    check_arm(demonstration, arm);
    const auto& actions = demonstration.actions;
    for (std::int64_t t = static_cast<std::int64_t>(actions.size()) - 1; t >= 0; --t) {
        if (actions[static_cast<std::size_t>(t)] != arm) continue;
        if (t == static_cast<std::int64_t>(actions.size()) - 1) throw ArmStillActive(arm);
        return t + 1;
    }
    throw ArmNeverPulled(arm);
}

std::int64_t ucb_switching_round(const DemonstrationView& demonstration, int arm, int best) {
    check_arm(demonstration, arm);
    check_arm(demonstration, best);
    if (arm == best)
        throw ValidationError("switching round is undefined for the most-pulled arm itself");

    const auto& actions = demonstration.actions;
    std::int64_t last_best = -1;
    for (std::int64_t t = static_cast<std::int64_t>(actions.size()) - 1; t >= 0; --t) {
        if (actions[static_cast<std::size_t>(t)] == best) { last_best = t; break; }
    }
    for (std::int64_t t = last_best - 1; t >= 0; --t)
        if (actions[static_cast<std::size_t>(t)] == arm) return t + 1;
    throw NoValidSwitch(arm);
}

std::int64_t pulls_up_to(const DemonstrationView& demonstration, int arm, std::int64_t round) {
    check_arm(demonstration, arm);
    std::int64_t count = 0;
    const std::int64_t limit =
        std::min<std::int64_t>(round, static_cast<std::int64_t>(demonstration.actions.size()));
    for (std::int64_t t = 0; t < limit; ++t)
        if (demonstration.actions[static_cast<std::size_t>(t)] == arm) ++count;
    return count;
}

double sae_point_estimate(double mu_star, double alpha, std::int64_t horizon,
                          std::int64_t pulls_at_switch, double width_scale) {
    return mu_star - 2.0 * confidence_width(alpha, horizon, pulls_at_switch, width_scale);
}

double ucb_point_estimate(double mu_star, double alpha, std::int64_t horizon,
                          std::int64_t arm_pulls, std::int64_t best_pulls,
                          double width_scale) {
    return mu_star - (confidence_width(alpha, horizon, arm_pulls, width_scale) -
                      confidence_width(alpha, horizon, best_pulls, width_scale));
}

double naive_point_estimate(double mu_star, double c0, std::int64_t horizon,
                            std::int64_t final_pulls) {
    if (final_pulls <= 0) throw ZeroPulls();
    return mu_star - c0 * std::sqrt(std::log(static_cast<double>(horizon)) /
                                    static_cast<double>(final_pulls));
}

EstimateReport estimate_sae(const DemonstrationView& demonstration, double mu_star,
                            bool force) {
    check_tag(demonstration, Algorithm::sae, force);
    const int best = most_pulled_arm(demonstration);
    auto report = make_report(EstimatorKind::procedure_sae, mu_star, best,
                              demonstration.num_arms());

    for (int arm = 0; arm < demonstration.num_arms(); ++arm) {
        if (arm == best) continue;
        try {
            const std::int64_t tau = sae_switching_round(demonstration, arm);
            // tau is the arm's last pull, so the count through tau is its total.
            const std::int64_t pulls = demonstration.pull_counts[static_cast<std::size_t>(arm)];
            report.arms[static_cast<std::size_t>(arm)] =
                ArmEstimate{tau, pulls,
                            sae_point_estimate(mu_star, demonstration.alpha,
                                               demonstration.horizon, pulls,
                                               demonstration.width_scale)};
        } catch (const ArmNeverPulled&) {
            report.arm_errors[static_cast<std::size_t>(arm)] = ArmEstimateError::arm_never_pulled;
        } catch (const ArmStillActive&) {
            report.arm_errors[static_cast<std::size_t>(arm)] = ArmEstimateError::arm_still_active;
        }
    }
    return report;
}

EstimateReport estimate_ucb(const DemonstrationView& demonstration, double mu_star,
                            bool force) {
    check_tag(demonstration, Algorithm::ucb, force);
    const int best = most_pulled_arm(demonstration);
    auto report = make_report(EstimatorKind::procedure_ucb, mu_star, best,
                              demonstration.num_arms());

    for (int arm = 0; arm < demonstration.num_arms(); ++arm) {
        if (arm == best) continue;
        try {
            const std::int64_t tau = ucb_switching_round(demonstration, arm, best);
            const std::int64_t arm_pulls = pulls_up_to(demonstration, arm, tau);
            const std::int64_t best_pulls = pulls_up_to(demonstration, best, tau);
            if (best_pulls == 0) {
                report.arm_errors[static_cast<std::size_t>(arm)] =
                    ArmEstimateError::best_arm_unpulled;
                continue;
            }
            report.arms[static_cast<std::size_t>(arm)] =
                ArmEstimate{tau, arm_pulls,
                            ucb_point_estimate(mu_star, demonstration.alpha,
                                               demonstration.horizon, arm_pulls, best_pulls,
                                               demonstration.width_scale)};
        } catch (const NoValidSwitch&) {
            report.arm_errors[static_cast<std::size_t>(arm)] = ArmEstimateError::no_valid_switch;
        }
    }
    return report;
}

EstimateReport estimate_naive(const DemonstrationView& demonstration, double mu_star,
                              const NaiveEstimatorConfig& config) {
    if (config.c0 <= 0.0)
        throw NonPositiveInput("naive estimator constant c0 must be positive");
    if (demonstration.actions.empty()) throw EmptyTrajectory();

    const int best = most_pulled_arm(demonstration);
    auto report = make_report(EstimatorKind::naive, mu_star, best, demonstration.num_arms());
    report.naive_c0 = config.c0;

    for (int arm = 0; arm < demonstration.num_arms(); ++arm) {
        if (arm == best) continue;
        const std::int64_t pulls = demonstration.pull_counts[static_cast<std::size_t>(arm)];
        if (pulls == 0) {
            report.arm_errors[static_cast<std::size_t>(arm)] = ArmEstimateError::arm_never_pulled;
            continue;
        }
        report.arms[static_cast<std::size_t>(arm)] =
            ArmEstimate{std::nullopt, pulls,
                        naive_point_estimate(mu_star, config.c0, demonstration.horizon, pulls)};
    }
    return report;
}

}  // namespace invbandit
