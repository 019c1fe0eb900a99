#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "invbandit/bandit.hpp"
#include "invbandit/demonstrators.hpp"
#include "invbandit/estimators.hpp"

namespace invbandit {

/// Realized metrics of one run: pseudo-regret plus per-arm absolute
/// estimation errors (missing where the estimator reported a per-arm error)
/// and final pull counts.
struct RunMetrics {
    double pseudo_regret = 0.0;
    std::vector<std::optional<double>> abs_errors;
    std::vector<std::int64_t> pulls;
};

struct ArmAggregate {
    double mean_pulls = 0.0;
    std::int64_t estimate_count = 0;  // runs contributing a valid estimate
    std::optional<double> mean_abs_error;
    std::optional<double> mse;
    std::optional<double> stderr_abs_error;
};

struct AggregateMetrics {
    std::int64_t replications = 0;
    double mean_regret = 0.0;
    std::vector<ArmAggregate> arms;
    bool degenerate_stderr = false;  // some stderr computed from a single estimate
};

/// Realized pseudo-regret: sum over arms of gap * final pull count.
double pseudo_regret(const BanditInstance& instance, const Trajectory& trajectory);

/// |estimate - true mean| per arm; missing where the report has no estimate.
std::vector<std::optional<double>> estimation_errors(const BanditInstance& instance,
                                                     const EstimateReport& report);

/// Characteristic pull-count scale of a suboptimal arm:
/// 4 * exploration_factor(alpha, T) / gap^2.
double kappa(double alpha, std::int64_t horizon, double gap);

/// Best-case estimation error from `expected_pulls` observations of an arm:
/// (1/16) * min(1/sqrt(expected_pulls), 1).
double minimax_lower_bound(double expected_pulls);

/// Unit-constant reference curve sqrt(gap / regret) for the two-arm
/// error-versus-regret tradeoff.
double tradeoff_curve(double gap, double regret);

/// High-probability regret ceiling: sum over suboptimal arms of
/// 32 * exploration_factor(alpha, T) / gap. Zero gaps (optimal arms) are
/// skipped; negative gaps are invalid.
double regret_upper_bound(double alpha, std::int64_t horizon, const std::vector<double>& gaps);

/// Monte Carlo aggregation in fixed run order: per-arm mean absolute error,
/// MSE, standard error of the mean absolute error, mean pulls, mean regret.
/// Standard error with a single estimate is defined as 0 and flagged.
AggregateMetrics aggregate(const std::vector<RunMetrics>& runs);

/// Ordinary least squares on (ln x, ln y); returns {slope, intercept}.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
};
SlopeFit loglog_slope(const std::vector<std::pair<double, double>>& points);

/// The theoretical reference values for one (alpha, T, gap) cell: the pull
/// scale kappa with its sandwich bounds, the regret ceiling for a single
/// suboptimal arm with that gap, the minimax error floor evaluated at kappa
/// expected pulls, and the tradeoff curve evaluated at the regret ceiling.
struct TheoreticalCurves {
    double kappa = 0.0;
    double pulls_lower = 0.0;   // kappa / 32
    double pulls_upper = 0.0;   // 8 * kappa
    double regret_bound = 0.0;
    double minimax_error_lb = 0.0;
    double tradeoff_error = 0.0;
};
TheoreticalCurves reference_curves(double alpha, std::int64_t horizon, double gap);

}  // namespace invbandit
