#include "invbandit/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace invbandit {

double pseudo_regret(const BanditInstance& instance, const Trajectory& trajectory) {
    const GapProfile profile = gap_profile(instance);
    if (trajectory.num_arms() != instance.num_arms())
        throw ValidationError("trajectory arm count does not match instance");
    double regret = 0.0;
    for (std::size_t i = 0; i < profile.gaps.size(); ++i)
        regret += profile.gaps[i] * static_cast<double>(trajectory.pull_counts[i]);
    return regret;
}

std::vector<std::optional<double>> estimation_errors(const BanditInstance& instance,
                                                     const EstimateReport& report) {
    if (static_cast<int>(report.arms.size()) > instance.num_arms())
        throw ValidationError("report has more arms than the instance");
    std::vector<std::optional<double>> errors(report.arms.size());
    for (std::size_t i = 0; i < report.arms.size(); ++i)
        if (report.arms[i])
            errors[i] = std::abs(report.arms[i]->value - instance.means[i]);
    return errors;
}

double kappa(double alpha, std::int64_t horizon, double gap) {
    if (gap <= 0.0) throw ZeroGap();
    return 4.0 * exploration_factor(alpha, horizon) / (gap * gap);
}

double minimax_lower_bound(double expected_pulls) {
    if (expected_pulls < 0.0)
        throw NonPositiveInput("expected pulls must be nonnegative");
    if (expected_pulls <= 1.0) return 1.0 / 16.0;
    return 1.0 / (16.0 * std::sqrt(expected_pulls));
}

double tradeoff_curve(double gap, double regret) {
    if (gap <= 0.0 || regret <= 0.0)
        throw NonPositiveInput("tradeoff curve requires positive gap and regret");
    return std::sqrt(gap / regret);
}

double regret_upper_bound(double alpha, std::int64_t horizon, const std::vector<double>& gaps) {
    const double factor = exploration_factor(alpha, horizon);
    double bound = 0.0;
    for (double gap : gaps) {
        if (gap < 0.0) throw ZeroGap();
        if (gap == 0.0) continue;  // optimal arm
        bound += 32.0 * factor / gap;
    }
    return bound;
}

AggregateMetrics aggregate(const std::vector<RunMetrics>& runs) {
    if (runs.empty()) throw EmptyRuns();
    const std::size_t num_arms = runs.front().pulls.size();
    for (const auto& run : runs)
        if (run.pulls.size() != num_arms || run.abs_errors.size() != num_arms)
            throw ValidationError("aggregate requires a consistent arm set across runs");

    AggregateMetrics out;
    out.replications = static_cast<std::int64_t>(runs.size());
    out.arms.resize(num_arms);

    double regret_sum = 0.0;
    for (const auto& run : runs) regret_sum += run.pseudo_regret;
    out.mean_regret = regret_sum / static_cast<double>(runs.size());

    for (std::size_t arm = 0; arm < num_arms; ++arm) {
        ArmAggregate& agg = out.arms[arm];
        double pull_sum = 0.0;
        double err_sum = 0.0;
        double sq_sum = 0.0;
        for (const auto& run : runs) {
            pull_sum += static_cast<double>(run.pulls[arm]);
            if (run.abs_errors[arm]) {
                ++agg.estimate_count;
                err_sum += *run.abs_errors[arm];
                sq_sum += *run.abs_errors[arm] * *run.abs_errors[arm];
            }
        }
        agg.mean_pulls = pull_sum / static_cast<double>(runs.size());
        if (agg.estimate_count == 0) continue;

        const double n = static_cast<double>(agg.estimate_count);
        agg.mean_abs_error = err_sum / n;
        agg.mse = sq_sum / n;
        if (agg.estimate_count == 1) {
            agg.stderr_abs_error = 0.0;
            out.degenerate_stderr = true;
        } else {
            double centered_sq = 0.0;
            for (const auto& run : runs) {
                if (!run.abs_errors[arm]) continue;
                const double d = *run.abs_errors[arm] - *agg.mean_abs_error;
                centered_sq += d * d;
            }
            agg.stderr_abs_error = std::sqrt(centered_sq / (n - 1.0) / n);
        }
    }
    return out;
}

SlopeFit loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw TooFewPoints();
    for (const auto& [x, y] : points)
        if (x <= 0.0 || y <= 0.0) throw NonPositivePoint();

    double su = 0.0, sv = 0.0;
    for (const auto& [x, y] : points) {
        su += std::log(x);
        sv += std::log(y);
    }
    const double n = static_cast<double>(points.size());
    const double mu = su / n;
    const double mv = sv / n;

    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        const double du = std::log(x) - mu;
        sxx += du * du;
        sxy += du * (std::log(y) - mv);
    }
    if (sxx == 0.0) throw ValidationError("slope fit undefined: all x values identical");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mv - fit.slope * mu;
    return fit;
}

TheoreticalCurves reference_curves(double alpha, std::int64_t horizon, double gap) {
    TheoreticalCurves curves;
    curves.kappa = kappa(alpha, horizon, gap);
    curves.pulls_lower = curves.kappa / 32.0;
    curves.pulls_upper = 8.0 * curves.kappa;
    curves.regret_bound = regret_upper_bound(alpha, horizon, {0.0, gap});
    curves.minimax_error_lb = minimax_lower_bound(curves.kappa);
    curves.tradeoff_error = tradeoff_curve(gap, curves.regret_bound);
    return curves;
}

}  // namespace invbandit
