#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "invbandit/analysis.hpp"
#include "invbandit/bandit.hpp"
#include "invbandit/datasets.hpp"
#include "invbandit/demonstrators.hpp"
#include "invbandit/estimators.hpp"

namespace invbandit {

struct SubsampleSpec {
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> pinned;
};

struct DatasetSpec {
    enum class Normalization { max, affine };
    std::string path;
    Normalization normalization = Normalization::max;
    double mu_max = 0.0;        // max normalization
    double sigma_raw = 0.0;     // max normalization
    double variance_raw = 0.0;  // affine normalization
    std::optional<SubsampleSpec> subsample;
};

/// A grid experiment: one instance source, one demonstrator algorithm, a set
/// of estimators, and (alpha, horizon, replication) cells. The optional gap
/// schedule replaces the instance per horizon by the two-arm instance with
/// means (1, 1 - T^-beta).
struct ExperimentConfig {
    std::optional<std::vector<double>> means;
    RewardModel model = RewardModel::gaussian;
    double variance = 1.0;
    std::optional<DatasetSpec> dataset;
    std::optional<double> gap_schedule_beta;

    Algorithm algorithm = Algorithm::ucb;
    std::vector<EstimatorKind> estimators;
    std::vector<double> naive_c0_grid{0.2, 0.75, 1.0, 1.5};
    std::vector<double> alpha_grid;
    std::vector<std::int64_t> horizon_grid;
    int replications = 100;
    std::uint64_t master_seed = 0;
    double width_scale = 1.0;
    bool force = false;
    std::optional<std::int64_t> etc_exploration_rounds;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

/// Per-run seed, collision-free across the (alpha, horizon, run) grid.
std::uint64_t derive_run_seed(std::uint64_t master_seed, double alpha,
                              std::int64_t horizon, int run);

struct ResultRow {
    std::string algorithm;
    std::string estimator;
    double alpha = 0.0;
    std::int64_t horizon = 0;
    std::optional<double> beta;
    int run_id = 0;  // 1-based
    int arm = 0;     // 1-based
    double true_mean = 0.0;
    std::optional<double> estimate;
    std::optional<double> abs_error;
    double regret = 0.0;
    std::int64_t pulls = 0;
    std::optional<std::int64_t> tau;
};

struct AggregateRow {
    std::string algorithm;
    std::string estimator;
    double alpha = 0.0;
    std::int64_t horizon = 0;
    int arm = 0;  // 1-based
    std::int64_t n_runs = 0;
    std::optional<double> mean_abs_error;
    std::optional<double> mse;
    std::optional<double> stderr_abs_error;
    double mean_regret = 0.0;
    double mean_pulls = 0.0;
};

struct RunMetadata {
    std::string generator_name;
    std::string gaussian_method;
    std::string version;
    std::uint64_t master_seed = 0;
    std::vector<std::string> warnings;
};

struct ResultTable {
    std::vector<ResultRow> raw;
    std::vector<AggregateRow> aggregated;
    RunMetadata metadata;
};

/// Runs the whole grid. Output is a pure function of (config, master seed);
/// `threads` only changes wall-clock time.
ResultTable run_experiment(const ExperimentConfig& config, int threads = 1);

std::string raw_csv(const ResultTable& table);
std::string aggregated_csv(const ResultTable& table);
std::string metadata_json(const ResultTable& table);

/// Writes raw.csv, aggregated.csv and metadata.json into `out_dir`.
void write_result_files(const ResultTable& table, const std::string& out_dir);

}  // namespace invbandit
