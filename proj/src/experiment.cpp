#include "invbandit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include "invbandit/io.hpp"
#include "invbandit/rng.hpp"

namespace invbandit {

namespace {

constexpr const char* kVersion = "0.1.0";

struct EstimatorInstance {
    EstimatorKind kind;
    double c0 = 0.0;
    std::string label;
};

std::vector<EstimatorInstance> expand_estimators(const ExperimentConfig& config) {
    std::vector<EstimatorInstance> out;
    for (EstimatorKind kind : config.estimators) {
        if (kind == EstimatorKind::naive) {
            for (double c0 : config.naive_c0_grid)
                out.push_back({kind, c0, std::string("naive_c0=") + format_double(c0)});
        } else {
            out.push_back({kind, 0.0, to_string(kind)});
        }
    }
    return out;
}

DatasetSpec dataset_spec_from_json(const nlohmann::json& j) {
    DatasetSpec spec;
    spec.path = j.at("path").get<std::string>();
    const std::string norm = j.at("normalization").get<std::string>();
    if (norm == "max") {
        spec.normalization = DatasetSpec::Normalization::max;
        spec.mu_max = j.at("mu_max").get<double>();
        spec.sigma_raw = j.at("sigma_raw").get<double>();
    } else if (norm == "affine") {
        spec.normalization = DatasetSpec::Normalization::affine;
        spec.variance_raw = j.at("variance_raw").get<double>();
    } else {
        throw ConfigError("unknown normalization '" + norm + "'");
    }
    if (j.contains("subsample")) {
        const auto& s = j.at("subsample");
        SubsampleSpec sub;
        sub.k = s.at("k").get<int>();
        sub.seed = s.value("seed", std::uint64_t{0});
        if (s.contains("pinned")) sub.pinned = s.at("pinned").get<std::vector<std::string>>();
        spec.subsample = std::move(sub);
    }
    return spec;
}

BanditInstance instance_from_dataset(const DatasetSpec& spec) {
    RawArmTable table = load_arm_table(spec.path);
    if (spec.subsample)
        table = subsample_arms(table, spec.subsample->k, spec.subsample->seed,
                               spec.subsample->pinned);
    if (spec.normalization == DatasetSpec::Normalization::max)
        return normalize_max(table, spec.mu_max, spec.sigma_raw);
    return normalize_affine(table, spec.variance_raw);
}

struct CellOutput {
    double regret = 0.0;
    std::vector<std::int64_t> pulls;
    struct PerEstimator {
        std::vector<std::optional<double>> estimates;
        std::vector<std::optional<std::int64_t>> taus;
    };
    std::vector<PerEstimator> estimators;
};

std::string csv_opt(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string{};
}

}  // namespace

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    try {
        if (j.contains("instance")) {
            const auto& inst = j.at("instance");
            if (inst.contains("dataset")) {
                config.dataset = dataset_spec_from_json(inst.at("dataset"));
            }
            if (inst.contains("means"))
                config.means = inst.at("means").get<std::vector<double>>();
            if (inst.contains("model")) {
                const auto& model = inst.at("model");
                config.model = reward_model_from_string(model.at("type").get<std::string>());
                if (config.model == RewardModel::gaussian)
                    config.variance = model.value("variance", 1.0);
            }
        }
        if (j.contains("gap_schedule_beta"))
            config.gap_schedule_beta = j.at("gap_schedule_beta").get<double>();

        config.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
        for (const auto& name : j.at("estimators"))
            config.estimators.push_back(estimator_kind_from_string(name.get<std::string>()));
        if (j.contains("naive_c0_grid"))
            config.naive_c0_grid = j.at("naive_c0_grid").get<std::vector<double>>();
        config.alpha_grid = j.at("alpha_grid").get<std::vector<double>>();
        config.horizon_grid = j.at("horizon_grid").get<std::vector<std::int64_t>>();
        config.replications = j.at("replications").get<int>();
        config.master_seed = j.at("master_seed").get<std::uint64_t>();
        config.width_scale = j.value("width_scale", 1.0);
        config.force = j.value("force", false);
        if (j.contains("etc_exploration_rounds"))
            config.etc_exploration_rounds = j.at("etc_exploration_rounds").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed experiment config: ") + e.what());
    }
    return config;
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, double alpha,
                              std::int64_t horizon, int run) {
    std::uint64_t h = splitmix64(master_seed ^ 0x8f1bbcdcbfa53e0bULL);
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(alpha));
    h = splitmix64(h ^ static_cast<std::uint64_t>(horizon));
    return splitmix64(h ^ static_cast<std::uint64_t>(run));
}

ResultTable run_experiment(const ExperimentConfig& config, int threads) {
    if (config.alpha_grid.empty()) throw ConfigError("alpha_grid is empty");
    if (config.horizon_grid.empty()) throw ConfigError("horizon_grid is empty");
    if (config.estimators.empty()) throw ConfigError("estimators list is empty");
    if (config.replications < 1) throw ConfigError("replications must be at least 1");
    if (config.width_scale <= 0.0) throw ConfigError("width_scale must be positive");
    for (double alpha : config.alpha_grid)
        if (alpha < 0.0 || alpha >= 1.0)
            throw ConfigError("alpha_grid values must lie in [0, 1)");
    if (config.gap_schedule_beta &&
        (*config.gap_schedule_beta <= 0.0 || *config.gap_schedule_beta > 0.5))
        throw ConfigError("gap_schedule_beta must lie in (0, 0.5]");

    const int sources = (config.means ? 1 : 0) + (config.dataset ? 1 : 0) +
                        (config.gap_schedule_beta ? 1 : 0);
    if (sources != 1)
        throw ConfigError("config needs exactly one of: instance means, dataset, gap schedule");

    for (EstimatorKind kind : config.estimators) {
        if (kind == EstimatorKind::naive) {
            if (config.naive_c0_grid.empty()) throw ConfigError("naive_c0_grid is empty");
            for (double c0 : config.naive_c0_grid)
                if (c0 <= 0.0) throw ConfigError("naive_c0_grid values must be positive");
        }
        if (!config.force) {
            if (kind == EstimatorKind::procedure_sae && config.algorithm != Algorithm::sae)
                throw AlgorithmTagMismatch("procedure_sae applied to a non-sae demonstrator "
                                           "(set force to override)");
            if (kind == EstimatorKind::procedure_ucb && config.algorithm != Algorithm::ucb)
                throw AlgorithmTagMismatch("procedure_ucb applied to a non-ucb demonstrator "
                                           "(set force to override)");
        }
    }

    // Resolve one instance per horizon (they differ only under a gap schedule).
    const std::size_t num_horizons = config.horizon_grid.size();
    std::vector<BanditInstance> instances;
    instances.reserve(num_horizons);
    if (config.gap_schedule_beta) {
        for (std::int64_t horizon : config.horizon_grid) {
            const double gap = std::pow(static_cast<double>(horizon), -*config.gap_schedule_beta);
            instances.push_back(make_instance({1.0, 1.0 - gap}, config.model, config.variance));
        }
    } else {
        const BanditInstance base =
            config.dataset ? instance_from_dataset(*config.dataset)
                           : make_instance(*config.means, config.model, config.variance);
        instances.assign(num_horizons, base);
    }

    std::vector<GapProfile> profiles;
    profiles.reserve(num_horizons);
    for (const auto& instance : instances) {
        if (instance.num_arms() < 2)
            throw ConfigError("estimation experiments need at least 2 arms");
        profiles.push_back(gap_profile(instance));
    }

    ResultTable table;
    table.metadata.generator_name = kGeneratorName;
    table.metadata.gaussian_method = kGaussianMethod;
    table.metadata.version = kVersion;
    table.metadata.master_seed = config.master_seed;

    for (std::size_t ti = 0; ti < num_horizons; ++ti) {
        const std::int64_t horizon = config.horizon_grid[ti];
        if (horizon < instances[ti].num_arms() || horizon < 2)
            throw HorizonTooSmall("horizon " + std::to_string(horizon) + " too small for " +
                                  std::to_string(instances[ti].num_arms()) + " arms");
        for (double alpha : config.alpha_grid) {
            double kappa_sum = 0.0;
            for (double gap : profiles[ti].gaps)
                if (gap > 0.0) kappa_sum += kappa(alpha, horizon, gap);
            if (static_cast<double>(horizon) < 16.0 * kappa_sum)
                table.metadata.warnings.push_back(
                    "horizon T=" + std::to_string(horizon) + " at alpha=" +
                    format_double(alpha) + " is below 16*sum(kappa)=" +
                    format_double(16.0 * kappa_sum) +
                    "; most-pulled-arm identification is not guaranteed");
        }
    }

    const std::vector<EstimatorInstance> estimators = expand_estimators(config);
    const std::size_t num_alphas = config.alpha_grid.size();
    const std::size_t runs = static_cast<std::size_t>(config.replications);
    const std::size_t cell_count = num_alphas * num_horizons * runs;
    std::vector<CellOutput> cells(cell_count);

    auto compute_cell = [&](std::size_t idx) {
        const std::size_t ai = idx / (num_horizons * runs);
        const std::size_t ti = (idx / runs) % num_horizons;
        const int run = static_cast<int>(idx % runs) + 1;
        const double alpha = config.alpha_grid[ai];
        const std::int64_t horizon = config.horizon_grid[ti];
        const BanditInstance& instance = instances[ti];
        const GapProfile& profile = profiles[ti];

        DemonstratorConfig dem;
        dem.algorithm = config.algorithm;
        dem.alpha = alpha;
        dem.horizon = horizon;
        dem.width_scale = config.width_scale;
        dem.etc_exploration_rounds = config.etc_exploration_rounds;

        const std::uint64_t seed = derive_run_seed(config.master_seed, alpha, horizon, run);
        const Trajectory trajectory = run_demonstrator(instance, dem, seed);
        const DemonstrationView view(trajectory);

        CellOutput& cell = cells[idx];
        cell.regret = pseudo_regret(instance, trajectory);
        cell.pulls = trajectory.pull_counts;
        cell.estimators.resize(estimators.size());
        for (std::size_t ei = 0; ei < estimators.size(); ++ei) {
            EstimateReport report;
            switch (estimators[ei].kind) {
                case EstimatorKind::procedure_sae:
                    report = estimate_sae(view, profile.optimal_mean, config.force);
                    break;
                case EstimatorKind::procedure_ucb:
                    report = estimate_ucb(view, profile.optimal_mean, config.force);
                    break;
                case EstimatorKind::naive:
                    report = estimate_naive(view, profile.optimal_mean, {estimators[ei].c0});
                    break;
            }
            auto& out = cell.estimators[ei];
            out.estimates.resize(report.arms.size());
            out.taus.resize(report.arms.size());
            for (std::size_t arm = 0; arm < report.arms.size(); ++arm) {
                if (!report.arms[arm]) continue;
                out.estimates[arm] = report.arms[arm]->value;
                out.taus[arm] = report.arms[arm]->switching_round;
            }
        }
    };

    const int worker_count = std::max(1, std::min<int>(threads, static_cast<int>(cell_count)));
    if (worker_count == 1) {
        for (std::size_t idx = 0; idx < cell_count; ++idx) compute_cell(idx);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (std::size_t idx = next.fetch_add(1); idx < cell_count;
                 idx = next.fetch_add(1)) {
                try {
                    compute_cell(idx);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    // Raw rows in cell order: one row per (estimator, arm), including the
    // identified-best and errored arms (their estimate cells stay empty).
    for (std::size_t idx = 0; idx < cell_count; ++idx) {
        const std::size_t ai = idx / (num_horizons * runs);
        const std::size_t ti = (idx / runs) % num_horizons;
        const int run = static_cast<int>(idx % runs) + 1;
        const BanditInstance& instance = instances[ti];
        const CellOutput& cell = cells[idx];
        for (std::size_t ei = 0; ei < estimators.size(); ++ei) {
            for (int arm = 0; arm < instance.num_arms(); ++arm) {
                ResultRow row;
                row.algorithm = to_string(config.algorithm);
                row.estimator = estimators[ei].label;
                row.alpha = config.alpha_grid[ai];
                row.horizon = config.horizon_grid[ti];
                row.beta = config.gap_schedule_beta;
                row.run_id = run;
                row.arm = arm + 1;
                row.true_mean = instance.means[static_cast<std::size_t>(arm)];
                row.regret = cell.regret;
                row.pulls = cell.pulls[static_cast<std::size_t>(arm)];
                const auto& est = cell.estimators[ei];
                if (est.estimates[static_cast<std::size_t>(arm)]) {
                    row.estimate = est.estimates[static_cast<std::size_t>(arm)];
                    row.abs_error = std::abs(*row.estimate - row.true_mean);
                    row.tau = est.taus[static_cast<std::size_t>(arm)];
                }
                table.raw.push_back(std::move(row));
            }
        }
    }
    std::stable_sort(table.raw.begin(), table.raw.end(),
                     [](const ResultRow& a, const ResultRow& b) {
                         return std::tie(a.alpha, a.horizon, a.run_id, a.arm) <
                                std::tie(b.alpha, b.horizon, b.run_id, b.arm);
                     });

    // Aggregate per (estimator, alpha, horizon) over replications.
    bool degenerate_stderr = false;
    for (std::size_t ei = 0; ei < estimators.size(); ++ei) {
        for (std::size_t ai = 0; ai < num_alphas; ++ai) {
            for (std::size_t ti = 0; ti < num_horizons; ++ti) {
                std::vector<RunMetrics> metrics;
                metrics.reserve(runs);
                for (std::size_t run = 0; run < runs; ++run) {
                    const std::size_t idx = (ai * num_horizons + ti) * runs + run;
                    const CellOutput& cell = cells[idx];
                    RunMetrics m;
                    m.pseudo_regret = cell.regret;
                    m.pulls = cell.pulls;
                    m.abs_errors.resize(cell.pulls.size());
                    for (std::size_t arm = 0; arm < cell.pulls.size(); ++arm)
                        if (cell.estimators[ei].estimates[arm])
                            m.abs_errors[arm] =
                                std::abs(*cell.estimators[ei].estimates[arm] -
                                         instances[ti].means[arm]);
                    metrics.push_back(std::move(m));
                }
                const AggregateMetrics agg = aggregate(metrics);
                degenerate_stderr = degenerate_stderr || agg.degenerate_stderr;
                for (std::size_t arm = 0; arm < agg.arms.size(); ++arm) {
                    AggregateRow row;
                    row.algorithm = to_string(config.algorithm);
                    row.estimator = estimators[ei].label;
                    row.alpha = config.alpha_grid[ai];
                    row.horizon = config.horizon_grid[ti];
                    row.arm = static_cast<int>(arm) + 1;
                    row.n_runs = agg.arms[arm].estimate_count;
                    row.mean_abs_error = agg.arms[arm].mean_abs_error;
                    row.mse = agg.arms[arm].mse;
                    row.stderr_abs_error = agg.arms[arm].stderr_abs_error;
                    row.mean_regret = agg.mean_regret;
                    row.mean_pulls = agg.arms[arm].mean_pulls;
                    table.aggregated.push_back(std::move(row));
                }
            }
        }
    }
    std::stable_sort(table.aggregated.begin(), table.aggregated.end(),
                     [](const AggregateRow& a, const AggregateRow& b) {
                         return std::tie(a.estimator, a.alpha, a.horizon, a.arm) <
                                std::tie(b.estimator, b.alpha, b.horizon, b.arm);
                     });
    if (degenerate_stderr)
        table.metadata.warnings.push_back(
            "standard error reported as 0 where only a single estimate was available");
    return table;
}

std::string raw_csv(const ResultTable& table) {
    std::ostringstream out;
    out << "algorithm,estimator,alpha,T,beta,run_id,arm,true_mean,estimate,abs_error,regret,"
           "pulls,tau\n";
    for (const ResultRow& row : table.raw) {
        out << row.algorithm << ',' << row.estimator << ',' << format_double(row.alpha) << ','
            << row.horizon << ',' << csv_opt(row.beta) << ',' << row.run_id << ',' << row.arm
            << ',' << format_double(row.true_mean) << ',' << csv_opt(row.estimate) << ','
            << csv_opt(row.abs_error) << ',' << format_double(row.regret) << ',' << row.pulls
            << ',';
        if (row.tau) out << *row.tau;
        out << '\n';
    }
    return out.str();
}

std::string aggregated_csv(const ResultTable& table) {
    std::ostringstream out;
    out << "algorithm,estimator,alpha,T,arm,n_runs,mean_abs_error,mse,stderr,mean_regret\n";
    for (const AggregateRow& row : table.aggregated) {
        out << row.algorithm << ',' << row.estimator << ',' << format_double(row.alpha) << ','
            << row.horizon << ',' << row.arm << ',' << row.n_runs << ','
            << csv_opt(row.mean_abs_error) << ',' << csv_opt(row.mse) << ','
            << csv_opt(row.stderr_abs_error) << ',' << format_double(row.mean_regret) << '\n';
    }
    return out.str();
}

std::string metadata_json(const ResultTable& table) {
    nlohmann::json j{{"generator_name", table.metadata.generator_name},
                     {"gaussian_method", table.metadata.gaussian_method},
                     {"version", table.metadata.version},
                     {"master_seed", table.metadata.master_seed},
                     {"warnings", table.metadata.warnings}};
    return j.dump(2) + "\n";
}

void write_result_files(const ResultTable& table, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir);
    const std::filesystem::path dir(out_dir);
    write_text_file((dir / "raw.csv").string(), raw_csv(table));
    write_text_file((dir / "aggregated.csv").string(), aggregated_csv(table));
    write_text_file((dir / "metadata.json").string(), metadata_json(table));
}

}  // namespace invbandit
