// Command-line surface: simulate demonstrations, estimate rewards from them,
// run config-driven experiment grids, ingest semi-synthetic arm tables, and
// emit theoretical reference curves. Exit codes: 0 success, 1 validation
// error, 2 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invbandit/analysis.hpp"
#include "invbandit/datasets.hpp"
#include "invbandit/experiment.hpp"
#include "invbandit/io.hpp"

namespace {

using namespace invbandit;

void write_to(const std::optional<std::string>& path, const std::string& contents) {
    if (path) {
        write_text_file(*path, contents);
    } else {
        std::cout << contents;
    }
}

struct SimulateArgs {
    std::vector<double> means;
    std::string model = "gaussian";
    double variance = 1.0;
    std::string algorithm;
    double alpha = 0.0;
    std::int64_t horizon = 0;
    double width_scale = 1.0;
    std::optional<std::int64_t> etc_rounds;
    std::uint64_t seed = 0;
    std::optional<std::string> out;
};

int run_simulate(const SimulateArgs& args) {
    const BanditInstance instance =
        make_instance(args.means, reward_model_from_string(args.model), args.variance);
    DemonstratorConfig config;
    config.algorithm = algorithm_from_string(args.algorithm);
    config.alpha = args.alpha;
    config.horizon = args.horizon;
    config.width_scale = args.width_scale;
    config.etc_exploration_rounds = args.etc_rounds;
    const Trajectory trajectory = run_demonstrator(instance, config, args.seed);
    write_to(args.out, trajectory_to_json(trajectory).dump(2) + "\n");
    return 0;
}

struct EstimateArgs {
    std::string trajectory_path;
    double mu_star = 0.0;
    std::string estimator;
    double c0 = 1.0;
    bool force = false;
    std::optional<std::string> out_prefix;
};

int run_estimate(const EstimateArgs& args) {
    const Trajectory trajectory = trajectory_from_json(load_json_file(args.trajectory_path));
    const DemonstrationView view(trajectory);
    EstimateReport report;
    switch (estimator_kind_from_string(args.estimator)) {
        case EstimatorKind::procedure_sae:
            report = estimate_sae(view, args.mu_star, args.force);
            break;
        case EstimatorKind::procedure_ucb:
            report = estimate_ucb(view, args.mu_star, args.force);
            break;
        case EstimatorKind::naive:
            report = estimate_naive(view, args.mu_star, {args.c0});
            break;
    }
    std::ostringstream csv;
    write_report_csv(report, csv);
    if (args.out_prefix) {
        write_text_file(*args.out_prefix + ".csv", csv.str());
        write_text_file(*args.out_prefix + ".json", report_to_json(report).dump(2) + "\n");
    } else {
        std::cout << csv.str();
    }
    return 0;
}

struct ExperimentArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    int threads = 1;
    bool force = false;
};

int run_experiment_cmd(const ExperimentArgs& args) {
    ExperimentConfig config = experiment_config_from_json(load_json_file(args.config_path));
    if (args.seed) config.master_seed = *args.seed;
    if (args.force) config.force = true;
    const ResultTable table = run_experiment(config, args.threads);
    write_result_files(table, args.out_dir);
    return 0;
}

struct IngestArgs {
    std::string input;
    std::string normalization;
    double mu_max = 0.0;
    double sigma_raw = 0.0;
    double variance_raw = 0.0;
    std::optional<int> subsample_k;
    std::uint64_t subsample_seed = 0;
    std::vector<std::string> pinned;
    std::optional<std::string> out;
};

int run_ingest(const IngestArgs& args) {
    RawArmTable table = load_arm_table(args.input);
    if (args.subsample_k)
        table = subsample_arms(table, *args.subsample_k, args.subsample_seed, args.pinned);
    BanditInstance instance;
    if (args.normalization == "max") {
        instance = normalize_max(table, args.mu_max, args.sigma_raw);
    } else if (args.normalization == "affine") {
        instance = normalize_affine(table, args.variance_raw);
    } else {
        throw ConfigError("unknown normalization '" + args.normalization + "'");
    }
    write_to(args.out, instance_to_json(instance).dump(2) + "\n");
    return 0;
}

struct CurvesArgs {
    std::vector<double> alphas{0.0};
    std::vector<std::int64_t> horizons;
    std::vector<double> gaps;
    std::optional<std::string> out;
};

int run_curves(const CurvesArgs& args) {
    std::ostringstream out;
    out << "alpha,T,gap,kappa,pulls_lower,pulls_upper,regret_bound,minimax_error_lb,"
           "tradeoff_error\n";
    for (double alpha : args.alphas) {
        for (std::int64_t horizon : args.horizons) {
            for (double gap : args.gaps) {
                const TheoreticalCurves curves = reference_curves(alpha, horizon, gap);
                out << format_double(alpha) << ',' << horizon << ',' << format_double(gap)
                    << ',' << format_double(curves.kappa) << ','
                    << format_double(curves.pulls_lower) << ','
                    << format_double(curves.pulls_upper) << ','
                    << format_double(curves.regret_bound) << ','
                    << format_double(curves.minimax_error_lb) << ','
                    << format_double(curves.tradeoff_error) << '\n';
            }
        }
    }
    write_to(args.out, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inverse-bandit simulator and reward-estimation toolkit"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "run one demonstrator, emit trajectory JSON");
    simulate->add_option("--means", sim.means, "arm means, comma separated")
        ->delimiter(',')->required();
    simulate->add_option("--model", sim.model, "gaussian|bernoulli|deterministic");
    simulate->add_option("--variance", sim.variance, "Gaussian variance");
    simulate->add_option("--algorithm", sim.algorithm, "sae|ucb|etc")->required();
    simulate->add_option("--alpha", sim.alpha, "exploration exponent in [0,1)");
    simulate->add_option("--T", sim.horizon, "horizon")->required();
    simulate->add_option("--width-scale", sim.width_scale, "confidence width multiplier");
    simulate->add_option("--etc-rounds", sim.etc_rounds, "ETC exploration rounds");
    simulate->add_option("--seed", sim.seed, "run seed");
    simulate->add_option("--out", sim.out, "output file (stdout if omitted)");

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "estimate arm means from a trajectory");
    estimate->add_option("--trajectory", est.trajectory_path, "trajectory JSON file")->required();
    estimate->add_option("--mu-star", est.mu_star, "known optimal mean")->required();
    estimate->add_option("--estimator", est.estimator, "procedure_sae|procedure_ucb|naive")
        ->required();
    estimate->add_option("--c0", est.c0, "naive estimator constant");
    estimate->add_flag("--force", est.force, "apply the estimator despite a tag mismatch");
    estimate->add_option("--out", est.out_prefix, "output prefix (<prefix>.csv, <prefix>.json)");

    ExperimentArgs exp;
    auto* experiment = app.add_subcommand("experiment", "run a config-driven experiment grid");
    experiment->add_option("--config", exp.config_path, "experiment config JSON")->required();
    experiment->add_option("--seed", exp.seed, "override the config master seed");
    experiment->add_option("--out", exp.out_dir, "output directory");
    experiment->add_option("--threads", exp.threads, "worker threads (speed only)");
    experiment->add_flag("--force", exp.force, "apply estimators despite tag mismatches");

    IngestArgs ing;
    auto* ingest = app.add_subcommand("ingest", "normalize an arm table into an instance JSON");
    ingest->add_option("--input", ing.input, "CSV with header arm_id,mean,std")->required();
    ingest->add_option("--normalization", ing.normalization, "max|affine")->required();
    ingest->add_option("--mu-max", ing.mu_max, "normalization constant (max mode)");
    ingest->add_option("--sigma-raw", ing.sigma_raw, "raw noise std (max mode)");
    ingest->add_option("--variance-raw", ing.variance_raw, "raw variance (affine mode)");
    ingest->add_option("--subsample-k", ing.subsample_k, "stratified subsample size");
    ingest->add_option("--subsample-seed", ing.subsample_seed, "subsample seed");
    ingest->add_option("--pinned", ing.pinned, "arm ids that must stay in the subsample");
    ingest->add_option("--out", ing.out, "output file (stdout if omitted)");

    CurvesArgs cur;
    auto* curves = app.add_subcommand("curves", "emit theoretical reference curves as CSV");
    curves->add_option("--alpha", cur.alphas, "exploration exponents");
    curves->add_option("--T", cur.horizons, "horizons")->required();
    curves->add_option("--gap", cur.gaps, "suboptimality gaps")->required();
    curves->add_option("--out", cur.out, "output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (estimate->parsed()) return run_estimate(est);
        if (experiment->parsed()) return run_experiment_cmd(exp);
        if (ingest->parsed()) return run_ingest(ing);
        if (curves->parsed()) return run_curves(cur);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
