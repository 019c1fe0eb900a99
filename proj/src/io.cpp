#include "invbandit/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace invbandit {

std::string format_double(double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

nlohmann::json trajectory_to_json(const Trajectory& trajectory) {
    nlohmann::json actions = nlohmann::json::array();
    for (std::int32_t a : trajectory.actions) actions.push_back(a + 1);
    return nlohmann::json{{"algorithm", to_string(trajectory.algorithm)},
                          {"T", trajectory.horizon},
                          {"alpha", trajectory.alpha},
                          {"width_scale", trajectory.width_scale},
                          {"actions", std::move(actions)},
                          {"pull_counts", trajectory.pull_counts}};
}

Trajectory trajectory_from_json(const nlohmann::json& j) {
    Trajectory trajectory;
    try {
        trajectory.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
        trajectory.horizon = j.at("T").get<std::int64_t>();
        trajectory.alpha = j.at("alpha").get<double>();
        trajectory.width_scale = j.at("width_scale").get<double>();
        trajectory.pull_counts = j.at("pull_counts").get<std::vector<std::int64_t>>();
        for (const auto& a : j.at("actions"))
            trajectory.actions.push_back(a.get<std::int32_t>() - 1);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed trajectory JSON: ") + e.what());
    }

    const int num_arms = trajectory.num_arms();
    if (num_arms < 1) throw ConfigError("trajectory has no arms");
    if (static_cast<std::int64_t>(trajectory.actions.size()) != trajectory.horizon)
        throw ConfigError("trajectory actions length does not match T");
    if (trajectory.alpha < 0.0 || trajectory.alpha >= 1.0)
        throw ConfigError("trajectory alpha must lie in [0, 1)");
    if (trajectory.width_scale <= 0.0)
        throw ConfigError("trajectory width_scale must be positive");

    std::vector<std::int64_t> recount(static_cast<std::size_t>(num_arms), 0);
    for (std::int32_t a : trajectory.actions) {
        if (a < 0 || a >= num_arms)
            throw ConfigError("trajectory action outside [1, K]");
        ++recount[static_cast<std::size_t>(a)];
    }
    if (recount != trajectory.pull_counts)
        throw ConfigError("trajectory pull_counts do not match the action sequence");
    return trajectory;
}

nlohmann::json instance_to_json(const BanditInstance& instance) {
    nlohmann::json model{{"type", to_string(instance.model)}};
    if (instance.model == RewardModel::gaussian) model["variance"] = instance.variance;
    return nlohmann::json{{"means", instance.means}, {"model", std::move(model)}};
}

BanditInstance instance_from_json(const nlohmann::json& j) {
    try {
        const auto& model = j.at("model");
        const RewardModel kind = reward_model_from_string(model.at("type").get<std::string>());
        const double variance =
            kind == RewardModel::gaussian ? model.at("variance").get<double>() : 0.0;
        return make_instance(j.at("means").get<std::vector<double>>(), kind, variance);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed instance JSON: ") + e.what());
    }
}

void write_report_csv(const EstimateReport& report, std::ostream& out) {
    out << "arm,tau,pulls_at_switch,estimate\n";
    for (std::size_t arm = 0; arm < report.arms.size(); ++arm) {
        if (static_cast<int>(arm) == report.identified_best) continue;
        out << (arm + 1) << ',';
        if (report.arms[arm]) {
            const ArmEstimate& est = *report.arms[arm];
            if (est.switching_round) out << *est.switching_round;
            out << ',' << est.pulls_at_switch << ',' << format_double(est.value) << '\n';
        } else {
            out << ",,\n";
        }
    }
}

nlohmann::json report_to_json(const EstimateReport& report) {
    nlohmann::json arms = nlohmann::json::array();
    for (std::size_t arm = 0; arm < report.arms.size(); ++arm) {
        if (static_cast<int>(arm) == report.identified_best) continue;
        nlohmann::json entry{{"arm", arm + 1}};
        if (report.arms[arm]) {
            const ArmEstimate& est = *report.arms[arm];
            if (est.switching_round) entry["tau"] = *est.switching_round;
            entry["pulls_at_switch"] = est.pulls_at_switch;
            entry["estimate"] = est.value;
        } else {
            entry["error"] = to_string(report.arm_errors[arm]);
        }
        arms.push_back(std::move(entry));
    }
    nlohmann::json out{{"estimator", to_string(report.estimator)},
                       {"mu_star", report.mu_star},
                       {"identified_best", report.identified_best + 1},
                       {"arms", std::move(arms)}};
    if (report.naive_c0) out["c0"] = *report.naive_c0;
    return out;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path, static_cast<long>(e.byte), e.what());
    }
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << contents;
    if (!out) throw IoError("failed while writing file: " + path);
}

}  // namespace invbandit
