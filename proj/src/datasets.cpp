#include "invbandit/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "invbandit/rng.hpp"

namespace invbandit {

namespace {

constexpr std::uint64_t kSubsampleSalt = 0x73756273616d706cULL;

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_number(const std::string& field, const std::string& path, long line_no) {
    try {
        std::size_t consumed = 0;
        const double value = std::stod(field, &consumed);
        if (consumed != field.size())
            throw ParseError(path, line_no, "trailing characters in number '" + field + "'");
        return value;
    } catch (const std::invalid_argument&) {
        throw ParseError(path, line_no, "not a number: '" + field + "'");
    } catch (const std::out_of_range&) {
        throw ParseError(path, line_no, "number out of range: '" + field + "'");
    }
}

}  // namespace

RawArmTable load_arm_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path, 1, "empty file");
    if (strip_cr(line) != "arm_id,mean,std")
        throw ParseError(path, 1, "expected header 'arm_id,mean,std'");

    RawArmTable table;
    std::unordered_set<std::string> seen;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw ParseError(path, line_no, "expected 3 fields, got " +
                                                std::to_string(fields.size()));
        RawArmRow row;
        row.arm_id = fields[0];
        row.mean = parse_number(fields[1], path, line_no);
        row.std = parse_number(fields[2], path, line_no);
        if (row.std < 0.0) throw NegativeStd(row.arm_id);
        if (!seen.insert(row.arm_id).second) throw DuplicateArmId(row.arm_id);
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw ParseError(path, line_no, "no data rows");
    return table;
}

BanditInstance normalize_max(const RawArmTable& table, double mu_max, double sigma_raw) {
    if (table.rows.empty()) throw EmptyMeans();
    if (mu_max <= 0.0) throw NonPositiveInput("mu_max must be positive");
    if (sigma_raw < 0.0) throw NegativeStd("(sigma_raw)");

    double max_mean = -std::numeric_limits<double>::infinity();
    for (const auto& row : table.rows) max_mean = std::max(max_mean, row.mean);
    if (mu_max < max_mean) throw MuMaxTooSmall(mu_max, max_mean);

    std::vector<double> means;
    means.reserve(table.rows.size());
    for (const auto& row : table.rows) means.push_back(row.mean / mu_max);
    const double sigma = sigma_raw / mu_max;
    return make_instance(std::move(means), RewardModel::gaussian, sigma * sigma);
}

BanditInstance normalize_affine(const RawArmTable& table, double variance_raw) {
    if (table.rows.empty()) throw EmptyMeans();
    if (variance_raw < 0.0) throw NegativeVariance(variance_raw);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& row : table.rows) {
        lo = std::min(lo, row.mean);
        hi = std::max(hi, row.mean);
    }
    if (lo == hi) throw DegenerateRange();

    const double range = hi - lo;
    std::vector<double> means;
    means.reserve(table.rows.size());
    for (const auto& row : table.rows) means.push_back((row.mean - lo) / range);
    return make_instance(std::move(means), RewardModel::gaussian,
                         variance_raw / (range * range));
}

RawArmTable subsample_arms(const RawArmTable& table, int k, std::uint64_t seed,
                           const std::vector<std::string>& pinned_ids) {
    const int n = table.size();
    if (k < 0 || k > n) throw KTooLarge(k, n);

    std::unordered_map<std::string, int> index_of;
    for (int i = 0; i < n; ++i) index_of.emplace(table.rows[static_cast<std::size_t>(i)].arm_id, i);

    std::vector<bool> selected(static_cast<std::size_t>(n), false);
    int selected_count = 0;
    for (const auto& id : pinned_ids) {
        const auto it = index_of.find(id);
        if (it == index_of.end()) throw UnknownPinnedId(id);
        if (!selected[static_cast<std::size_t>(it->second)]) {
            selected[static_cast<std::size_t>(it->second)] = true;
            ++selected_count;
        }
    }
    if (selected_count > k)
        throw ConfigError("more pinned ids than subsample slots");

    if (selected_count < k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& row : table.rows) {
            lo = std::min(lo, row.mean);
            hi = std::max(hi, row.mean);
        }
        const double range = hi - lo;

        // k equal-width mean bins; a degenerate range puts everything in bin 0.
        std::vector<std::vector<int>> bins(static_cast<std::size_t>(k));
        for (int i = 0; i < n; ++i) {
            int b = 0;
            if (range > 0.0) {
                const double x = (table.rows[static_cast<std::size_t>(i)].mean - lo) / range;
                b = std::min(k - 1, static_cast<int>(x * static_cast<double>(k)));
            }
            bins[static_cast<std::size_t>(b)].push_back(i);
        }

        std::uint64_t counter = 0;
        auto draw = [&](std::uint64_t bound) {
            return bounded_draw(mix_key(seed ^ kSubsampleSalt, 1, counter++), bound);
        };

        for (int b = 0; b < k && selected_count < k; ++b) {
            std::vector<int> candidates;
            for (int i : bins[static_cast<std::size_t>(b)])
                if (!selected[static_cast<std::size_t>(i)]) candidates.push_back(i);
            if (candidates.empty()) continue;
            const int pick = candidates[draw(candidates.size())];
            selected[static_cast<std::size_t>(pick)] = true;
            ++selected_count;
        }
        while (selected_count < k) {
            std::vector<int> candidates;
            for (int i = 0; i < n; ++i)
                if (!selected[static_cast<std::size_t>(i)]) candidates.push_back(i);
            const int pick = candidates[draw(candidates.size())];
            selected[static_cast<std::size_t>(pick)] = true;
            ++selected_count;
        }
    }

    RawArmTable out;
    out.rows.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i)
        if (selected[static_cast<std::size_t>(i)]) out.rows.push_back(table.rows[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace invbandit
