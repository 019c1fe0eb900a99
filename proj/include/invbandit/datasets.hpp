#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "invbandit/bandit.hpp"

namespace invbandit {

/// One row of a semi-synthetic arm table: an id, a raw mean, and a raw
/// standard deviation (informational; the normalizers take their own noise
/// parameter).
struct RawArmRow {
    std::string arm_id;
    double mean = 0.0;
    double std = 0.0;
};

struct RawArmTable {
    std::vector<RawArmRow> rows;
    int size() const { return static_cast<int>(rows.size()); }
};

/// Parses a CSV with header `arm_id,mean,std`, preserving row order.
RawArmTable load_arm_table(const std::string& path);

/// Divides all raw means by `mu_max` (which must dominate them) and turns
/// the raw noise level into a Gaussian instance with variance
/// (sigma_raw / mu_max)^2.
BanditInstance normalize_max(const RawArmTable& table, double mu_max, double sigma_raw);

/// Affinely maps raw means onto [0, 1] (min -> 0, max -> 1) and rescales the
/// raw variance by the squared range.
BanditInstance normalize_affine(const RawArmTable& table, double variance_raw);

/// Deterministic stratified subsample of k arms: pinned ids are always
/// included; remaining slots take one uniform draw per nonempty equal-width
/// mean bin (k bins), then uniform fill. Output preserves input row order.
RawArmTable subsample_arms(const RawArmTable& table, int k, std::uint64_t seed,
                           const std::vector<std::string>& pinned_ids);

}  // namespace invbandit
