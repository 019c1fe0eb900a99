#pragma once

#include <stdexcept>
#include <string>

namespace invbandit {

// Domain/config violations. The CLI maps these to exit code 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem and parse failures. The CLI maps these to exit code 2.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyMeans : ValidationError {
    EmptyMeans() : ValidationError("means vector is empty") {}
};

struct BernoulliMeanOutOfRange : ValidationError {
    explicit BernoulliMeanOutOfRange(double mu)
        : ValidationError("Bernoulli mean " + std::to_string(mu) + " outside [0, 1]") {}
};

struct NegativeVariance : ValidationError {
    explicit NegativeVariance(double v)
        : ValidationError("variance must be >= 0, got " + std::to_string(v)) {}
};

struct NonUniqueBest : ValidationError {
    NonUniqueBest() : ValidationError("instance does not have a unique best arm") {}
};

struct ArmIndexOutOfRange : ValidationError {
    ArmIndexOutOfRange(int arm, int num_arms)
        : ValidationError("arm index " + std::to_string(arm + 1) + " outside [1, " +
                          std::to_string(num_arms) + "]") {}
};

struct ZeroPulls : ValidationError {
    ZeroPulls() : ValidationError("confidence width undefined at zero pulls") {}
};

struct HorizonTooSmall : ValidationError {
    explicit HorizonTooSmall(const std::string& what) : ValidationError(what) {}
};

struct EmptyTrajectory : ValidationError {
    EmptyTrajectory() : ValidationError("trajectory has no actions") {}
};

struct ArmNeverPulled : ValidationError {
    explicit ArmNeverPulled(int arm)
        : ValidationError("arm " + std::to_string(arm + 1) + " was never pulled") {}
};

struct ArmStillActive : ValidationError {
    explicit ArmStillActive(int arm)
        : ValidationError("arm " + std::to_string(arm + 1) +
                          " is pulled at the final round; no switching round exists") {}
};

struct NoValidSwitch : ValidationError {
    explicit NoValidSwitch(int arm)
        : ValidationError("arm " + std::to_string(arm + 1) +
                          " has no pull followed by a pull of the most-pulled arm") {}
};

struct AlgorithmTagMismatch : ValidationError {
    explicit AlgorithmTagMismatch(const std::string& what) : ValidationError(what) {}
};

struct ZeroGap : ValidationError {
    ZeroGap() : ValidationError("suboptimality gap must be positive") {}
};

struct NonPositiveInput : ValidationError {
    explicit NonPositiveInput(const std::string& what) : ValidationError(what) {}
};

struct EmptyRuns : ValidationError {
    EmptyRuns() : ValidationError("cannot aggregate an empty run list") {}
};

struct TooFewPoints : ValidationError {
    TooFewPoints() : ValidationError("slope fit requires at least two points") {}
};

struct NonPositivePoint : ValidationError {
    NonPositivePoint() : ValidationError("log-log fit requires strictly positive coordinates") {}
};

struct NegativeStd : ValidationError {
    explicit NegativeStd(const std::string& arm_id)
        : ValidationError("negative std for arm '" + arm_id + "'") {}
};

struct DuplicateArmId : ValidationError {
    explicit DuplicateArmId(const std::string& arm_id)
        : ValidationError("duplicate arm id '" + arm_id + "'") {}
};

struct MuMaxTooSmall : ValidationError {
    MuMaxTooSmall(double mu_max, double max_mean)
        : ValidationError("mu_max " + std::to_string(mu_max) +
                          " is below the largest raw mean " + std::to_string(max_mean)) {}
};

struct DegenerateRange : ValidationError {
    DegenerateRange() : ValidationError("all raw means are equal; affine normalization undefined") {}
};

struct KTooLarge : ValidationError {
    KTooLarge(int k, int table_size)
        : ValidationError("subsample size " + std::to_string(k) + " exceeds table size " +
                          std::to_string(table_size)) {}
};

struct UnknownPinnedId : ValidationError {
    explicit UnknownPinnedId(const std::string& arm_id)
        : ValidationError("pinned arm id '" + arm_id + "' not present in table") {}
};

struct ConfigError : ValidationError {
    explicit ConfigError(const std::string& what) : ValidationError(what) {}
};

struct FileNotFound : IoError {
    explicit FileNotFound(const std::string& path) : IoError("cannot open file: " + path) {}
};

struct ParseError : IoError {
    ParseError(const std::string& path, long line, const std::string& what)
        : IoError(path + ":" + std::to_string(line) + ": " + what), line_number(line) {}
    long line_number;
};

}  // namespace invbandit
