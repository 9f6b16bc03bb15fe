#ifndef SKILLSCORE_BOOTSTRAP_HPP
#define SKILLSCORE_BOOTSTRAP_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "skillscore/ingest.hpp"
#include "skillscore/rng.hpp"
#include "skillscore/statmath.hpp"

namespace skillscore {

struct BootstrapPlan {
    std::int64_t replicates = 10000;
    std::uint64_t master_seed = 0;
    double alpha = 0.05;  // CI tail probability
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Paired-bootstrap output. Replicate vectors are indexed [coefficient][replicate]
// in replicate order, failed replicates removed. Variances use the 1/B divisor
// over the retained replicates; normal CIs are centered on the full-sample
// estimate.
struct BootstrapResult {
    RegressionFit full_fit;
    std::vector<std::vector<double>> coef_replicates;  // [k][B - failures]
    std::vector<std::vector<double>> t_replicates;     // [k][B - failures]
    std::vector<double> boot_mean;                     // [k]
    std::vector<double> boot_var;                      // [k]
    std::vector<Interval> normal_cis;                  // [k]
    std::vector<Interval> percentile_cis;              // [k]
    std::int64_t failures = 0;
};

// n independent uniform draws from {0, ..., n-1}. Throws data_error if n == 0.
std::vector<std::size_t> resample_rows(std::size_t n, RngStream& rng);

// The probit regression design: X = [1, probit(w1), e1, e2], y = probit(w2).
struct Design {
    Matrix X;
    std::vector<double> y;
};
Design make_design(const Dataset& dataset);

// Resample whole rows B times, refit, and aggregate. Replicate ell draws its
// randomness from substream_seed(master_seed, ell) only, so results are
// bit-identical across thread counts and replicate execution order.
// Rank-deficient resamples are dropped (not retried); more than 10% drops
// aborts with data_error.
BootstrapResult bootstrap_regression(const Dataset& dataset, const BootstrapPlan& plan,
                                     const InferenceOptions& opts = {},
                                     unsigned threads = 1);

// estimate +/- z_{1-alpha/2} * sqrt(variance).
Interval normal_ci(double estimate, double variance, double alpha);

// (alpha/2, 1-alpha/2) empirical quantiles of the replicates, type-7
// interpolation. Throws data_error with fewer than 2 replicates.
Interval percentile_ci(std::span<const double> replicates, double alpha);

// Replicate slopes divided by the mean first-half win rate (relative skill
// slope). Throws std::domain_error when baseline <= 0.
std::vector<double> relative_slope(std::span<const double> replicate_slopes,
                                   double baseline);

}  // namespace skillscore

#endif  // SKILLSCORE_BOOTSTRAP_HPP
