#include "skillscore/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace skillscore {

std::vector<std::size_t> resample_rows(std::size_t n, RngStream& rng) {
    if (n == 0) throw data_error("resample_rows: n must be positive");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        idx[i] = static_cast<std::size_t>(rng.uniform_below(n));
    }
    return idx;
}

Design make_design(const Dataset& dataset) {
    const std::size_t n = dataset.players.size();
    Design d;
    d.X = Matrix(n, 4);
    d.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PlayerHalves& p = dataset.players[i];
        d.X(i, 0) = 1.0;
        d.X(i, 1) = probit(p.w1);
        d.X(i, 2) = p.e1;
        d.X(i, 3) = p.e2;
        d.y[i] = probit(p.w2);
    }
    return d;
}

Interval normal_ci(double estimate, double variance, double alpha) {
    if (variance < 0.0) throw std::domain_error("normal_ci: negative variance");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("normal_ci: alpha outside (0,1)");
    const double half = probit(1.0 - alpha / 2.0) * std::sqrt(variance);
    return {estimate - half, estimate + half};
}

Interval percentile_ci(std::span<const double> replicates, double alpha) {
    if (replicates.size() < 2) throw data_error("percentile_ci: need at least 2 replicates");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("percentile_ci: alpha outside (0,1)");
    std::vector<double> sorted(replicates.begin(), replicates.end());
    std::sort(sorted.begin(), sorted.end());
    return {quantile_type7(sorted, alpha / 2.0), quantile_type7(sorted, 1.0 - alpha / 2.0)};
}

std::vector<double> relative_slope(std::span<const double> replicate_slopes, double baseline) {
    if (!(baseline > 0.0)) throw std::domain_error("relative_slope: baseline must be positive");
    std::vector<double> out(replicate_slopes.begin(), replicate_slopes.end());
    for (double& v : out) v /= baseline;
    return out;
}

namespace {

struct ReplicateSlot {
    std::vector<double> coef;
    std::vector<double> t;
    bool failed = false;
};

// One replicate, all randomness from its own substream.
void run_replicate(const Design& design, const InferenceOptions& opts,
                   std::uint64_t master_seed, std::int64_t ell, ReplicateSlot& slot) {
    const std::size_t n = design.X.rows;
    const std::size_t k = design.X.cols;
    RngStream rng(substream_seed(master_seed, static_cast<std::uint64_t>(ell)));
    const auto idx = resample_rows(n, rng);
    Matrix xb(n, k);
    std::vector<double> yb(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) xb(i, j) = design.X(idx[i], j);
        yb[i] = design.y[idx[i]];
    }
    try {
        RegressionFit fit = fit_ols(xb, yb, opts);
        slot.coef = std::move(fit.coef);
        slot.t = std::move(fit.t);
    } catch (const singular_design_error&) {
        slot.failed = true;
    }
}

}  // namespace

BootstrapResult bootstrap_regression(const Dataset& dataset, const BootstrapPlan& plan,
                                     const InferenceOptions& opts, unsigned threads) {
    if (plan.replicates < 1) throw data_error("bootstrap: replicate count must be >= 1");
    if (!(plan.alpha > 0.0 && plan.alpha < 1.0)) {
        throw data_error("bootstrap: alpha outside (0,1)");
    }
    const Design design = make_design(dataset);
    const std::size_t k = design.X.cols;
    if (design.X.rows < k + 1) {
        throw insufficient_data_error("bootstrap: need at least " + std::to_string(k + 1) +
                                      " players, got " + std::to_string(design.X.rows));
    }

    BootstrapResult result;
    result.full_fit = fit_ols(design.X, design.y, opts);

    const auto B = static_cast<std::size_t>(plan.replicates);
    std::vector<ReplicateSlot> slots(B);
    if (threads <= 1 || B < 2) {
        for (std::size_t ell = 0; ell < B; ++ell) {
            run_replicate(design, opts, plan.master_seed, static_cast<std::int64_t>(ell),
                          slots[ell]);
        }
    } else {
        // Static partition into contiguous ranges; slots are disjoint, and every
        // replicate's randomness comes from its own substream, so the result is
        // identical to the serial loop.
        const unsigned nt = std::min<unsigned>(threads, static_cast<unsigned>(B));
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (unsigned w = 0; w < nt; ++w) {
            const std::size_t lo = B * w / nt;
            const std::size_t hi = B * (w + 1) / nt;
            pool.emplace_back([&, lo, hi]() {
                for (std::size_t ell = lo; ell < hi; ++ell) {
                    run_replicate(design, opts, plan.master_seed,
                                  static_cast<std::int64_t>(ell), slots[ell]);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    result.coef_replicates.assign(k, {});
    result.t_replicates.assign(k, {});
    for (auto& v : result.coef_replicates) v.reserve(B);
    for (auto& v : result.t_replicates) v.reserve(B);
    for (const auto& slot : slots) {
        if (slot.failed) {
            ++result.failures;
            continue;
        }
        for (std::size_t j = 0; j < k; ++j) {
            result.coef_replicates[j].push_back(slot.coef[j]);
            result.t_replicates[j].push_back(slot.t[j]);
        }
    }
    if (result.failures * 10 > plan.replicates) {
        throw data_error("bootstrap: " + std::to_string(result.failures) + " of " +
                         std::to_string(plan.replicates) +
                         " resamples were rank deficient; data too degenerate");
    }
    const auto kept = static_cast<double>(B - static_cast<std::size_t>(result.failures));

    result.boot_mean.assign(k, 0.0);
    result.boot_var.assign(k, 0.0);
    result.normal_cis.resize(k);
    result.percentile_cis.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto& reps = result.coef_replicates[j];
        double mean = 0.0;
        for (double v : reps) mean += v;
        mean /= kept;
        double var = 0.0;
        for (double v : reps) var += (v - mean) * (v - mean);
        var /= kept;  // the 1/B estimator
        result.boot_mean[j] = mean;
        result.boot_var[j] = var;
        result.normal_cis[j] = normal_ci(result.full_fit.coef[j], var, plan.alpha);
        result.percentile_cis[j] =
            reps.size() >= 2 ? percentile_ci(reps, plan.alpha) : Interval{reps[0], reps[0]};
    }
    return result;
}

}  // namespace skillscore
