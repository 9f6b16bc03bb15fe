#ifndef SKILLSCORE_SCORING_HPP
#define SKILLSCORE_SCORING_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "skillscore/errors.hpp"

namespace skillscore {

// Cutoffs of the piecewise-linear t-statistic transform: the transform hits
// 1/2 at a and saturates at 1 beyond b. Requires 0 < a < b.
struct TransformSpec {
    double a = 2.0;
    double b = 5.0;
};

enum class TransformShape { convex, concave, linear };

// Shape of the transform on [0, b]: segment slopes are 1/(2a) then 1/(2(b-a)),
// so it is convex exactly when b < 2a and concave when b > 2a.
TransformShape transform_shape(const TransformSpec& spec);

// Map a t-statistic into [0,1]:
//   0            for t < 0
//   t/(2a)       for 0 <= t <= a
//   (t+b-2a) / (2(b-a))  for a < t <= b
//   1            for t > b
double transform_t(double t, const TransformSpec& spec);

// Weights on (x1, x2, x3) = (past performance, first-half experience,
// second-half experience). Stored normalized to sum 1.
struct WeightSpec {
    double past_performance = 2.0 / 7.0;
    double prior_experience = 4.0 / 7.0;
    double current_experience = 1.0 / 7.0;
};

// Normalize raw weights to sum 1. Throws std::domain_error on a negative
// weight or a non-positive sum. `renormalized`, when given, reports whether
// the input needed adjustment (callers may want to warn).
WeightSpec make_weight_spec(double w1, double w2, double w3,
                            bool* renormalized = nullptr);

// s = w1*x1 + w2*x2 + w3*x3. Throws std::domain_error when any x is
// outside [0,1].
double skill_score(double x1, double x2, double x3, const WeightSpec& w);

// (t1, t2, t3) from one bootstrap replicate: t-statistics of the probit(w1),
// e1 and e2 coefficients. The intercept is never scored.
using TStatTriple = std::array<double, 3>;

struct ScoreDistribution {
    std::string game;
    TransformSpec transform;
    WeightSpec weights;
    std::vector<double> scores;  // one per replicate, all in [0,1]
};

// Elementwise transform + weighting per replicate. Throws data_error on
// empty input.
ScoreDistribution score_distribution(std::span<const TStatTriple> t_replicates,
                                     const TransformSpec& spec, const WeightSpec& w,
                                     const std::string& game = {});

struct QuantileSummary {
    double q10 = 0.0;
    double q50 = 0.0;
    double q90 = 0.0;
};

// Empirical (q10, q50, q90), type-7 interpolation. Throws data_error on an
// empty distribution.
QuantileSummary quantile_summary(const ScoreDistribution& dist);

// Interval partial order on (q10, q90): A dominates B iff q10(A) > q90(B);
// overlapping intervals are incomparable.
enum class Verdict { dominates, dominated, incomparable };

struct LabeledSummary {
    std::string game;
    QuantileSummary summary;
};

struct ComparisonResult {
    std::vector<std::string> games;
    std::vector<Verdict> matrix;  // row-major, games.size()^2, diagonal incomparable
    // games grouped into skill levels, least skilled first; a topological
    // layering of the dominance relation (groups are mutually unordered).
    std::vector<std::vector<std::string>> levels;
    bool total_order = false;  // every distinct pair comparable

    Verdict at(std::size_t i, std::size_t j) const { return matrix[i * games.size() + j]; }
};

// Pairwise verdicts for >= 2 games. Throws data_error otherwise.
ComparisonResult compare_games(std::span<const LabeledSummary> summaries);

struct GridCell {
    TransformSpec transform;
    WeightSpec weights;
    QuantileSummary summary;
};

// Every (weights, cutoffs) combination evaluated independently.
// Throws data_error when either grid is empty.
std::vector<GridCell> grid_scores(std::span<const TStatTriple> t_replicates,
                                  std::span<const TransformSpec> transforms,
                                  std::span<const WeightSpec> weights);

// The cutoff pairs and weightages evaluated by default: 5 cutoffs x 4
// weightages = 20 cells.
std::vector<TransformSpec> default_transform_grid();
std::vector<WeightSpec> default_weight_grid();

struct GameGrid {
    std::string game;
    std::vector<GridCell> cells;
};

struct CellComparison {
    TransformSpec transform;
    WeightSpec weights;
    ComparisonResult result;
};

// Multi-game comparison across a shared configuration grid: one verdict
// matrix per cell plus a consensus relation (A dominates B only when it does
// in every cell).
struct GridComparison {
    std::vector<std::string> games;
    std::vector<CellComparison> cells;
    ComparisonResult consensus;
};

// Throws usage_error when the games' grids disagree (lists the differing
// cells) and data_error with fewer than 2 games.
GridComparison compare_grids(std::span<const GameGrid> grids);

}  // namespace skillscore

#endif  // SKILLSCORE_SCORING_HPP
