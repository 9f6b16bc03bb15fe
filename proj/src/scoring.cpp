#include "skillscore/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "skillscore/statmath.hpp"

namespace skillscore {

namespace {

void validate(const TransformSpec& spec) {
    if (!(spec.a > 0.0 && spec.b > spec.a)) {
        throw std::domain_error("TransformSpec requires 0 < a < b");
    }
}

}  // namespace

TransformShape transform_shape(const TransformSpec& spec) {
    validate(spec);
    if (spec.b > 2.0 * spec.a) return TransformShape::concave;
    if (spec.b < 2.0 * spec.a) return TransformShape::convex;
    return TransformShape::linear;
}

double transform_t(double t, const TransformSpec& spec) {
    validate(spec);
    if (t < 0.0) return 0.0;
    if (t <= spec.a) return t / (2.0 * spec.a);
    if (t <= spec.b) return (t + spec.b - 2.0 * spec.a) / (2.0 * (spec.b - spec.a));
    return 1.0;
}

WeightSpec make_weight_spec(double w1, double w2, double w3, bool* renormalized) {
    if (w1 < 0.0 || w2 < 0.0 || w3 < 0.0) {
        throw std::domain_error("weights must be nonnegative");
    }
    const double sum = w1 + w2 + w3;
    if (!(sum > 0.0)) throw std::domain_error("weights must not all be zero");
    if (renormalized) *renormalized = std::abs(sum - 1.0) > 1e-12;
    return {w1 / sum, w2 / sum, w3 / sum};
}

double skill_score(double x1, double x2, double x3, const WeightSpec& w) {
    for (double x : {x1, x2, x3}) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw std::domain_error("skill_score: transformed values must lie in [0,1]");
        }
    }
    return w.past_performance * x1 + w.prior_experience * x2 + w.current_experience * x3;
}

ScoreDistribution score_distribution(std::span<const TStatTriple> t_replicates,
                                     const TransformSpec& spec, const WeightSpec& w,
                                     const std::string& game) {
    validate(spec);
    if (t_replicates.empty()) throw data_error("score_distribution: no replicates");
    ScoreDistribution dist;
    dist.game = game;
    dist.transform = spec;
    dist.weights = w;
    dist.scores.reserve(t_replicates.size());
    for (const TStatTriple& ts : t_replicates) {
        dist.scores.push_back(skill_score(transform_t(ts[0], spec), transform_t(ts[1], spec),
                                          transform_t(ts[2], spec), w));
    }
    return dist;
}

QuantileSummary quantile_summary(const ScoreDistribution& dist) {
    if (dist.scores.empty()) throw data_error("quantile_summary: empty distribution");
    std::vector<double> sorted = dist.scores;
    std::sort(sorted.begin(), sorted.end());
    return {quantile_type7(sorted, 0.10), quantile_type7(sorted, 0.50),
            quantile_type7(sorted, 0.90)};
}

namespace {

// Longest-path layering over the dominance DAG (interval orders are acyclic,
// so this terminates): level = 1 + max level among dominated games. Also
// settles whether the relation is a total order.
void finalize_order(ComparisonResult& cmp) {
    const std::size_t n = cmp.games.size();
    std::vector<int> level(n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (cmp.matrix[i * n + j] == Verdict::dominates && level[i] < level[j] + 1) {
                    level[i] = level[j] + 1;
                    changed = true;
                }
            }
        }
    }
    const int max_level = *std::max_element(level.begin(), level.end());
    cmp.levels.assign(static_cast<std::size_t>(max_level) + 1, {});
    for (std::size_t i = 0; i < n; ++i) {
        cmp.levels[static_cast<std::size_t>(level[i])].push_back(cmp.games[i]);
    }
    cmp.total_order = true;
    for (std::size_t i = 0; i < n && cmp.total_order; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (cmp.matrix[i * n + j] == Verdict::incomparable) {
                cmp.total_order = false;
                break;
            }
        }
    }
}

}  // namespace

ComparisonResult compare_games(std::span<const LabeledSummary> summaries) {
    const std::size_t n = summaries.size();
    if (n < 2) throw data_error("compare_games: need at least 2 games");
    ComparisonResult cmp;
    cmp.games.reserve(n);
    for (const auto& s : summaries) cmp.games.push_back(s.game);
    cmp.matrix.assign(n * n, Verdict::incomparable);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (summaries[i].summary.q10 > summaries[j].summary.q90) {
                cmp.matrix[i * n + j] = Verdict::dominates;
                cmp.matrix[j * n + i] = Verdict::dominated;
            }
        }
    }
    finalize_order(cmp);
    return cmp;
}

std::vector<GridCell> grid_scores(std::span<const TStatTriple> t_replicates,
                                  std::span<const TransformSpec> transforms,
                                  std::span<const WeightSpec> weights) {
    if (transforms.empty() || weights.empty()) {
        throw data_error("grid_scores: empty configuration grid");
    }
    for (std::size_t wi = 0; wi < weights.size(); ++wi) {
        const WeightSpec& w = weights[wi];
        const double sum = w.past_performance + w.prior_experience + w.current_experience;
        if (w.past_performance < 0.0 || w.prior_experience < 0.0 ||
            w.current_experience < 0.0 || std::abs(sum - 1.0) > 1e-12) {
            throw data_error("grid_scores: invalid weights at grid row " + std::to_string(wi));
        }
    }
    for (std::size_t ti = 0; ti < transforms.size(); ++ti) {
        if (!(transforms[ti].a > 0.0 && transforms[ti].b > transforms[ti].a)) {
            throw data_error("grid_scores: invalid cutoffs at grid column " + std::to_string(ti));
        }
    }
    std::vector<GridCell> cells;
    cells.reserve(transforms.size() * weights.size());
    for (const WeightSpec& w : weights) {
        for (const TransformSpec& spec : transforms) {
            GridCell cell;
            cell.transform = spec;
            cell.weights = w;
            cell.summary = quantile_summary(score_distribution(t_replicates, spec, w));
            cells.push_back(cell);
        }
    }
    return cells;
}

std::vector<TransformSpec> default_transform_grid() {
    return {{2.0, 5.0}, {1.5, 4.5}, {1.5, 5.5}, {2.5, 4.5}, {2.5, 5.5}};
}

std::vector<WeightSpec> default_weight_grid() {
    return {make_weight_spec(0.25, 0.50, 0.25), make_weight_spec(0.26, 0.53, 0.21),
            make_weight_spec(0.28, 0.57, 0.15), make_weight_spec(0.30, 0.60, 0.10)};
}

namespace {

std::string cell_key(const TransformSpec& t, const WeightSpec& w) {
    std::ostringstream os;
    os.precision(12);
    os << t.a << ':' << t.b << '@' << w.past_performance << ':' << w.prior_experience << ':'
       << w.current_experience;
    return os.str();
}

}  // namespace

GridComparison compare_grids(std::span<const GameGrid> grids) {
    if (grids.size() < 2) throw data_error("compare_grids: need at least 2 games");
    const GameGrid& ref = grids.front();
    for (const GameGrid& g : grids) {
        if (g.cells.size() != ref.cells.size()) {
            throw usage_error("compare_grids: game '" + g.game + "' has " +
                              std::to_string(g.cells.size()) + " grid cells, expected " +
                              std::to_string(ref.cells.size()));
        }
        std::string mismatched;
        for (std::size_t c = 0; c < ref.cells.size(); ++c) {
            if (cell_key(g.cells[c].transform, g.cells[c].weights) !=
                cell_key(ref.cells[c].transform, ref.cells[c].weights)) {
                mismatched += (mismatched.empty() ? "" : ", ") + std::to_string(c);
            }
        }
        if (!mismatched.empty()) {
            throw usage_error("compare_grids: game '" + g.game +
                              "' disagrees with the reference grid at cells " + mismatched);
        }
    }

    GridComparison out;
    for (const GameGrid& g : grids) out.games.push_back(g.game);
    const std::size_t n = grids.size();

    std::vector<Verdict> consensus(n * n, Verdict::incomparable);
    std::vector<bool> always_dominates(n * n, true);
    for (std::size_t c = 0; c < ref.cells.size(); ++c) {
        std::vector<LabeledSummary> summaries;
        summaries.reserve(n);
        for (const GameGrid& g : grids) summaries.push_back({g.game, g.cells[c].summary});
        CellComparison cell;
        cell.transform = ref.cells[c].transform;
        cell.weights = ref.cells[c].weights;
        cell.result = compare_games(summaries);
        for (std::size_t i = 0; i < n * n; ++i) {
            if (cell.result.matrix[i] != Verdict::dominates) always_dominates[i] = false;
        }
        out.cells.push_back(std::move(cell));
    }

    // A consensus edge survives only when present in every cell.
    out.consensus.games = out.games;
    out.consensus.matrix.assign(n * n, Verdict::incomparable);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && always_dominates[i * n + j]) {
                out.consensus.matrix[i * n + j] = Verdict::dominates;
                out.consensus.matrix[j * n + i] = Verdict::dominated;
            }
        }
    }
    finalize_order(out.consensus);
    return out;
}

}  // namespace skillscore
