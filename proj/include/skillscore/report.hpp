#ifndef SKILLSCORE_REPORT_HPP
#define SKILLSCORE_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "skillscore/bootstrap.hpp"
#include "skillscore/ingest.hpp"
#include "skillscore/scoring.hpp"
#include "skillscore/statmath.hpp"

namespace skillscore {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// Descriptive statistic: players grouped into experience quartiles by total
// games, with mean win rates per group.
struct ExperienceQuartile {
    std::int64_t max_total_games = 0;  // inclusive upper bound of the bucket
    std::size_t players = 0;
    double mean_w1 = 0.0;
    double mean_w2 = 0.0;
};
std::vector<ExperienceQuartile> experience_quartiles(const Dataset& dataset);

// Bootstrap block of a report: aggregates only, replicates live in CSV files.
struct BootstrapSummary {
    std::int64_t replicates = 0;  // requested B
    std::int64_t failures = 0;
    double alpha = 0.0;
    std::vector<double> estimate;  // full-sample coefficients
    std::vector<double> boot_mean;
    std::vector<double> boot_var;
    std::vector<Interval> normal_cis;
    std::vector<Interval> percentile_cis;
    // median of replicate coefficient / baseline win rate, slope columns only
    std::vector<double> relative_slope_median;
    double baseline_w1 = 0.0;
};
BootstrapSummary summarize_bootstrap(const BootstrapResult& result,
                                     const BootstrapPlan& plan, double baseline_w1);

struct ScoreBlock {
    std::optional<double> point_score;    // from the full-sample t-statistics
    std::optional<double> median_score;   // Final Skill Score (median of replicates)
    std::vector<GridCell> grid;
};

struct GameReport {
    std::string label;
    Provenance provenance;
    std::vector<ExperienceQuartile> quartiles;
    std::optional<RegressionFit> fit;
    std::optional<BootstrapSummary> bootstrap;
    std::optional<ScoreBlock> scores;
};

// Self-contained analysis report: enough metadata (config + seed + version)
// to reproduce every number in it.
struct AnalysisReport {
    int schema_version = kReportSchemaVersion;
    std::string tool_version = kToolVersion;
    std::uint64_t seed = 0;
    std::string config;  // the effective command line, flag by flag
    std::vector<GameReport> games;
    std::optional<GridComparison> comparison;
};

nlohmann::json to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& j);

std::string serialize_report(const AnalysisReport& report);
AnalysisReport parse_report(const std::string& text);

// --- flat-file emission ---------------------------------------------------

// Variable,Estimate,Std. Error,t,p rows plus a trailing R-squared line.
void write_regression_csv(std::ostream& out, const RegressionFit& fit,
                          const std::vector<std::string>& names);

// replicate,coef_0..coef_{k-1},t_0..t_{k-1}
void write_replicates_csv(std::ostream& out, const BootstrapResult& result);

// Reads t_1,t_2,t_3 columns of a replicates CSV back as score inputs.
std::vector<TStatTriple> read_tstat_replicates_csv(std::istream& in);

// replicate,score
void write_score_csv(std::ostream& out, const ScoreDistribution& dist);

// w1,w2,w3,a,b,q10,q50,q90 per grid cell
void write_quantile_grid_csv(std::ostream& out, const std::vector<GridCell>& grid);

// bin_lo,bin_hi,count over equal-width bins spanning [min, max].
void write_histogram_csv(std::ostream& out, std::span<const double> values,
                         std::size_t bins);

nlohmann::json comparison_to_json(const GridComparison& cmp);

}  // namespace skillscore

#endif  // SKILLSCORE_REPORT_HPP
