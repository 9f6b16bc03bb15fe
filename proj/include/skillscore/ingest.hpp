#ifndef SKILLSCORE_INGEST_HPP
#define SKILLSCORE_INGEST_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skillscore/errors.hpp"

namespace skillscore {

// One game from a player's history. game_index is the per-player ordinal and
// must be strictly increasing within a player.
struct GameLogRow {
    std::string player_id;
    std::int64_t game_index = 0;
    int outcome = 0;  // 1 = win, 0 = loss
    std::optional<double> rating_after;
};

enum class ClampMode {
    // w' = (wins + 0.5) / (n + 1), applied only when wins is 0 or n.
    half_correction,
    // clamp w into [1/(2n), 1 - 1/(2n)].
    epsilon_clamp,
};

struct ClampPolicy {
    ClampMode mode = ClampMode::half_correction;
};

// Win proportion forced into the open interval (0,1) so its probit is finite.
double clamp_proportion(std::int64_t wins, std::int64_t games, ClampPolicy policy);

enum class ExperienceMode {
    count,   // milestones are cumulative game counts (m0, m1, m2)
    rating,  // milestones are ratings (m0, m1, m2, m3), Lichess style
};

// Per-player regression inputs: clamped win proportions and experience
// features for the two halves of the player's history.
struct PlayerHalves {
    std::string player_id;
    double w1 = 0.0, w2 = 0.0;      // clamped win proportions, in (0,1)
    std::int64_t n1 = 0, n2 = 0;    // games per half
    double e1 = 0.0, e2 = 0.0;      // experience features
};

// Experience features from milestone values.
//   count mode:  e1 = (m0+m1)/2, e2 = (m2-m1)/2        (3 milestones)
//   rating mode: e1 = (m0+m1)/2, e2 = (m2+m3)/2 - m1   (4 milestones)
// Throws data_error on wrong milestone count for the mode.
std::pair<double, double> compute_experience(std::span<const double> milestones,
                                             ExperienceMode mode);

// Split one player's history into halves and build regression inputs.
// Rows must be sorted by game_index. The first ceil(n/2) games form half one;
// an explicit `boundary` instead splits before the first game_index >= boundary
// (time-based splitting with a precomputed per-player boundary).
// Returns nullopt when either half has fewer than min_games rows (filtered,
// not an error). Throws data_error on empty input or a non-binary outcome.
// Rating mode derives milestones from rating_after of the first/last game of
// each half and requires rating_after on those games.
std::optional<PlayerHalves> split_halves(std::span<const GameLogRow> rows,
                                         std::int64_t min_games, ClampPolicy policy,
                                         ExperienceMode mode,
                                         std::optional<std::int64_t> boundary = {});

// Affine map of [min(values), max(values)] onto [lo, hi]; preserves order.
// Throws data_error on constant input (no such map) and
// std::invalid_argument when lo >= hi.
std::vector<double> rescale_to_range(std::span<const double> values, double lo,
                                     double hi);

struct Provenance {
    std::string source;
    std::string format;           // "gamelog" or "halves"
    std::int64_t min_games = 1;
    ClampMode clamp = ClampMode::half_correction;
    ExperienceMode experience = ExperienceMode::count;
    std::optional<std::pair<double, double>> rescale;
    std::size_t players_rejected = 0;
};

struct Dataset {
    std::vector<PlayerHalves> players;
    Provenance provenance;
};

struct IngestOptions {
    std::int64_t min_games = 1;
    ClampPolicy clamp;
    ExperienceMode experience = ExperienceMode::count;
    std::optional<std::pair<double, double>> rescale;  // applied to e1 and e2
};

// Game-log CSV: header player_id,game_index,outcome[,rating_after].
// Rows may arrive in any order; they are grouped by player and sorted by
// game_index. Duplicate game_index within a player is a data_error.
std::vector<GameLogRow> read_gamelog_csv(std::istream& in, const std::string& source);

// Pre-aggregated CSV: header player_id,w1,w2,e1,e2,n1,n2 with w already
// in (0,1). Duplicate player_id is a data_error.
Dataset read_halves_csv(std::istream& in, const std::string& source);

// Full ingest: split every player, filter by min_games, rescale experience
// columns if requested. `boundaries` optionally supplies per-player split
// points (parallel to split_halves' boundary argument).
Dataset build_dataset(std::span<const GameLogRow> rows, const IngestOptions& opts,
                      const std::string& source,
                      const std::vector<std::pair<std::string, std::int64_t>>* boundaries = nullptr);

// Mean of raw (clamped) first-half win proportions; the Step-6 baseline.
double mean_first_half_win_rate(const Dataset& dataset);

void write_halves_csv(std::ostream& out, const Dataset& dataset);

}  // namespace skillscore

#endif  // SKILLSCORE_INGEST_HPP
