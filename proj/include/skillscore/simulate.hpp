#ifndef SKILLSCORE_SIMULATE_HPP
#define SKILLSCORE_SIMULATE_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "skillscore/ingest.hpp"
#include "skillscore/rng.hpp"

namespace skillscore {

struct SimPlayer {
    std::string id;
    double innate_skill = 0.0;        // h, fixed for the player's lifetime
    std::int64_t games_played = 0;    // accumulated experience
};

// Latent outcome model: realized skill is innate skill plus a saturating
// learning term; win probability is a probit link on the scaled skill gap.
struct GameModel {
    double skill_weight = 1.0;      // weight on the realized-skill difference
    double learn_amplitude = 0.0;   // asymptotic learning gain
    double learn_tau = 20.0;        // learning time constant, in games
    double noise_scale = 1.0;       // environmental noise scale
};

// s = h + learn_amplitude * (1 - exp(-games_played / tau)).
// tau == 0 means instant learning: the full amplitude after the first game.
double realized_skill(const SimPlayer& p, const GameModel& model);

// Play one match: P(a wins) = normal_cdf(skill_weight * (s_a - s_b) / noise).
// With zero noise the higher realized skill wins outright (fair coin on an
// exact tie). Both players' experience counters advance. Returns true when
// `a` wins.
bool play_match(SimPlayer& a, SimPlayer& b, const GameModel& model, RngStream& rng);

struct SimConfig {
    std::int64_t players = 100;
    std::int64_t games_per_player = 50;  // season ends when everyone reached this
    double skill_mean = 0.0;             // innate skill ~ Normal(mean, sd)
    double skill_sd = 1.0;
    std::uint64_t seed = 0;
};

struct SeasonLog {
    std::vector<GameLogRow> rows;  // ingest-compatible, grouped by player
    // Games each player had played by the season midpoint (half the matches).
    // Usable as split_halves boundaries for a time-style split, which keeps
    // the two halves' game counts from being tied to each other.
    std::vector<std::pair<std::string, std::int64_t>> midpoint_boundaries;
};

// Uniformly random pairings until every player has reached the configured
// game count; deterministic for a given seed. Innate skills are drawn first,
// then matches. Throws data_error when players < 2 or games < 1.
SeasonLog simulate_season(const SimConfig& config, const GameModel& model);

}  // namespace skillscore

#endif  // SKILLSCORE_SIMULATE_HPP
