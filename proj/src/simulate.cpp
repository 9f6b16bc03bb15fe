#include "skillscore/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "skillscore/statmath.hpp"

namespace skillscore {

double RngStream::gaussian() {
    return probit(uniform01_open());
}

double realized_skill(const SimPlayer& p, const GameModel& model) {
    if (model.learn_amplitude == 0.0) return p.innate_skill;
    double learned;
    if (model.learn_tau == 0.0) {
        learned = (p.games_played > 0) ? model.learn_amplitude : 0.0;
    } else {
        learned = model.learn_amplitude *
                  (1.0 - std::exp(-static_cast<double>(p.games_played) / model.learn_tau));
    }
    return p.innate_skill + learned;
}

bool play_match(SimPlayer& a, SimPlayer& b, const GameModel& model, RngStream& rng) {
    if (&a == &b) throw data_error("play_match: a player cannot play itself");
    const double sa = realized_skill(a, model);
    const double sb = realized_skill(b, model);
    bool a_wins;
    if (model.noise_scale == 0.0) {
        if (sa == sb) {
            a_wins = rng.uniform01() < 0.5;
        } else {
            a_wins = sa > sb;
        }
    } else {
        const double p = normal_cdf(model.skill_weight * (sa - sb) / model.noise_scale);
        a_wins = rng.uniform01() < p;
    }
    ++a.games_played;
    ++b.games_played;
    return a_wins;
}

SeasonLog simulate_season(const SimConfig& config, const GameModel& model) {
    if (config.players < 2) throw data_error("simulate_season: need at least 2 players");
    if (config.games_per_player < 1) throw data_error("simulate_season: need at least 1 game");
    if (config.skill_sd < 0.0) throw data_error("simulate_season: negative skill sd");

    RngStream rng(mix64(config.seed));
    const auto n = static_cast<std::size_t>(config.players);
    std::vector<SimPlayer> players(n);
    for (std::size_t i = 0; i < n; ++i) {
        players[i].id = "p" + std::to_string(i + 1);
        players[i].innate_skill =
            config.skill_mean + (config.skill_sd > 0.0 ? config.skill_sd * rng.gaussian() : 0.0);
    }

    // Matches between uniformly random distinct pairs until the least active
    // player has reached the configured count. Histories are recorded per
    // player with [loser, winner] outcome rows; match order doubles as the
    // clock for the midpoint boundaries below.
    struct MatchRecord {
        std::size_t a, b;
        bool a_won;
    };
    std::vector<MatchRecord> matches;
    std::size_t at_target = 0;  // players who reached games_per_player
    while (at_target < n) {
        const auto i = static_cast<std::size_t>(rng.uniform_below(n));
        auto j = static_cast<std::size_t>(rng.uniform_below(n - 1));
        if (j >= i) ++j;
        const std::int64_t before_i = players[i].games_played;
        const std::int64_t before_j = players[j].games_played;
        const bool a_won = play_match(players[i], players[j], model, rng);
        matches.push_back({i, j, a_won});
        if (before_i + 1 == config.games_per_player) ++at_target;
        if (before_j + 1 == config.games_per_player) ++at_target;
    }

    SeasonLog log;
    log.rows.reserve(2 * matches.size());
    std::vector<std::int64_t> ordinal(n, 0);
    std::vector<std::int64_t> midpoint(n, 0);
    const std::size_t half = matches.size() / 2;
    std::vector<std::vector<GameLogRow>> histories(n);
    for (std::size_t m = 0; m < matches.size(); ++m) {
        const MatchRecord& rec = matches[m];
        histories[rec.a].push_back(
            {players[rec.a].id, ordinal[rec.a]++, rec.a_won ? 1 : 0, {}});
        histories[rec.b].push_back(
            {players[rec.b].id, ordinal[rec.b]++, rec.a_won ? 0 : 1, {}});
        if (m < half) {
            ++midpoint[rec.a];
            ++midpoint[rec.b];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        log.midpoint_boundaries.emplace_back(players[i].id, midpoint[i]);
        for (auto& row : histories[i]) log.rows.push_back(std::move(row));
    }
    return log;
}

}  // namespace skillscore
