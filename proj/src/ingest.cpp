#include "skillscore/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "skillscore/statmath.hpp"

namespace skillscore {

double clamp_proportion(std::int64_t wins, std::int64_t games, ClampPolicy policy) {
    if (games <= 0) throw data_error("clamp_proportion: no games");
    if (wins < 0 || wins > games) throw data_error("clamp_proportion: wins out of range");
    const double w = static_cast<double>(wins) / static_cast<double>(games);
    switch (policy.mode) {
        case ClampMode::half_correction:
            if (wins == 0 || wins == games) {
                return (static_cast<double>(wins) + 0.5) / (static_cast<double>(games) + 1.0);
            }
            return w;
        case ClampMode::epsilon_clamp: {
            const double eps = 1.0 / (2.0 * static_cast<double>(games));
            return std::clamp(w, eps, 1.0 - eps);
        }
    }
    throw std::logic_error("unreachable clamp mode");
}

std::pair<double, double> compute_experience(std::span<const double> milestones,
                                             ExperienceMode mode) {
    for (double m : milestones) {
        if (!std::isfinite(m)) throw data_error("compute_experience: non-finite milestone");
    }
    if (mode == ExperienceMode::count) {
        if (milestones.size() != 3) {
            throw data_error("compute_experience: count mode takes 3 milestones, got " +
                             std::to_string(milestones.size()));
        }
        const double m0 = milestones[0], m1 = milestones[1], m2 = milestones[2];
        if (!(m0 <= m1 && m1 <= m2)) {
            throw data_error("compute_experience: count milestones must be nondecreasing");
        }
        return {(m0 + m1) / 2.0, (m2 - m1) / 2.0};
    }
    if (milestones.size() != 4) {
        throw data_error("compute_experience: rating mode takes 4 milestones, got " +
                         std::to_string(milestones.size()));
    }
    const double m0 = milestones[0], m1 = milestones[1];
    const double m2 = milestones[2], m3 = milestones[3];
    return {(m0 + m1) / 2.0, (m2 + m3) / 2.0 - m1};
}

std::optional<PlayerHalves> split_halves(std::span<const GameLogRow> rows,
                                         std::int64_t min_games, ClampPolicy policy,
                                         ExperienceMode mode,
                                         std::optional<std::int64_t> boundary) {
    if (rows.empty()) throw data_error("split_halves: empty row sequence");
    if (min_games < 1) throw data_error("split_halves: min_games must be >= 1");
    const std::string& id = rows.front().player_id;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const GameLogRow& r = rows[i];
        if (r.player_id != id) throw data_error("split_halves: mixed player ids");
        if (r.outcome != 0 && r.outcome != 1) {
            throw data_error("split_halves: non-binary outcome for player " + id);
        }
        if (i > 0 && r.game_index <= rows[i - 1].game_index) {
            throw data_error("split_halves: game_index not strictly increasing for player " + id);
        }
    }

    const std::size_t total = rows.size();
    std::size_t cut;  // first index of half two
    if (boundary) {
        cut = 0;
        while (cut < total && rows[cut].game_index < *boundary) ++cut;
    } else {
        cut = (total + 1) / 2;  // first half takes the extra game when odd
    }
    const auto n1 = static_cast<std::int64_t>(cut);
    const auto n2 = static_cast<std::int64_t>(total - cut);
    if (n1 < min_games || n2 < min_games) return std::nullopt;

    std::int64_t wins1 = 0, wins2 = 0;
    for (std::size_t i = 0; i < cut; ++i) wins1 += rows[i].outcome;
    for (std::size_t i = cut; i < total; ++i) wins2 += rows[i].outcome;

    PlayerHalves ph;
    ph.player_id = id;
    ph.n1 = n1;
    ph.n2 = n2;
    ph.w1 = clamp_proportion(wins1, n1, policy);
    ph.w2 = clamp_proportion(wins2, n2, policy);

    if (mode == ExperienceMode::count) {
        const double m1 = static_cast<double>(n1);
        const double m2 = static_cast<double>(total);
        const double ms[3] = {0.0, m1, m2};
        std::tie(ph.e1, ph.e2) = compute_experience(ms, mode);
    } else {
        const auto need = [&](const GameLogRow& r) -> double {
            if (!r.rating_after) {
                throw data_error("split_halves: rating mode needs rating_after for player " + id);
            }
            return *r.rating_after;
        };
        const double ms[4] = {need(rows[0]), need(rows[cut - 1]), need(rows[cut]),
                              need(rows[total - 1])};
        std::tie(ph.e1, ph.e2) = compute_experience(ms, mode);
    }
    if (!std::isfinite(ph.e1) || !std::isfinite(ph.e2)) {
        throw data_error("split_halves: non-finite experience for player " + id);
    }
    return ph;
}

std::vector<double> rescale_to_range(std::span<const double> values, double lo, double hi) {
    if (lo >= hi) throw std::invalid_argument("rescale_to_range: need lo < hi");
    if (values.empty()) throw data_error("rescale_to_range: empty input");
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    const double mn = *mn_it, mx = *mx_it;
    if (mn == mx) throw data_error("rescale_to_range: constant input has no affine map");
    const double scale = (hi - lo) / (mx - mn);
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(lo + (v - mn) * scale);
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw data_error(context + ": cannot parse number '" + s + "'");
    }
}

std::int64_t parse_int(const std::string& s, const std::string& context) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw data_error(context + ": cannot parse integer '" + s + "'");
    }
    return v;
}

}  // namespace

std::vector<GameLogRow> read_gamelog_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw data_error(source + ": empty file");
    const auto header = split_csv_line(line);
    const bool has_rating = header.size() == 4 && header[3] == "rating_after";
    if (!(header.size() == 3 || has_rating) || header[0] != "player_id" ||
        header[1] != "game_index" || header[2] != "outcome") {
        throw data_error(source + ": expected header player_id,game_index,outcome[,rating_after]");
    }

    std::vector<GameLogRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string ctx = source + ":" + std::to_string(lineno);
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw data_error(ctx + ": expected " + std::to_string(header.size()) + " fields");
        }
        GameLogRow row;
        row.player_id = fields[0];
        if (row.player_id.empty()) throw data_error(ctx + ": empty player_id");
        row.game_index = parse_int(fields[1], ctx);
        if (row.game_index < 0) throw data_error(ctx + ": negative game_index");
        if (fields[2] == "0") {
            row.outcome = 0;
        } else if (fields[2] == "1") {
            row.outcome = 1;
        } else {
            throw data_error(ctx + ": outcome must be 0 or 1, got '" + fields[2] + "'");
        }
        if (has_rating && !fields[3].empty()) {
            row.rating_after = parse_double(fields[3], ctx);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw data_error(source + ": no data rows");

    // group by player id, each history sorted by game_index
    std::stable_sort(rows.begin(), rows.end(), [](const GameLogRow& a, const GameLogRow& b) {
        if (a.player_id != b.player_id) return a.player_id < b.player_id;
        return a.game_index < b.game_index;
    });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].player_id == rows[i - 1].player_id &&
            rows[i].game_index == rows[i - 1].game_index) {
            throw data_error(source + ": duplicate game_index " +
                             std::to_string(rows[i].game_index) + " for player " +
                             rows[i].player_id);
        }
    }
    return rows;
}

Dataset read_halves_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw data_error(source + ": empty file");
    if (split_csv_line(line) !=
        std::vector<std::string>{"player_id", "w1", "w2", "e1", "e2", "n1", "n2"}) {
        throw data_error(source + ": expected header player_id,w1,w2,e1,e2,n1,n2");
    }
    Dataset ds;
    ds.provenance.source = source;
    ds.provenance.format = "halves";
    std::unordered_set<std::string> seen;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string ctx = source + ":" + std::to_string(lineno);
        const auto fields = split_csv_line(line);
        if (fields.size() != 7) throw data_error(ctx + ": expected 7 fields");
        PlayerHalves ph;
        ph.player_id = fields[0];
        if (!seen.insert(ph.player_id).second) {
            throw data_error(ctx + ": duplicate player_id " + ph.player_id);
        }
        ph.w1 = parse_double(fields[1], ctx);
        ph.w2 = parse_double(fields[2], ctx);
        ph.e1 = parse_double(fields[3], ctx);
        ph.e2 = parse_double(fields[4], ctx);
        ph.n1 = parse_int(fields[5], ctx);
        ph.n2 = parse_int(fields[6], ctx);
        if (!(ph.w1 > 0.0 && ph.w1 < 1.0 && ph.w2 > 0.0 && ph.w2 < 1.0)) {
            throw data_error(ctx + ": w1 and w2 must lie strictly in (0,1)");
        }
        if (ph.n1 < 1 || ph.n2 < 1) throw data_error(ctx + ": game counts must be positive");
        if (!std::isfinite(ph.e1) || !std::isfinite(ph.e2)) {
            throw data_error(ctx + ": non-finite experience");
        }
        ds.players.push_back(std::move(ph));
    }
    if (ds.players.empty()) throw data_error(source + ": no data rows");
    return ds;
}

Dataset build_dataset(std::span<const GameLogRow> rows, const IngestOptions& opts,
                      const std::string& source,
                      const std::vector<std::pair<std::string, std::int64_t>>* boundaries) {
    if (rows.empty()) throw data_error("build_dataset: empty game log");
    std::unordered_map<std::string, std::int64_t> boundary_map;
    if (boundaries) {
        for (const auto& [id, b] : *boundaries) boundary_map[id] = b;
    }

    Dataset ds;
    ds.provenance.source = source;
    ds.provenance.format = "gamelog";
    ds.provenance.min_games = opts.min_games;
    ds.provenance.clamp = opts.clamp.mode;
    ds.provenance.experience = opts.experience;
    ds.provenance.rescale = opts.rescale;

    std::size_t begin = 0;
    for (std::size_t i = 1; i <= rows.size(); ++i) {
        if (i == rows.size() || rows[i].player_id != rows[begin].player_id) {
            std::optional<std::int64_t> boundary;
            if (boundaries) {
                const auto it = boundary_map.find(rows[begin].player_id);
                if (it != boundary_map.end()) boundary = it->second;
            }
            auto ph = split_halves(rows.subspan(begin, i - begin), opts.min_games,
                                   opts.clamp, opts.experience, boundary);
            if (ph) {
                ds.players.push_back(std::move(*ph));
            } else {
                ++ds.provenance.players_rejected;
            }
            begin = i;
        }
    }
    if (ds.players.empty()) {
        throw data_error("build_dataset: every player filtered out (min_games=" +
                         std::to_string(opts.min_games) + ")");
    }

    if (opts.rescale) {
        const auto [lo, hi] = *opts.rescale;
        std::vector<double> e1s, e2s;
        e1s.reserve(ds.players.size());
        e2s.reserve(ds.players.size());
        for (const auto& p : ds.players) {
            e1s.push_back(p.e1);
            e2s.push_back(p.e2);
        }
        const auto r1 = rescale_to_range(e1s, lo, hi);
        const auto r2 = rescale_to_range(e2s, lo, hi);
        for (std::size_t i = 0; i < ds.players.size(); ++i) {
            ds.players[i].e1 = r1[i];
            ds.players[i].e2 = r2[i];
        }
    }
    return ds;
}

double mean_first_half_win_rate(const Dataset& dataset) {
    if (dataset.players.empty()) throw data_error("mean_first_half_win_rate: empty dataset");
    double s = 0.0;
    for (const auto& p : dataset.players) s += p.w1;
    return s / static_cast<double>(dataset.players.size());
}

void write_halves_csv(std::ostream& out, const Dataset& dataset) {
    out << "player_id,w1,w2,e1,e2,n1,n2\n";
    out.precision(17);
    for (const auto& p : dataset.players) {
        out << p.player_id << ',' << p.w1 << ',' << p.w2 << ',' << p.e1 << ',' << p.e2
            << ',' << p.n1 << ',' << p.n2 << '\n';
    }
}

}  // namespace skillscore
