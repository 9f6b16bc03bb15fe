#include "skillscore/report.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace skillscore {

using nlohmann::json;

std::vector<ExperienceQuartile> experience_quartiles(const Dataset& dataset) {
    if (dataset.players.empty()) return {};
    std::vector<std::size_t> order(dataset.players.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& pa = dataset.players[a];
        const auto& pb = dataset.players[b];
        return pa.n1 + pa.n2 < pb.n1 + pb.n2;
    });
    const std::size_t n = order.size();
    const std::size_t buckets = std::min<std::size_t>(4, n);
    std::vector<ExperienceQuartile> out;
    for (std::size_t q = 0; q < buckets; ++q) {
        const std::size_t lo = n * q / buckets;
        const std::size_t hi = n * (q + 1) / buckets;
        ExperienceQuartile eq;
        eq.players = hi - lo;
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& p = dataset.players[order[i]];
            eq.mean_w1 += p.w1;
            eq.mean_w2 += p.w2;
            eq.max_total_games = std::max(eq.max_total_games, p.n1 + p.n2);
        }
        eq.mean_w1 /= static_cast<double>(eq.players);
        eq.mean_w2 /= static_cast<double>(eq.players);
        out.push_back(eq);
    }
    return out;
}

BootstrapSummary summarize_bootstrap(const BootstrapResult& result,
                                     const BootstrapPlan& plan, double baseline_w1) {
    BootstrapSummary s;
    s.replicates = plan.replicates;
    s.failures = result.failures;
    s.alpha = plan.alpha;
    s.estimate = result.full_fit.coef;
    s.boot_mean = result.boot_mean;
    s.boot_var = result.boot_var;
    s.normal_cis = result.normal_cis;
    s.percentile_cis = result.percentile_cis;
    s.baseline_w1 = baseline_w1;
    s.relative_slope_median.assign(result.coef_replicates.size(), 0.0);
    for (std::size_t j = 1; j < result.coef_replicates.size(); ++j) {
        auto rel = relative_slope(result.coef_replicates[j], baseline_w1);
        std::sort(rel.begin(), rel.end());
        s.relative_slope_median[j] = quantile_type7(rel, 0.5);
    }
    return s;
}

namespace {

const std::vector<std::string> kVariableNames = {
    "Intercept", "Probit(First Half Win %)", "First Half Experience",
    "Second Half Experience"};

json interval_to_json(const Interval& ci) { return json{ci.lo, ci.hi}; }
Interval interval_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json fit_to_json(const RegressionFit& fit) {
    return json{{"coef", fit.coef},       {"se", fit.se}, {"t", fit.t}, {"p", fit.p},
                {"r_squared", fit.r_squared}, {"n", fit.n},   {"k", fit.k}};
}

RegressionFit fit_from_json(const json& j) {
    RegressionFit fit;
    fit.coef = j.at("coef").get<std::vector<double>>();
    fit.se = j.at("se").get<std::vector<double>>();
    fit.t = j.at("t").get<std::vector<double>>();
    fit.p = j.at("p").get<std::vector<double>>();
    fit.r_squared = j.at("r_squared").get<double>();
    fit.n = j.at("n").get<std::size_t>();
    fit.k = j.at("k").get<std::size_t>();
    return fit;
}

json bootstrap_to_json(const BootstrapSummary& s) {
    json cis_normal = json::array();
    json cis_pct = json::array();
    for (const auto& ci : s.normal_cis) cis_normal.push_back(interval_to_json(ci));
    for (const auto& ci : s.percentile_cis) cis_pct.push_back(interval_to_json(ci));
    return json{{"replicates", s.replicates},
                {"failures", s.failures},
                {"alpha", s.alpha},
                {"estimate", s.estimate},
                {"mean", s.boot_mean},
                {"variance", s.boot_var},
                {"normal_ci", cis_normal},
                {"percentile_ci", cis_pct},
                {"relative_slope_median", s.relative_slope_median},
                {"baseline_w1", s.baseline_w1}};
}

BootstrapSummary bootstrap_from_json(const json& j) {
    BootstrapSummary s;
    s.replicates = j.at("replicates").get<std::int64_t>();
    s.failures = j.at("failures").get<std::int64_t>();
    s.alpha = j.at("alpha").get<double>();
    s.estimate = j.at("estimate").get<std::vector<double>>();
    s.boot_mean = j.at("mean").get<std::vector<double>>();
    s.boot_var = j.at("variance").get<std::vector<double>>();
    for (const auto& ci : j.at("normal_ci")) s.normal_cis.push_back(interval_from_json(ci));
    for (const auto& ci : j.at("percentile_ci")) s.percentile_cis.push_back(interval_from_json(ci));
    s.relative_slope_median = j.at("relative_slope_median").get<std::vector<double>>();
    s.baseline_w1 = j.at("baseline_w1").get<double>();
    return s;
}

json cell_to_json(const GridCell& cell) {
    return json{{"a", cell.transform.a},
                {"b", cell.transform.b},
                {"weights",
                 {cell.weights.past_performance, cell.weights.prior_experience,
                  cell.weights.current_experience}},
                {"q10", cell.summary.q10},
                {"q50", cell.summary.q50},
                {"q90", cell.summary.q90}};
}

GridCell cell_from_json(const json& j) {
    GridCell cell;
    cell.transform = {j.at("a").get<double>(), j.at("b").get<double>()};
    cell.weights = {j.at("weights").at(0).get<double>(), j.at("weights").at(1).get<double>(),
                    j.at("weights").at(2).get<double>()};
    cell.summary = {j.at("q10").get<double>(), j.at("q50").get<double>(),
                    j.at("q90").get<double>()};
    return cell;
}

json scores_to_json(const ScoreBlock& s) {
    json grid = json::array();
    for (const auto& cell : s.grid) grid.push_back(cell_to_json(cell));
    json out{{"grid", grid}};
    out["point_score"] = s.point_score ? json(*s.point_score) : json(nullptr);
    out["median_score"] = s.median_score ? json(*s.median_score) : json(nullptr);
    return out;
}

ScoreBlock scores_from_json(const json& j) {
    ScoreBlock s;
    if (!j.at("point_score").is_null()) s.point_score = j.at("point_score").get<double>();
    if (!j.at("median_score").is_null()) s.median_score = j.at("median_score").get<double>();
    for (const auto& cell : j.at("grid")) s.grid.push_back(cell_from_json(cell));
    return s;
}

json provenance_to_json(const Provenance& p) {
    json out{{"source", p.source},
             {"format", p.format},
             {"min_games", p.min_games},
             {"clamp", p.clamp == ClampMode::half_correction ? "half" : "epsilon"},
             {"experience", p.experience == ExperienceMode::count ? "count" : "rating"},
             {"players_rejected", p.players_rejected}};
    out["rescale"] = p.rescale ? json{p.rescale->first, p.rescale->second} : json(nullptr);
    return out;
}

Provenance provenance_from_json(const json& j) {
    Provenance p;
    p.source = j.at("source").get<std::string>();
    p.format = j.at("format").get<std::string>();
    p.min_games = j.at("min_games").get<std::int64_t>();
    p.clamp = j.at("clamp").get<std::string>() == "half" ? ClampMode::half_correction
                                                         : ClampMode::epsilon_clamp;
    p.experience = j.at("experience").get<std::string>() == "count" ? ExperienceMode::count
                                                                    : ExperienceMode::rating;
    p.players_rejected = j.at("players_rejected").get<std::size_t>();
    if (!j.at("rescale").is_null()) {
        p.rescale = {j.at("rescale").at(0).get<double>(), j.at("rescale").at(1).get<double>()};
    }
    return p;
}

const char* verdict_symbol(Verdict v) {
    switch (v) {
        case Verdict::dominates: return ">";
        case Verdict::dominated: return "<";
        case Verdict::incomparable: return "~";
    }
    return "~";
}

Verdict verdict_from_symbol(const std::string& s) {
    if (s == ">") return Verdict::dominates;
    if (s == "<") return Verdict::dominated;
    return Verdict::incomparable;
}

json order_to_json(const ComparisonResult& cmp) {
    const std::size_t n = cmp.games.size();
    json matrix = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(verdict_symbol(cmp.at(i, j)));
        matrix.push_back(row);
    }
    return json{{"games", cmp.games},
                {"matrix", matrix},
                {"levels", cmp.levels},
                {"total_order", cmp.total_order}};
}

ComparisonResult order_from_json(const json& j) {
    ComparisonResult cmp;
    cmp.games = j.at("games").get<std::vector<std::string>>();
    const std::size_t n = cmp.games.size();
    cmp.matrix.assign(n * n, Verdict::incomparable);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < n; ++c) {
            cmp.matrix[i * n + c] =
                verdict_from_symbol(j.at("matrix").at(i).at(c).get<std::string>());
        }
    }
    cmp.levels = j.at("levels").get<std::vector<std::vector<std::string>>>();
    cmp.total_order = j.at("total_order").get<bool>();
    return cmp;
}

json quartiles_to_json(const std::vector<ExperienceQuartile>& qs) {
    json out = json::array();
    for (const auto& q : qs) {
        out.push_back(json{{"max_total_games", q.max_total_games},
                           {"players", q.players},
                           {"mean_w1", q.mean_w1},
                           {"mean_w2", q.mean_w2}});
    }
    return out;
}

std::vector<ExperienceQuartile> quartiles_from_json(const json& j) {
    std::vector<ExperienceQuartile> out;
    for (const auto& q : j) {
        out.push_back({q.at("max_total_games").get<std::int64_t>(),
                       q.at("players").get<std::size_t>(), q.at("mean_w1").get<double>(),
                       q.at("mean_w2").get<double>()});
    }
    return out;
}

}  // namespace

json comparison_to_json(const GridComparison& cmp) {
    json cells = json::array();
    for (const auto& cell : cmp.cells) {
        json c{{"a", cell.transform.a},
               {"b", cell.transform.b},
               {"weights",
                {cell.weights.past_performance, cell.weights.prior_experience,
                 cell.weights.current_experience}}};
        c["verdicts"] = order_to_json(cell.result);
        cells.push_back(c);
    }
    return json{{"games", cmp.games}, {"cells", cells}, {"consensus", order_to_json(cmp.consensus)}};
}

namespace {

GridComparison comparison_from_json(const json& j) {
    GridComparison cmp;
    cmp.games = j.at("games").get<std::vector<std::string>>();
    for (const auto& c : j.at("cells")) {
        CellComparison cell;
        cell.transform = {c.at("a").get<double>(), c.at("b").get<double>()};
        cell.weights = {c.at("weights").at(0).get<double>(), c.at("weights").at(1).get<double>(),
                        c.at("weights").at(2).get<double>()};
        cell.result = order_from_json(c.at("verdicts"));
        cmp.cells.push_back(std::move(cell));
    }
    cmp.consensus = order_from_json(j.at("consensus"));
    return cmp;
}

}  // namespace

json to_json(const AnalysisReport& report) {
    json meta{{"schema_version", report.schema_version},
              {"tool_version", report.tool_version},
              {"seed", report.seed},
              {"config", report.config}};
    json games_meta = json::object();
    json regression = json::object();
    json bootstrap = json::object();
    json scores = json::object();
    for (const auto& g : report.games) {
        games_meta[g.label] = json{{"provenance", provenance_to_json(g.provenance)},
                                   {"experience_quartiles", quartiles_to_json(g.quartiles)}};
        regression[g.label] = g.fit ? fit_to_json(*g.fit) : json(nullptr);
        bootstrap[g.label] = g.bootstrap ? bootstrap_to_json(*g.bootstrap) : json(nullptr);
        scores[g.label] = g.scores ? scores_to_json(*g.scores) : json(nullptr);
    }
    meta["games"] = games_meta;
    json out{{"meta", meta},
             {"regression", regression},
             {"bootstrap", bootstrap},
             {"scores", scores}};
    out["comparison"] = report.comparison ? comparison_to_json(*report.comparison) : json(nullptr);
    return out;
}

AnalysisReport report_from_json(const json& j) {
    AnalysisReport report;
    const json& meta = j.at("meta");
    report.schema_version = meta.at("schema_version").get<int>();
    report.tool_version = meta.at("tool_version").get<std::string>();
    report.seed = meta.at("seed").get<std::uint64_t>();
    report.config = meta.at("config").get<std::string>();
    for (const auto& [label, gm] : meta.at("games").items()) {
        GameReport g;
        g.label = label;
        g.provenance = provenance_from_json(gm.at("provenance"));
        g.quartiles = quartiles_from_json(gm.at("experience_quartiles"));
        if (!j.at("regression").at(label).is_null()) {
            g.fit = fit_from_json(j.at("regression").at(label));
        }
        if (!j.at("bootstrap").at(label).is_null()) {
            g.bootstrap = bootstrap_from_json(j.at("bootstrap").at(label));
        }
        if (!j.at("scores").at(label).is_null()) {
            g.scores = scores_from_json(j.at("scores").at(label));
        }
        report.games.push_back(std::move(g));
    }
    if (!j.at("comparison").is_null()) {
        report.comparison = comparison_from_json(j.at("comparison"));
    }
    return report;
}

std::string serialize_report(const AnalysisReport& report) {
    return to_json(report).dump(2);
}

AnalysisReport parse_report(const std::string& text) {
    return report_from_json(json::parse(text));
}

void write_regression_csv(std::ostream& out, const RegressionFit& fit,
                          const std::vector<std::string>& names) {
    out << "Variable,Estimate,Std. Error,t,p\n";
    out.precision(10);
    for (std::size_t j = 0; j < fit.coef.size(); ++j) {
        const std::string& name =
            j < names.size() ? names[j]
                             : (j < kVariableNames.size() ? kVariableNames[j]
                                                          : "x" + std::to_string(j));
        out << name << ',' << fit.coef[j] << ',' << fit.se[j] << ',' << fit.t[j] << ','
            << fit.p[j] << '\n';
    }
    out << "R-squared," << fit.r_squared << ",,,\n";
}

void write_replicates_csv(std::ostream& out, const BootstrapResult& result) {
    const std::size_t k = result.coef_replicates.size();
    out << "replicate";
    for (std::size_t j = 0; j < k; ++j) out << ",coef_" << j;
    for (std::size_t j = 0; j < k; ++j) out << ",t_" << j;
    out << '\n';
    out.precision(17);
    const std::size_t kept = k ? result.coef_replicates[0].size() : 0;
    for (std::size_t r = 0; r < kept; ++r) {
        out << r;
        for (std::size_t j = 0; j < k; ++j) out << ',' << result.coef_replicates[j][r];
        for (std::size_t j = 0; j < k; ++j) out << ',' << result.t_replicates[j][r];
        out << '\n';
    }
}

std::vector<TStatTriple> read_tstat_replicates_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw data_error("replicates csv: empty file");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) {
            if (!f.empty() && f.back() == '\r') f.pop_back();
            header.push_back(f);
        }
    }
    std::ptrdiff_t c1 = -1, c2 = -1, c3 = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "t_1") c1 = static_cast<std::ptrdiff_t>(i);
        if (header[i] == "t_2") c2 = static_cast<std::ptrdiff_t>(i);
        if (header[i] == "t_3") c3 = static_cast<std::ptrdiff_t>(i);
    }
    if (c1 < 0 || c2 < 0 || c3 < 0) {
        throw data_error("replicates csv: missing t_1/t_2/t_3 columns");
    }
    std::vector<TStatTriple> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string f;
        std::vector<std::string> fields;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != header.size()) {
            throw data_error("replicates csv:" + std::to_string(lineno) + ": field count");
        }
        try {
            out.push_back({std::stod(fields[static_cast<std::size_t>(c1)]),
                           std::stod(fields[static_cast<std::size_t>(c2)]),
                           std::stod(fields[static_cast<std::size_t>(c3)])});
        } catch (const std::exception&) {
            throw data_error("replicates csv:" + std::to_string(lineno) + ": bad number");
        }
    }
    if (out.empty()) throw data_error("replicates csv: no data rows");
    return out;
}

void write_score_csv(std::ostream& out, const ScoreDistribution& dist) {
    out << "replicate,score\n";
    out.precision(17);
    for (std::size_t i = 0; i < dist.scores.size(); ++i) {
        out << i << ',' << dist.scores[i] << '\n';
    }
}

void write_quantile_grid_csv(std::ostream& out, const std::vector<GridCell>& grid) {
    out << "w1,w2,w3,a,b,q10,q50,q90\n";
    out.precision(10);
    for (const auto& cell : grid) {
        out << cell.weights.past_performance << ',' << cell.weights.prior_experience << ','
            << cell.weights.current_experience << ',' << cell.transform.a << ','
            << cell.transform.b << ',' << cell.summary.q10 << ',' << cell.summary.q50 << ','
            << cell.summary.q90 << '\n';
    }
}

void write_histogram_csv(std::ostream& out, std::span<const double> values, std::size_t bins) {
    if (values.empty()) throw data_error("histogram: no values");
    if (bins == 0) throw data_error("histogram: need at least one bin");
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    const double mn = *mn_it, mx = *mx_it;
    out << "bin_lo,bin_hi,count\n";
    out.precision(12);
    if (mn == mx) {
        out << mn << ',' << mx << ',' << values.size() << '\n';
        return;
    }
    std::vector<std::size_t> counts(bins, 0);
    const double width = (mx - mn) / static_cast<double>(bins);
    for (double v : values) {
        auto idx = static_cast<std::size_t>((v - mn) / width);
        if (idx >= bins) idx = bins - 1;  // v == mx
        ++counts[idx];
    }
    for (std::size_t i = 0; i < bins; ++i) {
        out << (mn + width * static_cast<double>(i)) << ','
            << (i + 1 == bins ? mx : mn + width * static_cast<double>(i + 1)) << ','
            << counts[i] << '\n';
    }
}

}  // namespace skillscore
