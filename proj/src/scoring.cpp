#include "gitrank/scoring.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace gitrank {

namespace {

constexpr double kNeutral = 50.0;

double rescale(double v, double lo, double hi) noexcept
{
    if (hi == lo) return kNeutral;
    return (v - lo) / (hi - lo) * 100.0;
}

}  // namespace

std::vector<std::optional<double>> normalize_column(std::span<const std::optional<double>> values)
{
    std::optional<double> lo, hi;
    for (const auto& v : values) {
        if (!v) continue;
        lo = lo ? std::min(*lo, *v) : *v;
        hi = hi ? std::max(*hi, *v) : *v;
    }
    std::vector<std::optional<double>> out;
    out.reserve(values.size());
    for (const auto& v : values) {
        out.push_back(v ? std::optional(rescale(*v, *lo, *hi)) : std::nullopt);
    }
    return out;
}

std::vector<double> normalize_column(std::span<const double> values)
{
    if (values.empty()) return {};
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(rescale(v, *lo, *hi));
    return out;
}

double quality_score(double n_cc, double n_sty, double n_sl, double n_sm, double n_sh) noexcept
{
    return 100.0 - (n_cc + n_sty + n_sl + n_sm + n_sh) / 5.0;
}

double maintainability_score(double n_mi, double n_c2y, double n_c1y, double n_c6m, double n_c1m,
                             double n_cm) noexcept
{
    return (51.0 * n_mi + 9.0 * n_c2y + 9.0 * n_c1y + 9.0 * n_c6m + 12.0 * n_c1m + 12.0 * n_cm) /
           100.0;
}

double popularity_score(double n_ss, double n_str, double n_fr) noexcept
{
    return (n_ss + n_str + n_fr) / 3.0;
}

double overall_score(double q, double x, double p) noexcept { return (q + x + p) / 3.0; }

std::vector<NormalizedRow> normalize(const MeasureTable& table)
{
    std::vector<NormalizedRow> rows(table.size());
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r].repo_id = table.rows()[r].repo_id;
    for (Measure m : kAllMeasures) {
        const auto column = normalize_column(std::span<const std::optional<double>>(table.column(m)));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            rows[r].values[static_cast<std::size_t>(m)] = column[r];
        }
    }
    return rows;
}

std::vector<ScoreCard> rank(const MeasureTable& table)
{
    if (table.empty()) throw std::invalid_argument("cannot rank an empty measure table");

    const auto rows = normalize(table);
    std::vector<ScoreCard> cards(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto& card = cards[r];
        card.repo_id = rows[r].repo_id;
        std::array<double, kMeasureCount> n{};
        for (Measure m : kAllMeasures) {
            const auto i = static_cast<std::size_t>(m);
            if (rows[r].values[i]) {
                n[i] = *rows[r].values[i];
            } else {
                n[i] = kNeutral;
                card.imputed.push_back(m);
            }
        }
        const auto at = [&n](Measure m) { return n[static_cast<std::size_t>(m)]; };
        card.q = quality_score(at(Measure::cc), at(Measure::sty), at(Measure::sl), at(Measure::sm),
                               at(Measure::sh));
        card.x = maintainability_score(at(Measure::mi), at(Measure::c2y), at(Measure::c1y),
                                       at(Measure::c6m), at(Measure::c1m), at(Measure::cm));
        card.p = popularity_score(at(Measure::ss), at(Measure::str), at(Measure::fr));
        card.s = overall_score(card.q, card.x, card.p);
    }

    const auto renormalize = [&cards](double ScoreCard::*raw, double ScoreCard::*norm) {
        std::vector<double> values;
        values.reserve(cards.size());
        for (const auto& c : cards) values.push_back(c.*raw);
        const auto scaled = normalize_column(std::span<const double>(values));
        for (std::size_t i = 0; i < cards.size(); ++i) cards[i].*norm = scaled[i];
    };
    renormalize(&ScoreCard::q, &ScoreCard::q_norm);
    renormalize(&ScoreCard::x, &ScoreCard::x_norm);
    renormalize(&ScoreCard::p, &ScoreCard::p_norm);
    renormalize(&ScoreCard::s, &ScoreCard::s_norm);

    std::sort(cards.begin(), cards.end(), [](const ScoreCard& a, const ScoreCard& b) {
        if (a.s_norm != b.s_norm) return a.s_norm > b.s_norm;
        return a.repo_id < b.repo_id;
    });
    for (std::size_t i = 0; i < cards.size(); ++i) cards[i].rank = static_cast<int>(i + 1);
    return cards;
}

std::string format_fixed4(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    if (s == "-0.0000") s = "0.0000";
    return s;
}

std::string ranking_csv(const std::vector<ScoreCard>& cards)
{
    std::string out = "rank,repo,s_norm,q_norm,x_norm,p_norm,q,x,p,s\n";
    for (const auto& c : cards) {
        out += std::to_string(c.rank);
        out += ',';
        out += c.repo_id;
        for (double v : {c.s_norm, c.q_norm, c.x_norm, c.p_norm, c.q, c.x, c.p, c.s}) {
            out += ',';
            out += format_fixed4(v);
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json ranking_json(const std::vector<ScoreCard>& cards)
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& c : cards) {
        nlohmann::ordered_json imputed = nlohmann::ordered_json::array();
        for (Measure m : c.imputed) imputed.push_back(to_string(m));
        rows.push_back({
            {"rank", c.rank},     {"repo", c.repo_id}, {"s_norm", c.s_norm},
            {"q_norm", c.q_norm}, {"x_norm", c.x_norm}, {"p_norm", c.p_norm},
            {"q", c.q},           {"x", c.x},           {"p", c.p},
            {"s", c.s},           {"imputed", std::move(imputed)},
        });
    }
    return {
        {"metadata",
         {{"x_weight_sum", kMaintainabilityWeightSum},
          {"normalization", "min-max to [0,100], degenerate column -> 50"},
          {"imputation", "missing normalized value -> 50"},
          {"tie_break", "repo ascending"}}},
        {"ranking", std::move(rows)},
    };
}

Halves split_halves(const std::vector<ScoreCard>& cards)
{
    Halves h;
    const std::size_t top = (cards.size() + 1) / 2;
    for (std::size_t i = 0; i < cards.size(); ++i) {
        (i < top ? h.top : h.bottom).push_back(cards[i].repo_id);
    }
    return h;
}

}  // namespace gitrank
