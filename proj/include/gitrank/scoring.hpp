#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "gitrank/measure_table.hpp"

namespace gitrank {

/// Sum of the maintainability weights (51 + 9 + 9 + 9 + 12 + 12).
inline constexpr double kMaintainabilityWeightSum = 102.0;

/// Min-max rescale of the present values to [0, 100]. Missing stays missing.
/// A column whose present values are all equal maps to 50.
[[nodiscard]] std::vector<std::optional<double>>
normalize_column(std::span<const std::optional<double>> values);

[[nodiscard]] std::vector<double> normalize_column(std::span<const double> values);

[[nodiscard]] double quality_score(double n_cc, double n_sty, double n_sl, double n_sm,
                                   double n_sh) noexcept;
[[nodiscard]] double maintainability_score(double n_mi, double n_c2y, double n_c1y, double n_c6m,
                                           double n_c1m, double n_cm) noexcept;
[[nodiscard]] double popularity_score(double n_ss, double n_str, double n_fr) noexcept;
[[nodiscard]] double overall_score(double q, double x, double p) noexcept;

struct NormalizedRow {
    std::string repo_id;
    std::array<std::optional<double>, kMeasureCount> values{};
};

/// Every measure column normalized independently; rows in table order.
[[nodiscard]] std::vector<NormalizedRow> normalize(const MeasureTable& table);

struct ScoreCard {
    std::string repo_id;
    double q{0}, x{0}, p{0}, s{0};
    double q_norm{0}, x_norm{0}, p_norm{0}, s_norm{0};
    int rank{0};
    /// Measures whose normalized value was missing and imputed as 50.
    std::vector<Measure> imputed;

    bool operator==(const ScoreCard&) const = default;
};

/// Full scoring pipeline. Cards are returned in rank order: s_norm
/// descending, then repo_id ascending. Throws std::invalid_argument on an
/// empty table.
[[nodiscard]] std::vector<ScoreCard> rank(const MeasureTable& table);

/// `rank,repo,s_norm,q_norm,x_norm,p_norm,q,x,p,s` with four decimals.
[[nodiscard]] std::string ranking_csv(const std::vector<ScoreCard>& cards);
[[nodiscard]] nlohmann::ordered_json ranking_json(const std::vector<ScoreCard>& cards);

/// `%.4f`, printing negative zero as zero.
[[nodiscard]] std::string format_fixed4(double v);

struct Halves {
    std::vector<std::string> top;
    std::vector<std::string> bottom;
};

/// Splits ranked cards at ceil(R/2); with odd R the top half is larger.
[[nodiscard]] Halves split_halves(const std::vector<ScoreCard>& cards);

}  // namespace gitrank
