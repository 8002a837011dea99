#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gitrank/forge.hpp"
#include "gitrank/repo_analyzer.hpp"

namespace gitrank {

/// The fourteen measures, in column order.
enum class Measure : std::size_t {
    cc, sty, sl, sm, sh,          // quality
    mi, c2y, c1y, c6m, c1m, cm,   // maintainability
    ss, str, fr,                  // popularity
};

inline constexpr std::size_t kMeasureCount = 14;

inline constexpr std::array<Measure, kMeasureCount> kAllMeasures = {
    Measure::cc,  Measure::sty, Measure::sl,  Measure::sm,  Measure::sh,
    Measure::mi,  Measure::c2y, Measure::c1y, Measure::c6m, Measure::c1m,
    Measure::cm,  Measure::ss,  Measure::str, Measure::fr,
};

[[nodiscard]] std::string_view to_string(Measure m) noexcept;
[[nodiscard]] std::optional<Measure> parse_measure(std::string_view name) noexcept;

enum class Source { analysis, fixture, live };

[[nodiscard]] std::string_view to_string(Source s) noexcept;

/// One row of the measure table. Empty values are missing, not zero.
struct RepoMeasures {
    std::string repo_id;
    std::array<std::optional<double>, kMeasureCount> values{};

    [[nodiscard]] const std::optional<double>& operator[](Measure m) const noexcept
    {
        return values[static_cast<std::size_t>(m)];
    }
    [[nodiscard]] std::optional<double>& operator[](Measure m) noexcept
    {
        return values[static_cast<std::size_t>(m)];
    }

    bool operator==(const RepoMeasures&) const = default;
};

class TableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws TableError if a present value is negative or non-finite, or cc < 1.
void validate(const RepoMeasures& row);

/// Rows kept sorted by repo_id, which is unique.
class MeasureTable {
public:
    /// Validates and inserts; throws TableError on a duplicate repo_id.
    void add(RepoMeasures row);

    [[nodiscard]] const std::vector<RepoMeasures>& rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }
    [[nodiscard]] bool empty() const noexcept { return rows_.empty(); }

    /// Values of one measure, one per row in row order.
    [[nodiscard]] std::vector<std::optional<double>> column(Measure m) const;

    void set_provenance(Measure m, Source s) { provenance_[m] = s; }
    [[nodiscard]] const std::map<Measure, Source>& provenance() const noexcept
    {
        return provenance_;
    }

    /// Compares rows only; provenance is descriptive metadata that the CSV
    /// form does not carry.
    bool operator==(const MeasureTable& other) const { return rows_ == other.rows_; }

private:
    std::vector<RepoMeasures> rows_;
    std::map<Measure, Source> provenance_;
};

/// Combines the code measures and the forge measures of one repository.
/// Either part may be absent; its measures are then missing. Throws
/// TableError when both are given for different repositories.
[[nodiscard]] RepoMeasures build_row(std::string repo_id, const RepoCodeSummary* code,
                                     const RateMeasures* rates);

/// `repo,cc,sty,...,fr` header, LF line endings, empty cell for missing,
/// 17 significant digits.
[[nodiscard]] std::string to_csv(const MeasureTable& table);
/// Throws TableError with `line L, column C` on malformed input.
[[nodiscard]] MeasureTable parse_csv(std::string_view text);

void save_table(const MeasureTable& table, const std::filesystem::path& path);
[[nodiscard]] MeasureTable load_table(const std::filesystem::path& path);

[[nodiscard]] nlohmann::ordered_json to_json(const MeasureTable& table);
[[nodiscard]] MeasureTable table_from_json(const nlohmann::json& doc);

/// `%.17g`, which round-trips every finite double.
[[nodiscard]] std::string format_round_trip(double v);

}  // namespace gitrank
