#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "gitrank/timestamp.hpp"

namespace gitrank {

struct RepoIdentity {
    std::string owner;
    std::string name;
    Timestamp created_at{};
    Timestamp evaluated_at{};

    [[nodiscard]] std::string full_name() const { return owner + "/" + name; }

    bool operator==(const RepoIdentity&) const = default;
};

/// Raw counts reported by the forge. Closed counts cover issues and pull
/// requests together over trailing windows ending at the evaluation time;
/// the windows nest, so the counts never decrease from 1m to 2y.
struct ForgeSnapshot {
    std::uint64_t stargazers{0};
    std::uint64_t subscribers{0};
    std::uint64_t forks{0};
    std::uint64_t total_commits{0};
    std::uint64_t closed_2y{0};
    std::uint64_t closed_1y{0};
    std::uint64_t closed_6m{0};
    std::uint64_t closed_1m{0};

    bool operator==(const ForgeSnapshot&) const = default;
};

struct ForgeRecord {
    RepoIdentity identity;
    ForgeSnapshot snapshot;

    bool operator==(const ForgeRecord&) const = default;
};

/// Trailing window lengths in calendar months.
enum class ClosedWindow { y2 = 24, y1 = 12, m6 = 6, m1 = 1 };

class FixtureError : public std::runtime_error {
public:
    FixtureError(std::string field, const std::string& constraint);

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Throws FixtureError when an invariant is broken: empty owner/name,
/// evaluated_at before created_at, or closed windows that do not nest.
void validate(const ForgeRecord& record);

/// Fixture schema: {owner, name, created_at, evaluated_at, stargazers,
/// subscribers, forks, total_commits, closed: {y2, y1, m6, m1}}. Unknown keys
/// are ignored.
[[nodiscard]] ForgeRecord parse_fixture(const nlohmann::json& doc);
[[nodiscard]] ForgeRecord load_fixture(const std::filesystem::path& path);
[[nodiscard]] nlohmann::ordered_json to_json(const ForgeRecord& record);
void save_fixture(const ForgeRecord& record, const std::filesystem::path& path);

/// `<dir>/<owner>__<name>.json`
[[nodiscard]] std::filesystem::path fixture_path(const std::filesystem::path& dir,
                                                 const std::string& owner,
                                                 const std::string& name);

/// Per-day rates over the repository age plus the closed-window counts.
struct RateMeasures {
    std::string repo_id;
    std::int64_t age_days{1};
    double cm{0.0};   ///< commits per day
    double ss{0.0};   ///< subscribers per day
    double str{0.0};  ///< stargazers per day
    double fr{0.0};   ///< forks per day
    double c2y{0.0};
    double c1y{0.0};
    double c6m{0.0};
    double c1m{0.0};
};

/// Age is whole days from created_at to evaluated_at, at least 1.
[[nodiscard]] std::int64_t age_in_days(const RepoIdentity& identity) noexcept;
[[nodiscard]] RateMeasures derive_rate_measures(const RepoIdentity& identity,
                                                const ForgeSnapshot& snapshot);
[[nodiscard]] nlohmann::ordered_json to_json(const RateMeasures& rates);

}  // namespace gitrank
