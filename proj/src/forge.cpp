#include "gitrank/forge.hpp"

#include <algorithm>
#include <fstream>

namespace gitrank {

namespace fs = std::filesystem;

namespace {

std::uint64_t count_field(const nlohmann::json& obj, const std::string& key,
                          const std::string& path)
{
    if (!obj.contains(key)) throw FixtureError(path, "required field missing");
    const auto& v = obj.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
        const auto i = v.get<std::int64_t>();
        if (i < 0) throw FixtureError(path, "must be >= 0");
        return static_cast<std::uint64_t>(i);
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d < 0) throw FixtureError(path, "must be >= 0");
        throw FixtureError(path, "must be an integer");
    }
    throw FixtureError(path, "must be a non-negative integer");
}

std::string string_field(const nlohmann::json& obj, const std::string& key)
{
    if (!obj.contains(key)) throw FixtureError(key, "required field missing");
    const auto& v = obj.at(key);
    if (!v.is_string()) throw FixtureError(key, "must be a string");
    return v.get<std::string>();
}

Timestamp time_field(const nlohmann::json& obj, const std::string& key)
{
    const auto text = string_field(obj, key);
    const auto t = parse_rfc3339(text);
    if (!t) throw FixtureError(key, "'" + text + "' is not an RFC 3339 timestamp");
    return *t;
}

bool valid_name_part(const std::string& s)
{
    return !s.empty() && std::none_of(s.begin(), s.end(), [](char c) {
        return c == '/' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
    });
}

}  // namespace

FixtureError::FixtureError(std::string field, const std::string& constraint)
    : std::runtime_error(field + ": " + constraint), field_(std::move(field))
{
}

void validate(const ForgeRecord& r)
{
    if (!valid_name_part(r.identity.owner)) {
        throw FixtureError("owner", "must be non-empty without '/' or whitespace");
    }
    if (!valid_name_part(r.identity.name)) {
        throw FixtureError("name", "must be non-empty without '/' or whitespace");
    }
    if (r.identity.evaluated_at < r.identity.created_at) {
        throw FixtureError("evaluated_at", "must not precede created_at");
    }
    const auto& s = r.snapshot;
    if (s.closed_1m > s.closed_6m) throw FixtureError("closed.m1", "closed_1m > closed_6m");
    if (s.closed_6m > s.closed_1y) throw FixtureError("closed.m6", "closed_6m > closed_1y");
    if (s.closed_1y > s.closed_2y) throw FixtureError("closed.y1", "closed_1y > closed_2y");
}

ForgeRecord parse_fixture(const nlohmann::json& doc)
{
    if (!doc.is_object()) throw FixtureError("<root>", "fixture must be a JSON object");
    ForgeRecord r;
    r.identity.owner = string_field(doc, "owner");
    r.identity.name = string_field(doc, "name");
    r.identity.created_at = time_field(doc, "created_at");
    r.identity.evaluated_at = time_field(doc, "evaluated_at");
    r.snapshot.stargazers = count_field(doc, "stargazers", "stargazers");
    r.snapshot.subscribers = count_field(doc, "subscribers", "subscribers");
    r.snapshot.forks = count_field(doc, "forks", "forks");
    r.snapshot.total_commits = count_field(doc, "total_commits", "total_commits");
    if (!doc.contains("closed")) throw FixtureError("closed", "required field missing");
    const auto& closed = doc.at("closed");
    if (!closed.is_object()) throw FixtureError("closed", "must be an object");
    r.snapshot.closed_2y = count_field(closed, "y2", "closed.y2");
    r.snapshot.closed_1y = count_field(closed, "y1", "closed.y1");
    r.snapshot.closed_6m = count_field(closed, "m6", "closed.m6");
    r.snapshot.closed_1m = count_field(closed, "m1", "closed.m1");
    validate(r);
    return r;
}

ForgeRecord load_fixture(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) throw FixtureError("<file>", "cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw FixtureError("<file>", path.string() + " is not valid JSON: " + e.what());
    }
    return parse_fixture(doc);
}

nlohmann::ordered_json to_json(const ForgeRecord& r)
{
    const auto& s = r.snapshot;
    return {
        {"owner", r.identity.owner},
        {"name", r.identity.name},
        {"created_at", format_rfc3339(r.identity.created_at)},
        {"evaluated_at", format_rfc3339(r.identity.evaluated_at)},
        {"stargazers", s.stargazers},
        {"subscribers", s.subscribers},
        {"forks", s.forks},
        {"total_commits", s.total_commits},
        {"closed", {{"y2", s.closed_2y}, {"y1", s.closed_1y}, {"m6", s.closed_6m},
                    {"m1", s.closed_1m}}},
    };
}

void save_fixture(const ForgeRecord& record, const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << to_json(record).dump(2) << '\n';
}

fs::path fixture_path(const fs::path& dir, const std::string& owner, const std::string& name)
{
    return dir / (owner + "__" + name + ".json");
}

std::int64_t age_in_days(const RepoIdentity& identity) noexcept
{
    const auto elapsed = identity.evaluated_at - identity.created_at;
    const auto whole = std::chrono::floor<std::chrono::days>(elapsed).count();
    return std::max<std::int64_t>(1, whole);
}

RateMeasures derive_rate_measures(const RepoIdentity& identity, const ForgeSnapshot& snapshot)
{
    RateMeasures m;
    m.repo_id = identity.full_name();
    m.age_days = age_in_days(identity);
    const auto age = static_cast<double>(m.age_days);
    m.cm = static_cast<double>(snapshot.total_commits) / age;
    m.ss = static_cast<double>(snapshot.subscribers) / age;
    m.str = static_cast<double>(snapshot.stargazers) / age;
    m.fr = static_cast<double>(snapshot.forks) / age;
    m.c2y = static_cast<double>(snapshot.closed_2y);
    m.c1y = static_cast<double>(snapshot.closed_1y);
    m.c6m = static_cast<double>(snapshot.closed_6m);
    m.c1m = static_cast<double>(snapshot.closed_1m);
    return m;
}

nlohmann::ordered_json to_json(const RateMeasures& m)
{
    return {
        {"repo", m.repo_id}, {"age_days", m.age_days}, {"c2y", m.c2y}, {"c1y", m.c1y},
        {"c6m", m.c6m},      {"c1m", m.c1m},           {"cm", m.cm},   {"ss", m.ss},
        {"str", m.str},      {"fr", m.fr},
    };
}

}  // namespace gitrank
