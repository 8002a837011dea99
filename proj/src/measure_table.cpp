#include "gitrank/measure_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gitrank {

namespace {

constexpr std::array<std::string_view, kMeasureCount> kNames = {
    "cc", "sty", "sl", "sm", "sh", "mi", "c2y", "c1y", "c6m", "c1m", "cm", "ss", "str", "fr",
};

std::string location(std::size_t line, std::size_t column)
{
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string quote_if_needed(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Splits one CSV record starting at `pos`; advances `pos` past its line break.
std::vector<std::string> read_record(std::string_view text, std::size_t& pos, std::size_t line)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    bool field_start = true;
    while (pos < text.size()) {
        const char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    fields.back() += '"';
                    pos += 2;
                    continue;
                }
                quoted = false;
                ++pos;
                continue;
            }
            fields.back() += c;
            ++pos;
            continue;
        }
        if (c == '\n') {
            ++pos;
            break;
        }
        if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
            pos += 2;
            break;
        }
        if (c == ',') {
            fields.emplace_back();
            field_start = true;
            ++pos;
            continue;
        }
        if (c == '"' && field_start) {
            quoted = true;
            field_start = false;
            ++pos;
            continue;
        }
        field_start = false;
        fields.back() += c;
        ++pos;
    }
    if (quoted) throw TableError(location(line, fields.size()) + ": unterminated quoted field");
    return fields;
}

std::optional<double> parse_cell(const std::string& cell, std::size_t line, std::size_t column)
{
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    const auto [end, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || end != last || !std::isfinite(v)) {
        throw TableError(location(line, column) + ": '" + cell + "' is not a finite number");
    }
    return v;
}

}  // namespace

std::string_view to_string(Measure m) noexcept { return kNames[static_cast<std::size_t>(m)]; }

std::optional<Measure> parse_measure(std::string_view name) noexcept
{
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return static_cast<Measure>(i);
    }
    return std::nullopt;
}

std::string_view to_string(Source s) noexcept
{
    switch (s) {
    case Source::analysis: return "analysis";
    case Source::fixture: return "fixture";
    case Source::live: return "live";
    }
    return "unknown";
}

void validate(const RepoMeasures& row)
{
    if (row.repo_id.empty()) throw TableError("repo id must not be empty");
    for (Measure m : kAllMeasures) {
        const auto& v = row[m];
        if (!v) continue;
        if (!std::isfinite(*v)) {
            throw TableError(row.repo_id + ": " + std::string(to_string(m)) + " is not finite");
        }
        if (*v < 0.0) {
            throw TableError(row.repo_id + ": " + std::string(to_string(m)) + " must be >= 0");
        }
    }
    if (row[Measure::cc] && *row[Measure::cc] < 1.0) {
        throw TableError(row.repo_id + ": cc must be >= 1");
    }
}

void MeasureTable::add(RepoMeasures row)
{
    validate(row);
    const auto pos = std::lower_bound(
        rows_.begin(), rows_.end(), row.repo_id,
        [](const RepoMeasures& r, const std::string& id) { return r.repo_id < id; });
    if (pos != rows_.end() && pos->repo_id == row.repo_id) {
        throw TableError("duplicate repository '" + row.repo_id + "'");
    }
    rows_.insert(pos, std::move(row));
}

std::vector<std::optional<double>> MeasureTable::column(Measure m) const
{
    std::vector<std::optional<double>> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r[m]);
    return out;
}

RepoMeasures build_row(std::string repo_id, const RepoCodeSummary* code, const RateMeasures* rates)
{
    if (code && !code->repo_id.empty() && code->repo_id != repo_id) {
        throw TableError("code summary is for '" + code->repo_id + "', expected '" + repo_id + "'");
    }
    if (rates && rates->repo_id != repo_id) {
        throw TableError("forge measures are for '" + rates->repo_id + "', expected '" + repo_id +
                         "'");
    }
    RepoMeasures row;
    row.repo_id = std::move(repo_id);
    if (code) {
        row[Measure::cc] = code->cc;
        row[Measure::sty] = code->sty;
        row[Measure::sl] = code->sl;
        row[Measure::sm] = code->sm;
        row[Measure::sh] = code->sh;
        row[Measure::mi] = code->mi;
    }
    if (rates) {
        row[Measure::c2y] = rates->c2y;
        row[Measure::c1y] = rates->c1y;
        row[Measure::c6m] = rates->c6m;
        row[Measure::c1m] = rates->c1m;
        row[Measure::cm] = rates->cm;
        row[Measure::ss] = rates->ss;
        row[Measure::str] = rates->str;
        row[Measure::fr] = rates->fr;
    }
    validate(row);
    return row;
}

std::string format_round_trip(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const MeasureTable& table)
{
    std::string out = "repo";
    for (auto name : kNames) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (const auto& row : table.rows()) {
        out += quote_if_needed(row.repo_id);
        for (const auto& v : row.values) {
            out += ',';
            if (v) out += format_round_trip(*v);
        }
        out += '\n';
    }
    return out;
}

MeasureTable parse_csv(std::string_view text)
{
    std::size_t pos = 0;
    std::size_t line = 1;
    if (text.empty()) throw TableError(location(1, 1) + ": missing header");
    const auto header = read_record(text, pos, line);
    if (header.empty() || header[0] != "repo") {
        throw TableError(location(1, 1) + ": first column must be 'repo'");
    }
    for (std::size_t c = 1; c < header.size(); ++c) {
        if (!parse_measure(header[c])) {
            throw TableError(location(1, c + 1) + ": unknown column '" + header[c] + "'");
        }
        if (c > kMeasureCount || header[c] != kNames[c - 1]) {
            throw TableError(location(1, c + 1) + ": expected column '" +
                             std::string(c <= kMeasureCount ? kNames[c - 1] : "<end>") +
                             "', found '" + header[c] + "'");
        }
    }
    if (header.size() != kMeasureCount + 1) {
        throw TableError(location(1, header.size() + 1) + ": expected " +
                         std::to_string(kMeasureCount + 1) + " columns, found " +
                         std::to_string(header.size()));
    }

    MeasureTable table;
    while (pos < text.size()) {
        ++line;
        const auto fields = read_record(text, pos, line);
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != kMeasureCount + 1) {
            throw TableError(location(line, std::min(fields.size(), kMeasureCount + 1) + 1) +
                             ": expected " + std::to_string(kMeasureCount + 1) +
                             " columns, found " + std::to_string(fields.size()));
        }
        RepoMeasures row;
        row.repo_id = fields[0];
        for (std::size_t c = 0; c < kMeasureCount; ++c) {
            row.values[c] = parse_cell(fields[c + 1], line, c + 2);
        }
        try {
            table.add(std::move(row));
        } catch (const TableError& e) {
            throw TableError("line " + std::to_string(line) + ": " + e.what());
        }
    }
    return table;
}

void save_table(const MeasureTable& table, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TableError("cannot write " + path.string());
    out << to_csv(table);
}

MeasureTable load_table(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TableError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_csv(buf.str());
    } catch (const TableError& e) {
        throw TableError(path.string() + ": " + e.what());
    }
}

nlohmann::ordered_json to_json(const MeasureTable& table)
{
    nlohmann::ordered_json columns = nlohmann::ordered_json::array();
    for (auto name : kNames) columns.push_back(name);
    nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
    for (const auto& [m, s] : table.provenance()) provenance[std::string(to_string(m))] = to_string(s);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows()) {
        nlohmann::ordered_json r;
        r["repo"] = row.repo_id;
        for (Measure m : kAllMeasures) {
            const auto& v = row[m];
            r[std::string(to_string(m))] = v ? nlohmann::ordered_json(*v) : nullptr;
        }
        rows.push_back(std::move(r));
    }
    return {{"columns", std::move(columns)}, {"provenance", std::move(provenance)},
            {"rows", std::move(rows)}};
}

MeasureTable table_from_json(const nlohmann::json& doc)
{
    MeasureTable table;
    try {
        for (const auto& r : doc.at("rows")) {
            RepoMeasures row;
            row.repo_id = r.at("repo").get<std::string>();
            for (Measure m : kAllMeasures) {
                const std::string key(to_string(m));
                if (r.contains(key) && !r.at(key).is_null()) row[m] = r.at(key).get<double>();
            }
            table.add(std::move(row));
        }
        if (doc.contains("provenance")) {
            for (const auto& [k, v] : doc.at("provenance").items()) {
                const auto m = parse_measure(k);
                if (!m) throw TableError("provenance: unknown measure '" + k + "'");
                const auto s = v.get<std::string>();
                if (s == "analysis") table.set_provenance(*m, Source::analysis);
                else if (s == "fixture") table.set_provenance(*m, Source::fixture);
                else if (s == "live") table.set_provenance(*m, Source::live);
                else throw TableError("provenance: unknown source '" + s + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw TableError(std::string("measure table JSON: ") + e.what());
    }
    return table;
}

}  // namespace gitrank
