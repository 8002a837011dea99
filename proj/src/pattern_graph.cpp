#include "gitrank/pattern_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace gitrank {

namespace {

bool valid_id(const std::string& id)
{
    return !id.empty() && std::none_of(id.begin(), id.end(), [](unsigned char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    });
}

std::vector<std::string> split_fields(std::string_view line)
{
    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        const auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        fields.emplace_back(line.substr(start, i - start));
    }
    return fields;
}

std::optional<std::int64_t> parse_integer(const std::string& s)
{
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

PatternGraph PatternGraph::from_edges(std::vector<PatternEdge> edges)
{
    if (edges.empty()) throw GraphError("graph has no edges");
    std::set<std::pair<std::string, std::string>> seen;
    std::set<std::string> repos, patterns;
    for (const auto& e : edges) {
        if (!valid_id(e.repo)) throw GraphError("invalid repository id '" + e.repo + "'");
        if (!valid_id(e.pattern)) throw GraphError("invalid pattern id '" + e.pattern + "'");
        if (e.count <= 0) {
            throw GraphError("edge " + e.repo + " -> " + e.pattern + " has count " +
                             std::to_string(e.count) + ", must be >= 1");
        }
        if (!seen.emplace(e.repo, e.pattern).second) {
            throw GraphError("duplicate edge " + e.repo + " -> " + e.pattern);
        }
        repos.insert(e.repo);
        patterns.insert(e.pattern);
    }

    PatternGraph g;
    g.repos_.assign(repos.begin(), repos.end());
    g.patterns_.assign(patterns.begin(), patterns.end());
    g.incoming_.resize(g.patterns_.size());
    const auto index_of = [](const std::vector<std::string>& ids, const std::string& id) {
        return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const auto& e : edges) {
        g.incoming_[index_of(g.patterns_, e.pattern)].push_back(
            {index_of(g.repos_, e.repo), e.count});
    }
    for (auto& in : g.incoming_) {
        std::sort(in.begin(), in.end(),
                  [](const Contribution& a, const Contribution& b) { return a.repo < b.repo; });
    }
    return g;
}

PatternGraph parse_pattern_graph(std::string_view text)
{
    std::optional<std::pair<std::int64_t, std::int64_t>> header;
    std::size_t header_line = 0;
    std::vector<PatternEdge> edges;
    std::set<std::pair<std::string, std::string>> seen;
    std::map<std::string, std::size_t> first_repo_line, first_pattern_line;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto fields = split_fields(line);
        if (fields.empty()) continue;

        if (!header) {
            if (fields.size() != 2) throw GraphError("header must be 'K J'", line_no);
            const auto k = parse_integer(fields[0]);
            const auto j = parse_integer(fields[1]);
            if (!k || !j) throw GraphError("header must be two integers 'K J'", line_no);
            if (*k < 1 || *j < 1) throw GraphError("K and J must be >= 1", line_no);
            header.emplace(*k, *j);
            header_line = line_no;
            continue;
        }

        if (fields.size() != 3) {
            throw GraphError("expected 'repo pattern n', found " + std::to_string(fields.size()) +
                                 " fields",
                             line_no);
        }
        const auto n = parse_integer(fields[2]);
        if (!n) throw GraphError("count '" + fields[2] + "' is not an integer", line_no);
        if (*n <= 0) throw GraphError("count must be >= 1, found " + fields[2], line_no);
        if (!seen.emplace(fields[0], fields[1]).second) {
            throw GraphError("duplicate edge " + fields[0] + " -> " + fields[1], line_no);
        }
        first_repo_line.try_emplace(fields[0], line_no);
        first_pattern_line.try_emplace(fields[1], line_no);
        edges.push_back({fields[0], fields[1], *n});
    }

    if (!header) throw GraphError("missing 'K J' header", line_no);
    const auto [k, j] = *header;
    if (static_cast<std::int64_t>(first_repo_line.size()) != k) {
        throw GraphError("header declares K=" + std::to_string(k) + " but edges name " +
                             std::to_string(first_repo_line.size()) + " repositories",
                         header_line);
    }
    if (static_cast<std::int64_t>(first_pattern_line.size()) != j) {
        throw GraphError("header declares J=" + std::to_string(j) + " but edges name " +
                             std::to_string(first_pattern_line.size()) + " patterns",
                         header_line);
    }
    return PatternGraph::from_edges(std::move(edges));
}

PatternGraph load_pattern_graph(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GraphError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pattern_graph(buf.str());
}

double degree_confidence(const PatternGraph& g)
{
    const auto k = static_cast<double>(g.repository_count());
    double sum = 0.0;
    for (std::size_t j = 0; j < g.pattern_count(); ++j) {
        sum += static_cast<double>(g.indegree(j)) / k;
    }
    return sum / static_cast<double>(g.pattern_count());
}

double contribution_stdev(const PatternGraph& g, std::size_t j)
{
    const auto k = static_cast<double>(g.repository_count());
    const auto& in = g.contributions(j);
    double total = 0.0;
    for (const auto& c : in) total += static_cast<double>(c.count);
    const double mean = total / k;
    double ss = static_cast<double>(g.repository_count() - in.size()) * mean * mean;
    for (const auto& c : in) {
        const double dev = static_cast<double>(c.count) - mean;
        ss += dev * dev;
    }
    return std::sqrt(ss / k);
}

double stdev_confidence(const PatternGraph& g)
{
    double sum = 0.0;
    for (std::size_t j = 0; j < g.pattern_count(); ++j) sum += contribution_stdev(g, j);
    return sum / static_cast<double>(g.pattern_count());
}

std::vector<PatternTuple> tuple_summary(const PatternGraph& g)
{
    std::vector<PatternTuple> out;
    out.reserve(g.pattern_count());
    for (std::size_t j = 0; j < g.pattern_count(); ++j) {
        PatternTuple t{g.patterns()[j], 0, g.indegree(j)};
        for (const auto& c : g.contributions(j)) t.n += c.count;
        out.push_back(std::move(t));
    }
    return out;
}

ConfidenceReport confidence(const PatternGraph& g)
{
    ConfidenceReport r;
    r.c_degree = degree_confidence(g);
    r.c_stdev = stdev_confidence(g);
    r.c = confidence_from_components(r.c_degree, r.c_stdev);
    const auto tuples = tuple_summary(g);
    for (std::size_t j = 0; j < g.pattern_count(); ++j) {
        r.patterns.push_back({tuples[j].pattern, tuples[j].d, contribution_stdev(g, j), tuples[j].n});
    }
    return r;
}

nlohmann::ordered_json to_json(const ConfidenceReport& report)
{
    nlohmann::ordered_json patterns = nlohmann::ordered_json::array();
    for (const auto& p : report.patterns) {
        patterns.push_back({{"id", p.pattern},
                            {"indegree", p.indegree},
                            {"sigma", p.sigma},
                            {"n", p.n},
                            {"d", p.indegree}});
    }
    return {{"c_degree", report.c_degree},
            {"c_stdev", report.c_stdev},
            {"c", report.c},
            {"patterns", std::move(patterns)}};
}

}  // namespace gitrank
