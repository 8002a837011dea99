#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace gitrank {

struct PatternEdge {
    std::string repo;
    std::string pattern;
    std::int64_t count{0};
};

class GraphError : public std::runtime_error {
public:
    explicit GraphError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line)
    {
    }

    /// 1-based source line, or 0 when not tied to a file position.
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Weighted bipartite graph from repositories to patterns. Only
/// repositories and patterns with at least one edge exist, so every pattern
/// has indegree >= 1.
class PatternGraph {
public:
    struct Contribution {
        std::size_t repo;  ///< index into repositories()
        std::int64_t count;
    };

    /// Throws GraphError on an empty edge list, a non-positive count, an id
    /// containing whitespace, or a repeated (repo, pattern) pair.
    static PatternGraph from_edges(std::vector<PatternEdge> edges);

    [[nodiscard]] const std::vector<std::string>& repositories() const noexcept { return repos_; }
    [[nodiscard]] const std::vector<std::string>& patterns() const noexcept { return patterns_; }
    [[nodiscard]] std::size_t repository_count() const noexcept { return repos_.size(); }
    [[nodiscard]] std::size_t pattern_count() const noexcept { return patterns_.size(); }

    /// Contributions to pattern j, ordered by repository index.
    [[nodiscard]] const std::vector<Contribution>& contributions(std::size_t j) const
    {
        return incoming_.at(j);
    }
    [[nodiscard]] std::size_t indegree(std::size_t j) const { return incoming_.at(j).size(); }

private:
    std::vector<std::string> repos_;
    std::vector<std::string> patterns_;
    std::vector<std::vector<Contribution>> incoming_;
};

/// Edge-list text: a `K J` header, then `repo pattern n` lines. `#` starts a
/// comment. K and J must equal the number of distinct repositories and
/// patterns that appear in edges.
[[nodiscard]] PatternGraph parse_pattern_graph(std::string_view text);
[[nodiscard]] PatternGraph load_pattern_graph(const std::filesystem::path& path);

/// Mean over patterns of indegree / K.
[[nodiscard]] double degree_confidence(const PatternGraph& g);

/// Population standard deviation of pattern j's K contribution counts,
/// counting non-contributing repositories as 0.
[[nodiscard]] double contribution_stdev(const PatternGraph& g, std::size_t j);

/// Mean of contribution_stdev over patterns.
[[nodiscard]] double stdev_confidence(const PatternGraph& g);

[[nodiscard]] constexpr double confidence_from_components(double c_degree, double c_stdev) noexcept
{
    return c_degree + (1.0 - c_stdev);
}

struct PatternTuple {
    std::string pattern;
    std::int64_t n{0};  ///< total occurrences
    std::size_t d{0};   ///< contributing repositories

    bool operator==(const PatternTuple&) const = default;
};

/// One tuple per pattern, sorted by pattern id.
[[nodiscard]] std::vector<PatternTuple> tuple_summary(const PatternGraph& g);

struct PatternStats {
    std::string pattern;
    std::size_t indegree{0};
    double sigma{0};
    std::int64_t n{0};
};

struct ConfidenceReport {
    double c_degree{0};
    double c_stdev{0};
    double c{0};
    std::vector<PatternStats> patterns;
};

[[nodiscard]] ConfidenceReport confidence(const PatternGraph& g);

/// `{c_degree, c_stdev, c, patterns: [{id, indegree, sigma, n, d}]}`.
[[nodiscard]] nlohmann::ordered_json to_json(const ConfidenceReport& report);

}  // namespace gitrank
