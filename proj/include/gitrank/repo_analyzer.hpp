#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gitrank/code_metrics.hpp"
#include "gitrank/lexer.hpp"
#include "gitrank/security_rules.hpp"
#include "gitrank/style_rules.hpp"

namespace gitrank {

/// Per-file result of the code analysis.
struct ModuleMetrics {
    std::string path;  ///< relative to the analyzed root, '/' separated
    std::vector<FunctionMetrics> functions;
    std::uint32_t physical_lines{0};
    std::uint32_t sloc{0};
    std::uint32_t style_errors{0};
    SecurityCounts security;
    double maintainability_index{0.0};
    std::vector<Diagnostic> diagnostics;
};

/// The six code measures of one repository. A measure that cannot be
/// computed (no functions, no source lines) is empty, never zero.
struct RepoCodeSummary {
    std::string repo_id;
    std::optional<double> cc;
    std::optional<double> sty;
    std::optional<double> sl;
    std::optional<double> sm;
    std::optional<double> sh;
    std::optional<double> mi;

    std::size_t files{0};
    std::size_t functions{0};
    std::uint64_t sloc{0};
    std::uint64_t style_errors{0};
    SecurityCounts security;
};

struct AnalyzerConfig {
    std::vector<std::string> extensions{".c", ".h", ".cc", ".cpp", ".cxx",
                                        ".hh", ".hpp", ".hxx", ".inl"};
    StyleConfig style;
    std::optional<std::filesystem::path> rule_table;  ///< built-in table when empty
    unsigned jobs{1};

    [[nodiscard]] bool selects(const std::filesystem::path& file) const;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads `{"extensions": [...], "max_line_length": N, "security_rules": "path",
/// "jobs": N}`; every key is optional. Relative rule paths resolve against
/// the config file's directory.
[[nodiscard]] AnalyzerConfig load_analyzer_config(const std::filesystem::path& path);
[[nodiscard]] AnalyzerConfig parse_analyzer_config(const nlohmann::json& doc,
                                                   const std::filesystem::path& base_dir);

struct RepositoryAnalysis {
    std::vector<ModuleMetrics> modules;  ///< sorted by path
    RepoCodeSummary summary;
    std::vector<std::string> skipped;    ///< "path: reason" for unreadable files

    [[nodiscard]] bool partial() const noexcept { return !skipped.empty(); }
};

/// Analyzes one in-memory file. Module MI uses the summed function volumes
/// and complexities with the file's SLoC; volume and line count are floored
/// at 1 so near-empty files stay finite.
[[nodiscard]] ModuleMetrics analyze_source(std::string path, std::string_view source,
                                           std::span<const SecurityRule> rules,
                                           const StyleConfig& style = {});

[[nodiscard]] RepoCodeSummary summarize(std::span<const ModuleMetrics> modules,
                                        std::string repo_id = {});

/// Walks `root` (hidden directories skipped, symlinked directories not
/// followed), analyzes every selected file and aggregates. Throws
/// std::runtime_error when `root` is not a directory.
[[nodiscard]] RepositoryAnalysis analyze_repository(const std::filesystem::path& root,
                                                    const AnalyzerConfig& config,
                                                    std::string repo_id = {});

[[nodiscard]] nlohmann::ordered_json to_json(const ModuleMetrics& module);
[[nodiscard]] nlohmann::ordered_json to_json(const RepoCodeSummary& summary);

}  // namespace gitrank
