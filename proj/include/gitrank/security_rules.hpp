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

#include "gitrank/lexer.hpp"

namespace gitrank {

enum class Severity { low, medium, high };

[[nodiscard]] std::string_view to_string(Severity severity) noexcept;
[[nodiscard]] std::optional<Severity> parse_severity(std::string_view text) noexcept;

/// A dangerous callee and the severity a call to it is reported with.
struct SecurityRule {
    std::string pattern;
    Severity severity{Severity::low};
    std::string rationale;

    bool operator==(const SecurityRule&) const = default;
};

struct SecurityCounts {
    std::uint64_t low{0};
    std::uint64_t medium{0};
    std::uint64_t high{0};

    [[nodiscard]] std::uint64_t total() const noexcept { return low + medium + high; }

    SecurityCounts& operator+=(const SecurityCounts& other) noexcept
    {
        low += other.low;
        medium += other.medium;
        high += other.high;
        return *this;
    }

    bool operator==(const SecurityCounts&) const = default;
};

class RuleTableError : public std::runtime_error {
public:
    RuleTableError(const std::string& source, std::size_t line, const std::string& what);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Parses `pattern,severity,rationale` lines. Blank lines and lines starting
/// with `#` are skipped; the rationale may itself contain commas.
[[nodiscard]] std::vector<SecurityRule> parse_security_rules(std::string_view text,
                                                             const std::string& source = "<rules>");

[[nodiscard]] std::vector<SecurityRule> load_security_rules(const std::filesystem::path& path);

/// Text of the built-in table (identical to data/security_rules.csv).
[[nodiscard]] std::string_view default_security_rules_text() noexcept;
[[nodiscard]] const std::vector<SecurityRule>& default_security_rules();

/// Counts call sites: an identifier equal to a rule pattern whose next
/// non-trivia token is `(`. Throws std::invalid_argument for an empty table.
[[nodiscard]] SecurityCounts security_errors(TokenSpan tokens, std::span<const SecurityRule> rules);

}  // namespace gitrank
