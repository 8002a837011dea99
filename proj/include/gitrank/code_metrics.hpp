#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gitrank/lexer.hpp"

namespace gitrank {

/// Operator/operand tallies for one token span. Identifiers and literals are
/// operands; keywords, operators and punctuation are operators.
struct HalsteadCounts {
    std::uint64_t total_operators{0};     // N1
    std::uint64_t total_operands{0};      // N2
    std::uint64_t distinct_operators{0};  // eta1
    std::uint64_t distinct_operands{0};   // eta2

    [[nodiscard]] std::uint64_t length() const noexcept
    {
        return total_operators + total_operands;
    }
    [[nodiscard]] std::uint64_t vocabulary() const noexcept
    {
        return distinct_operators + distinct_operands;
    }
    /// N * log2(eta); 0 for an empty vocabulary.
    [[nodiscard]] double volume() const noexcept;

    bool operator==(const HalsteadCounts&) const = default;
};

struct FunctionMetrics {
    std::string name;
    std::uint32_t start_line{1};
    std::uint32_t end_line{1};
    std::uint32_t cyclomatic_complexity{1};
    HalsteadCounts halstead;
    std::uint32_t lines_of_code{1};  ///< end_line - start_line + 1

    [[nodiscard]] double halstead_volume() const noexcept { return halstead.volume(); }
};

/// 1 + number of `if`, `for`, `while`, `case`, `catch`, `?`, `&&` and `||`
/// tokens in the span. Tokens inside comments and literals never match.
[[nodiscard]] std::uint32_t cyclomatic_complexity(TokenSpan body) noexcept;

[[nodiscard]] HalsteadCounts halstead_counts(TokenSpan body);

[[nodiscard]] inline double halstead_volume(TokenSpan body)
{
    return halstead_counts(body).volume();
}

/// 171 - 5.2 ln(v) - 0.23 c - 16.2 ln(l), unclamped.
/// Throws std::domain_error unless v > 0 and l > 0.
[[nodiscard]] double maintainability_index(double volume, double complexity, double lines);

/// Physical lines holding at least one token that is not whitespace, newline
/// or comment. Multi-line tokens count every line they cover.
[[nodiscard]] std::uint32_t count_sloc(TokenSpan tokens);

/// Number of lines in the text; a final line without a terminator counts.
[[nodiscard]] std::uint32_t physical_line_count(std::string_view source) noexcept;

}  // namespace gitrank
