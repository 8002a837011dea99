#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gitrank/lexer.hpp"

namespace gitrank {

enum class StyleRule {
    line_length,          ///< line longer than StyleConfig::max_line_length code points
    trailing_whitespace,  ///< space or tab before the line break
    tab_indentation,      ///< hard tab in the leading whitespace
    space_after_comma,    ///< `,` directly followed by a non-blank token
    multiple_statements,  ///< code after a top-level `;` on the same line
};

[[nodiscard]] std::string_view to_string(StyleRule rule) noexcept;

struct StyleConfig {
    std::size_t max_line_length{80};
};

struct StyleViolation {
    StyleRule rule;
    std::uint32_t line;

    bool operator==(const StyleViolation&) const = default;
};

/// At most one violation per rule per line, ordered by line then rule.
[[nodiscard]] std::vector<StyleViolation> check_style(std::string_view source, TokenSpan tokens,
                                                      const StyleConfig& config = {});

[[nodiscard]] inline std::uint32_t style_errors(std::string_view source, TokenSpan tokens,
                                                const StyleConfig& config = {})
{
    return static_cast<std::uint32_t>(check_style(source, tokens, config).size());
}

}  // namespace gitrank
