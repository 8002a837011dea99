#include "gitrank/style_rules.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace gitrank {

namespace {

std::size_t code_points(std::string_view line) noexcept
{
    return static_cast<std::size_t>(std::count_if(line.begin(), line.end(), [](char c) {
        return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
    }));
}

bool is_blank_token(const Token& t) noexcept
{
    return t.kind == TokenKind::whitespace || t.kind == TokenKind::newline;
}

}  // namespace

std::string_view to_string(StyleRule rule) noexcept
{
    switch (rule) {
    case StyleRule::line_length: return "line-length";
    case StyleRule::trailing_whitespace: return "trailing-whitespace";
    case StyleRule::tab_indentation: return "tab-indentation";
    case StyleRule::space_after_comma: return "space-after-comma";
    case StyleRule::multiple_statements: return "multiple-statements";
    }
    return "unknown";
}

std::vector<StyleViolation> check_style(std::string_view source, TokenSpan tokens,
                                        const StyleConfig& config)
{
    std::set<std::pair<std::uint32_t, StyleRule>> found;

    std::uint32_t number = 0;
    std::size_t pos = 0;
    while (pos < source.size()) {
        const auto eol = source.find('\n', pos);
        auto line = source.substr(pos, eol == std::string_view::npos ? source.npos : eol - pos);
        pos = eol == std::string_view::npos ? source.size() : eol + 1;
        ++number;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (code_points(line) > config.max_line_length) {
            found.emplace(number, StyleRule::line_length);
        }
        if (!line.empty() && (line.back() == ' ' || line.back() == '\t')) {
            found.emplace(number, StyleRule::trailing_whitespace);
        }
        const auto indent_end = line.find_first_not_of(" \t");
        const auto indent = line.substr(0, indent_end);
        if (indent.find('\t') != std::string_view::npos) {
            found.emplace(number, StyleRule::tab_indentation);
        }
    }

    int paren_depth = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (t.kind != TokenKind::punctuation) continue;
        if (t.text == "(") {
            ++paren_depth;
        } else if (t.text == ")") {
            paren_depth = std::max(0, paren_depth - 1);
        } else if (t.text == ",") {
            if (i + 1 < tokens.size() && !is_blank_token(tokens[i + 1])) {
                found.emplace(t.line, StyleRule::space_after_comma);
            }
        } else if (t.text == ";" && paren_depth == 0) {
            std::size_t j = i + 1;
            while (j < tokens.size() && tokens[j].kind == TokenKind::whitespace) ++j;
            if (j < tokens.size() && tokens[j].kind != TokenKind::newline &&
                tokens[j].kind != TokenKind::comment &&
                !tokens[j].is(TokenKind::punctuation, "}")) {
                found.emplace(t.line, StyleRule::multiple_statements);
            }
        }
    }

    std::vector<StyleViolation> out;
    out.reserve(found.size());
    for (const auto& [line, rule] : found) out.push_back({rule, line});
    return out;
}

}  // namespace gitrank
