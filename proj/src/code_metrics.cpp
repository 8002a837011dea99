#include "gitrank/code_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <vector>

namespace gitrank {

double HalsteadCounts::volume() const noexcept
{
    const auto eta = vocabulary();
    if (eta == 0) return 0.0;
    return static_cast<double>(length()) * std::log2(static_cast<double>(eta));
}

std::uint32_t cyclomatic_complexity(TokenSpan body) noexcept
{
    std::uint32_t decisions = 0;
    for (const Token& t : body) {
        if (t.kind == TokenKind::keyword) {
            if (t.text == "if" || t.text == "for" || t.text == "while" || t.text == "case" ||
                t.text == "catch") {
                ++decisions;
            }
        } else if (t.kind == TokenKind::op) {
            if (t.text == "?" || t.text == "&&" || t.text == "||") {
                ++decisions;
            }
        }
    }
    return 1 + decisions;
}

HalsteadCounts halstead_counts(TokenSpan body)
{
    HalsteadCounts counts;
    std::unordered_set<std::string_view> operators;
    std::unordered_set<std::string_view> operands;
    for (const Token& t : body) {
        switch (t.kind) {
        case TokenKind::identifier:
        case TokenKind::literal:
            ++counts.total_operands;
            operands.insert(t.text);
            break;
        case TokenKind::keyword:
        case TokenKind::op:
        case TokenKind::punctuation:
            ++counts.total_operators;
            operators.insert(t.text);
            break;
        case TokenKind::comment:
        case TokenKind::whitespace:
        case TokenKind::newline:
            break;
        }
    }
    counts.distinct_operators = operators.size();
    counts.distinct_operands = operands.size();
    return counts;
}

double maintainability_index(double volume, double complexity, double lines)
{
    if (!(volume > 0.0)) {
        throw std::domain_error("maintainability_index: Halstead volume must be > 0");
    }
    if (!(lines > 0.0)) {
        throw std::domain_error("maintainability_index: line count must be > 0");
    }
    return 171.0 - 5.2 * std::log(volume) - 0.23 * complexity - 16.2 * std::log(lines);
}

std::uint32_t count_sloc(TokenSpan tokens)
{
    std::vector<std::uint32_t> lines;
    for (const Token& t : tokens) {
        if (t.is_trivia()) continue;
        for (auto l = t.line, last = t.last_line(); l <= last; ++l) {
            lines.push_back(l);
        }
    }
    std::sort(lines.begin(), lines.end());
    return static_cast<std::uint32_t>(std::unique(lines.begin(), lines.end()) - lines.begin());
}

std::uint32_t physical_line_count(std::string_view source) noexcept
{
    auto n = static_cast<std::uint32_t>(std::count(source.begin(), source.end(), '\n'));
    if (!source.empty() && source.back() != '\n') ++n;
    return n;
}

}  // namespace gitrank
