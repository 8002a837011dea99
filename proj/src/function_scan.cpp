#include "gitrank/function_scan.hpp"

#include <optional>
#include <string_view>

namespace gitrank {

namespace {

enum class BraceKind { function, scope, other };

enum class Trailer { invalid, plain, init_list };

struct Candidate {
    std::string name;
    std::size_t name_pos{0};  // position in the significant-token list
};

class Scanner {
public:
    explicit Scanner(TokenSpan tokens) : tokens_(tokens) { collect_significant(); }

    FunctionScan run()
    {
        std::size_t stmt_begin = 0;
        std::size_t open_scopes = 0;
        for (std::size_t k = 0; k < sig_.size(); ++k) {
            const Token& t = tok(k);
            if (t.is(TokenKind::punctuation, "{")) {
                std::optional<Candidate> fn;
                const BraceKind kind = classify(stmt_begin, k, fn);
                if (kind == BraceKind::scope) {
                    ++open_scopes;
                    stmt_begin = k + 1;
                    continue;
                }
                const auto close = match(k, "{", "}", sig_.size());
                if (!close) {
                    diagnose(t, fn ? "unbalanced braces: body of '" + fn->name +
                                         "' is never closed"
                                   : std::string("unbalanced braces: '{' is never closed"));
                    break;
                }
                if (kind == BraceKind::function) {
                    FunctionSpan span;
                    span.name = std::move(fn->name);
                    span.name_index = sig_[fn->name_pos];
                    span.body_begin = sig_[k];
                    span.body_end = sig_[*close] + 1;
                    span.start_line = tok(fn->name_pos).line;
                    span.end_line = tok(*close).line;
                    out_.functions.push_back(std::move(span));
                    stmt_begin = *close + 1;
                }
                k = *close;
            } else if (t.is(TokenKind::punctuation, "}")) {
                if (open_scopes == 0) {
                    diagnose(t, "unbalanced braces: unmatched '}'");
                } else {
                    --open_scopes;
                }
                stmt_begin = k + 1;
            } else if (t.is(TokenKind::punctuation, ";")) {
                stmt_begin = k + 1;
            }
        }
        if (open_scopes != 0 && !sig_.empty()) {
            diagnose(tok(sig_.size() - 1),
                     "unbalanced braces: " + std::to_string(open_scopes) +
                         " scope(s) still open at end of file");
        }
        return std::move(out_);
    }

private:
    [[nodiscard]] const Token& tok(std::size_t k) const { return tokens_[sig_[k]]; }

    void diagnose(const Token& at, std::string message)
    {
        out_.diagnostics.push_back({at.line, at.column, std::move(message)});
    }

    // Non-trivia tokens outside preprocessor directive lines.
    void collect_significant()
    {
        bool line_has_code = false;
        bool in_directive = false;
        for (std::size_t i = 0; i < tokens_.size(); ++i) {
            const Token& t = tokens_[i];
            if (t.kind == TokenKind::newline) {
                line_has_code = false;
                in_directive = false;
                continue;
            }
            if (t.is_trivia() || in_directive) {
                continue;
            }
            if (!line_has_code && t.is(TokenKind::op, "#")) {
                in_directive = true;
                continue;
            }
            line_has_code = true;
            sig_.push_back(i);
        }
    }

    // Position of the bracket closing the one at `open`, searching before `limit`.
    [[nodiscard]] std::optional<std::size_t> match(std::size_t open, std::string_view lhs,
                                                   std::string_view rhs,
                                                   std::size_t limit) const
    {
        std::size_t depth = 0;
        for (std::size_t k = open; k < limit; ++k) {
            const Token& t = tok(k);
            if (t.kind != TokenKind::punctuation) continue;
            if (t.text == lhs) {
                ++depth;
            } else if (t.text == rhs && --depth == 0) {
                return k;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] bool is_punct(std::size_t k, std::string_view text) const
    {
        return tok(k).is(TokenKind::punctuation, text);
    }

    // Name of a function whose parameter list opens at `paren`, if the tokens
    // before it spell one.
    [[nodiscard]] std::optional<Candidate> name_before(std::size_t begin,
                                                       std::size_t paren) const
    {
        if (paren == begin) return std::nullopt;
        const std::size_t j = paren - 1;
        std::string name;
        std::size_t first = j;
        if (tok(j).kind == TokenKind::identifier) {
            name = tok(j).text;
            if (j > begin && tok(j - 1).is(TokenKind::keyword, "operator")) {
                name = "operator " + name;
                first = j - 1;
            } else if (j > begin && tok(j - 1).is(TokenKind::op, "~")) {
                name = "~" + name;
                first = j - 1;
            }
        } else {
            // operator==, operator(), operator[], operator new[], operator bool ...
            std::optional<std::size_t> op_kw;
            for (std::size_t back = 1; back <= 3 && back <= j - begin; ++back) {
                if (tok(j - back).is(TokenKind::keyword, "operator")) {
                    op_kw = j - back;
                    break;
                }
            }
            if (!op_kw) return std::nullopt;
            name = "operator";
            for (std::size_t m = *op_kw + 1; m <= j; ++m) {
                if (tok(m).kind == TokenKind::keyword || tok(m).kind == TokenKind::identifier) {
                    name += ' ';
                }
                name += tok(m).text;
            }
            first = *op_kw;
        }
        while (first >= begin + 2 && tok(first - 1).is(TokenKind::op, "::") &&
               tok(first - 2).kind == TokenKind::identifier) {
            name = tok(first - 2).text + "::" + name;
            first -= 2;
        }
        return Candidate{std::move(name), first};
    }

    // Classifies the tokens in [pos, end) that sit between a parameter list
    // and a candidate body.
    [[nodiscard]] Trailer trailer(std::size_t pos, std::size_t end) const
    {
        while (pos < end) {
            const Token& t = tok(pos);
            if (t.is(TokenKind::op, ":")) {
                return Trailer::init_list;
            }
            if (t.is(TokenKind::op, "->") || t.is(TokenKind::keyword, "requires") ||
                t.is(TokenKind::keyword, "try")) {
                return Trailer::plain;
            }
            if (t.is(TokenKind::keyword, "noexcept") || t.is(TokenKind::keyword, "throw") ||
                t.is(TokenKind::keyword, "__attribute__") ||
                t.is(TokenKind::keyword, "__declspec")) {
                ++pos;
                if (pos < end && is_punct(pos, "(")) {
                    const auto close = match(pos, "(", ")", end);
                    if (!close) return Trailer::invalid;
                    pos = *close + 1;
                }
                continue;
            }
            if (is_punct(pos, "[") && pos + 1 < end && is_punct(pos + 1, "[")) {
                const auto close = match(pos, "[", "]", end);
                if (!close) return Trailer::invalid;
                pos = *close + 1;
                continue;
            }
            const bool qualifier =
                t.is(TokenKind::keyword, "const") || t.is(TokenKind::keyword, "volatile") ||
                t.is(TokenKind::identifier, "override") || t.is(TokenKind::identifier, "final") ||
                t.is(TokenKind::op, "&") || t.is(TokenKind::op, "&&");
            if (!qualifier) return Trailer::invalid;
            ++pos;
        }
        return Trailer::plain;
    }

    BraceKind classify(std::size_t begin, std::size_t brace, std::optional<Candidate>& fn) const
    {
        int depth = 0;
        bool assignment = false;
        bool scope_keyword = false;
        for (std::size_t k = begin; k < brace; ++k) {
            const Token& t = tok(k);
            if (t.kind == TokenKind::punctuation) {
                if (t.text == "(" || t.text == "[") {
                    if (depth == 0 && t.text == "(") {
                        if (auto cand = name_before(begin, k)) {
                            const auto close = match(k, "(", ")", brace);
                            const auto kind =
                                close ? trailer(*close + 1, brace) : Trailer::invalid;
                            if (kind == Trailer::init_list && brace > 0 &&
                                (tok(brace - 1).kind == TokenKind::identifier ||
                                 tok(brace - 1).is(TokenKind::op, ">"))) {
                                // `: member{init}` inside an initializer list
                                return BraceKind::other;
                            }
                            if (kind != Trailer::invalid) {
                                fn = std::move(cand);
                                return BraceKind::function;
                            }
                        }
                    }
                    ++depth;
                } else if ((t.text == ")" || t.text == "]") && depth > 0) {
                    --depth;
                }
                continue;
            }
            if (depth != 0) continue;
            if (t.is(TokenKind::op, "=")) {
                assignment = true;
            } else if (t.kind == TokenKind::keyword &&
                       (t.text == "namespace" || t.text == "class" || t.text == "struct" ||
                        t.text == "union" || t.text == "enum")) {
                scope_keyword = true;
            } else if (t.is(TokenKind::keyword, "extern") && k + 1 < brace &&
                       tok(k + 1).kind == TokenKind::literal) {
                scope_keyword = true;
            }
        }
        if (!assignment && scope_keyword) return BraceKind::scope;
        return BraceKind::other;
    }

    TokenSpan tokens_;
    std::vector<std::size_t> sig_;
    FunctionScan out_;
};

}  // namespace

FunctionScan extract_functions(TokenSpan tokens)
{
    return Scanner(tokens).run();
}

}  // namespace gitrank
