#include "gitrank/lexer.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_set>

namespace gitrank {

namespace {

constexpr std::array kKeywords = {
    // C++20
    "alignas", "alignof", "and", "and_eq", "asm", "auto", "bitand", "bitor", "bool", "break",
    "case", "catch", "char", "char8_t", "char16_t", "char32_t", "class", "co_await",
    "co_return", "co_yield", "compl", "concept", "const", "consteval", "constexpr",
    "constinit", "const_cast", "continue", "decltype", "default", "delete", "do", "double",
    "dynamic_cast", "else", "enum", "explicit", "export", "extern", "false", "float", "for",
    "friend", "goto", "if", "inline", "int", "long", "mutable", "namespace", "new",
    "noexcept", "not", "not_eq", "nullptr", "operator", "or", "or_eq", "private",
    "protected", "public", "register", "reinterpret_cast", "requires", "return", "short",
    "signed", "sizeof", "static", "static_assert", "static_cast", "struct", "switch",
    "template", "this", "thread_local", "throw", "true", "try", "typedef", "typeid",
    "typename", "union", "unsigned", "using", "virtual", "void", "volatile", "wchar_t",
    "while", "xor", "xor_eq",
    // C only
    "restrict", "_Alignas", "_Alignof", "_Atomic", "_Bool", "_Complex", "_Generic",
    "_Imaginary", "_Noreturn", "_Static_assert", "_Thread_local",
    // common extensions
    "__asm", "__asm__", "__attribute__", "__declspec", "__extension__", "__inline",
    "__inline__", "__restrict", "__restrict__", "__typeof__", "__volatile__",
};

// Longest first so the scan below is maximal munch.
constexpr std::array kOperators = {
    "<=>", "<<=", ">>=", "...", "->*",
    "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "+=", "-=", "*=",
    "/=", "%=", "&=", "|=", "^=", "::", ".*", "##",
    "+", "-", "*", "/", "%", "<", ">", "=", "!", "~", "&", "|", "^", "?", ":", ".", "#",
};

bool is_ident_start(unsigned char c) noexcept
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
           c >= 0x80;
}

bool is_digit(unsigned char c) noexcept { return c >= '0' && c <= '9'; }

bool is_ident_char(unsigned char c) noexcept { return is_ident_start(c) || is_digit(c); }

bool is_blank(unsigned char c) noexcept
{
    return c == ' ' || c == '\t' || c == '\v' || c == '\f';
}

bool is_punctuation(char c) noexcept
{
    switch (c) {
    case '(': case ')': case '[': case ']': case '{': case '}': case ';': case ',':
        return true;
    default:
        return false;
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    TokenStream run()
    {
        while (pos_ < src_.size()) {
            lex_one();
        }
        return std::move(out_);
    }

private:
    [[nodiscard]] char at(std::size_t i) const noexcept
    {
        return i < src_.size() ? src_[i] : '\0';
    }

    // Length of a line break starting at i (0 if none).
    [[nodiscard]] std::size_t newline_len(std::size_t i) const noexcept
    {
        if (at(i) == '\n') return 1;
        if (at(i) == '\r' && at(i + 1) == '\n') return 2;
        return 0;
    }

    // Length of a backslash-newline splice starting at i (0 if none).
    [[nodiscard]] std::size_t splice_len(std::size_t i) const noexcept
    {
        if (at(i) != '\\') return 0;
        const auto n = newline_len(i + 1);
        return n == 0 ? 0 : n + 1;
    }

    void diagnose(std::string message)
    {
        out_.diagnostics.push_back({tok_line_, tok_col_, std::move(message)});
    }

    void emit(TokenKind kind)
    {
        Token tok{kind, std::string(src_.substr(start_, pos_ - start_)), tok_line_, tok_col_};
        for (char c : tok.text) {
            if (c == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
        out_.tokens.push_back(std::move(tok));
    }

    void lex_one()
    {
        start_ = pos_;
        tok_line_ = line_;
        tok_col_ = col_;
        const char c = src_[pos_];
        const auto uc = static_cast<unsigned char>(c);

        if (const auto n = newline_len(pos_); n != 0) {
            pos_ += n;
            emit(TokenKind::newline);
            return;
        }
        if (is_blank(uc) || c == '\r' || splice_len(pos_) != 0) {
            lex_whitespace();
            return;
        }
        if (c == '/' && at(pos_ + 1) == '/') {
            lex_line_comment();
            return;
        }
        if (c == '/' && at(pos_ + 1) == '*') {
            lex_block_comment();
            return;
        }
        if (is_ident_start(uc)) {
            lex_word();
            return;
        }
        if (is_digit(uc) || (c == '.' && is_digit(static_cast<unsigned char>(at(pos_ + 1))))) {
            lex_number();
            return;
        }
        if (c == '"' || c == '\'') {
            lex_quoted();
            return;
        }
        if (is_punctuation(c)) {
            ++pos_;
            emit(TokenKind::punctuation);
            return;
        }
        const auto rest = src_.substr(pos_);
        for (std::string_view op : kOperators) {
            if (rest.starts_with(op)) {
                pos_ += op.size();
                emit(TokenKind::op);
                return;
            }
        }
        // Stray byte ('@', '`', a lone backslash, control characters).
        ++pos_;
        emit(TokenKind::punctuation);
    }

    void lex_whitespace()
    {
        while (pos_ < src_.size()) {
            const auto uc = static_cast<unsigned char>(src_[pos_]);
            if (is_blank(uc) || (uc == '\r' && newline_len(pos_) == 0)) {
                ++pos_;
            } else if (const auto n = splice_len(pos_); n != 0) {
                pos_ += n;
            } else {
                break;
            }
        }
        emit(TokenKind::whitespace);
    }

    void lex_line_comment()
    {
        pos_ += 2;
        while (pos_ < src_.size()) {
            if (const auto n = splice_len(pos_); n != 0) {
                pos_ += n;
            } else if (newline_len(pos_) != 0) {
                break;
            } else {
                ++pos_;
            }
        }
        emit(TokenKind::comment);
    }

    void lex_block_comment()
    {
        const auto close = src_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) {
            diagnose("unterminated block comment");
            pos_ = src_.size();
        } else {
            pos_ = close + 2;
        }
        emit(TokenKind::comment);
    }

    void lex_word()
    {
        while (pos_ < src_.size() && is_ident_char(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
        const auto word = src_.substr(start_, pos_ - start_);
        const char next = at(pos_);
        if (next == '"' && (word == "R" || word == "u8R" || word == "uR" || word == "UR" ||
                            word == "LR")) {
            lex_raw_string();
            return;
        }
        if ((next == '"' || next == '\'') &&
            (word == "u8" || word == "u" || word == "U" || word == "L")) {
            lex_quoted();
            return;
        }
        emit(is_keyword(word) ? TokenKind::keyword : TokenKind::identifier);
    }

    void lex_number()
    {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            const auto uc = static_cast<unsigned char>(c);
            if ((c == 'e' || c == 'E' || c == 'p' || c == 'P') &&
                (at(pos_ + 1) == '+' || at(pos_ + 1) == '-')) {
                pos_ += 2;
            } else if (c == '\'' && is_ident_char(static_cast<unsigned char>(at(pos_ + 1)))) {
                pos_ += 2;  // digit separator
            } else if (is_ident_char(uc) || c == '.') {
                ++pos_;
            } else {
                break;
            }
        }
        emit(TokenKind::literal);
    }

    // Ordinary string or character literal; `pos_` is at the opening quote
    // (after any encoding prefix).
    void lex_quoted()
    {
        const char quote = src_[pos_++];
        bool closed = false;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '\\') {
                const auto n = newline_len(pos_ + 1);
                pos_ += n != 0 ? n + 1 : 2;
                continue;
            }
            if (c == quote) {
                ++pos_;
                closed = true;
                break;
            }
            if (newline_len(pos_) != 0) {
                break;
            }
            ++pos_;
        }
        pos_ = std::min(pos_, src_.size());
        if (!closed) {
            diagnose(pos_ >= src_.size() ? "unterminated literal at end of file"
                                         : "unterminated literal at end of line");
        } else {
            consume_ud_suffix();
        }
        emit(TokenKind::literal);
    }

    void lex_raw_string()
    {
        ++pos_;  // opening quote
        const auto open = src_.find('(', pos_);
        const auto delim_len = open == std::string_view::npos ? 0 : open - pos_;
        const auto delim = src_.substr(pos_, delim_len);
        const bool valid_delim =
            open != std::string_view::npos && delim_len <= 16 &&
            std::none_of(delim.begin(), delim.end(), [](char c) {
                return c == ' ' || c == ')' || c == '\\' || c == '\t' || c == '\n' ||
                       c == '"';
            });
        if (!valid_delim) {
            --pos_;
            lex_quoted();
            return;
        }
        const std::string terminator = ")" + std::string(delim) + "\"";
        const auto close = src_.find(terminator, open + 1);
        if (close == std::string_view::npos) {
            diagnose("unterminated raw string literal");
            pos_ = src_.size();
        } else {
            pos_ = close + terminator.size();
            consume_ud_suffix();
        }
        emit(TokenKind::literal);
    }

    void consume_ud_suffix()
    {
        if (pos_ < src_.size() && is_ident_start(static_cast<unsigned char>(src_[pos_]))) {
            while (pos_ < src_.size() && is_ident_char(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_{0};
    std::size_t start_{0};
    std::uint32_t line_{1};
    std::uint32_t col_{1};
    std::uint32_t tok_line_{1};
    std::uint32_t tok_col_{1};
    TokenStream out_;
};

}  // namespace

std::string_view to_string(TokenKind kind) noexcept
{
    switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::keyword: return "keyword";
    case TokenKind::op: return "operator";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::literal: return "literal";
    case TokenKind::comment: return "comment";
    case TokenKind::whitespace: return "whitespace";
    case TokenKind::newline: return "newline";
    }
    return "unknown";
}

std::uint32_t Token::last_line() const noexcept
{
    return line + static_cast<std::uint32_t>(std::count(text.begin(), text.end(), '\n'));
}

bool is_keyword(std::string_view word) noexcept
{
    static const std::unordered_set<std::string_view> set(kKeywords.begin(), kKeywords.end());
    return set.contains(word);
}

TokenStream tokenize(std::string_view source)
{
    return Lexer(source).run();
}

}  // namespace gitrank
