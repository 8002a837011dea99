#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gitrank {

enum class TokenKind : std::uint8_t {
    identifier,
    keyword,
    op,
    punctuation,
    literal,
    comment,
    whitespace,
    newline,
};

[[nodiscard]] std::string_view to_string(TokenKind kind) noexcept;

/// One lexeme of a C-family source file. The lexer is lossless: the texts of
/// all tokens, concatenated in order, reproduce the input byte-for-byte.
struct Token {
    TokenKind kind{TokenKind::whitespace};
    std::string text;
    std::uint32_t line{1};    ///< 1-based line of the first byte
    std::uint32_t column{1};  ///< 1-based byte column of the first byte

    /// Whitespace, newlines and comments carry no code.
    [[nodiscard]] bool is_trivia() const noexcept
    {
        return kind == TokenKind::whitespace || kind == TokenKind::newline ||
               kind == TokenKind::comment;
    }

    [[nodiscard]] bool is(TokenKind k, std::string_view t) const noexcept
    {
        return kind == k && text == t;
    }

    /// Line of the last byte (differs from `line` for multi-line tokens).
    [[nodiscard]] std::uint32_t last_line() const noexcept;

    bool operator==(const Token&) const = default;
};

struct Diagnostic {
    std::uint32_t line{0};
    std::uint32_t column{0};
    std::string message;
};

struct TokenStream {
    std::vector<Token> tokens;
    std::vector<Diagnostic> diagnostics;
};

/// Splits C/C++ source into tokens. Comments and string/char literals
/// (including escapes, raw strings and backslash line continuations) are
/// delimited correctly. An unterminated block comment or raw string swallows
/// the rest of the file; an unterminated quoted literal ends at the line
/// break. Both cases add a diagnostic and lexing continues.
[[nodiscard]] TokenStream tokenize(std::string_view source);

/// True for C and C++ reserved words plus the common compiler extension
/// keywords (`__attribute__`, `__declspec`, ...).
[[nodiscard]] bool is_keyword(std::string_view word) noexcept;

using TokenSpan = std::span<const Token>;

}  // namespace gitrank
