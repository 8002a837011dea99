#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gitrank/lexer.hpp"

namespace gitrank {

/// A function definition located in a token stream. Indices refer to the
/// stream passed to extract_functions().
struct FunctionSpan {
    std::string name;               ///< as written, including `A::` qualification
    std::size_t name_index{0};      ///< first token of the (qualified) name
    std::size_t body_begin{0};      ///< the opening `{`
    std::size_t body_end{0};        ///< one past the matching `}`
    std::uint32_t start_line{1};
    std::uint32_t end_line{1};

    [[nodiscard]] TokenSpan body(TokenSpan tokens) const
    {
        return tokens.subspan(body_begin, body_end - body_begin);
    }
};

struct FunctionScan {
    std::vector<FunctionSpan> functions;
    std::vector<Diagnostic> diagnostics;
};

/// Finds function definitions at file, namespace, class and `extern "C"`
/// scope: a name followed by a balanced parameter list, optional trailers
/// (cv/ref qualifiers, noexcept, attributes, trailing return type, member
/// initializer list) and a braced body. Bodies are consumed whole, so lambdas
/// and local classes belong to their enclosing function. Preprocessor
/// directive lines are ignored. Declarations without a body are not returned.
[[nodiscard]] FunctionScan extract_functions(TokenSpan tokens);

}  // namespace gitrank
