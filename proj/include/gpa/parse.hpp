#pragma once

#include <stdexcept>
#include <string>

#include "gpa/poly.hpp"

namespace gpa {

struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line, int col)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
          line(line), col(col) {}
    int line;
    int col;
};

// Parses the expression grammar: rational literals (`-3/4`), generator names,
// `+ - * ^` with `^` restricted to even generators and nonnegative integer
// exponents, parentheses, insignificant whitespace. Canonicalizes on parse.
GradedPoly parse_expr(const std::string& text, const ContextPtr& ctx);

} // namespace gpa
