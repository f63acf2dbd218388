#pragma once

#include "jv/expr.hpp"

#include <string>

namespace jv {

struct ParseError : Error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : Error(msg + " (at column " + std::to_string(pos + 1) + ")"), position(pos)
    {
    }
};

/// Parse an expression in the chart grammar: declared coordinate names,
/// jet coordinates by underscore suffix (y_t, y2_tt, y_x1x1), operators
/// + - * / ^, sin/cos/exp/log, pi, and rational or decimal literals.
Expr parse_expr(const std::string& text, const JetContext& ctx);

} // namespace jv
