// ── parser.hpp ──────────────────────────────────────────────────────────────
// Text form of formulas.  Grammar (whitespace-insensitive):
//
//   formula := or_expr
//   or_expr    := and_expr ("or" and_expr)*
//   and_expr   := until_expr ("and" until_expr)*
//   until_expr := unary_expr ("U" window? until_expr)?      right-associative
//   unary_expr := ("F"|"G") window? unary_expr | not_expr
//   not_expr   := "not" not_expr | primary
//   primary    := "true" | atom | "(" formula ")"
//   atom       := "x" (">="|"<=") number
//   window     := "[" number "," number "]"
//
// Precedence: not > G/F/U > and > or.  `not` binds tighter than the
// temporal operators, so `not F (...)` needs parentheses: `not (F (...))`.
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stlkern/formula.hpp"

namespace stlkern {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t byte_offset,
               std::vector<std::string> expected);

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

FormulaPtr parse_formula(std::string_view text);

}  // namespace stlkern
