// ── formula.hpp ─────────────────────────────────────────────────────────────
// Temporal-logic formulas over a scalar signal named `x`.
//
// A formula is an immutable tree shared through FormulaPtr
// (shared_ptr<const Formula>).  Node kinds:
//
//   True                      boolean constant
//   Atom                      x >= k  or  x <= k
//   Not, And, Or              boolean connectives
//   Until, Eventually,        temporal operators, each with an optional
//   Globally                  time window [lo, hi] in seconds
//
// An absent window means the operator quantifies over the whole remaining
// trace.  Construction goes through the make_* factories, which validate
// the node invariants (finite threshold; window with 0 <= lo < hi < inf).
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

namespace stlkern {

enum class FormulaKind : unsigned char {
    True,
    Atom,
    Not,
    And,
    Or,
    Until,
    Eventually,
    Globally,
};

enum class AtomPolarity : unsigned char {
    GreaterEqual,  // x >= k
    LessEqual,     // x <= k
};

struct TimeWindow {
    double lo = 0.0;  // seconds, >= 0
    double hi = 0.0;  // seconds, > lo

    bool operator==(const TimeWindow&) const = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FormulaKind kind = FormulaKind::True;

    // Atom payload
    AtomPolarity polarity = AtomPolarity::GreaterEqual;
    double threshold = 0.0;

    // Children: unary operators use `left` only.
    FormulaPtr left;
    FormulaPtr right;

    std::optional<TimeWindow> window;

    // Computed at construction; both are finite for every reachable tree.
    std::size_t node_count = 1;
    std::size_t depth = 1;

    bool is_temporal() const {
        return kind == FormulaKind::Until || kind == FormulaKind::Eventually ||
               kind == FormulaKind::Globally;
    }
};

// ── factories ───────────────────────────────────────────────────────────────

FormulaPtr make_true();
FormulaPtr make_atom(AtomPolarity polarity, double threshold);
FormulaPtr make_not(FormulaPtr child);
FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_or(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_until(FormulaPtr lhs, FormulaPtr rhs,
                      std::optional<TimeWindow> window = std::nullopt);
FormulaPtr make_eventually(FormulaPtr child,
                           std::optional<TimeWindow> window = std::nullopt);
FormulaPtr make_globally(FormulaPtr child,
                         std::optional<TimeWindow> window = std::nullopt);

// ── queries ─────────────────────────────────────────────────────────────────

// Structural equality, exact on threshold and window bits.
bool equal(const Formula& a, const Formula& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

bool contains_true(const Formula& f);
std::size_t atom_count(const Formula& f);

// Largest |threshold| over the atoms of f; 0 if f has none.
double max_abs_threshold(const Formula& f);

// Canonical fully parenthesized text; parse_formula(print_formula(f))
// reproduces f exactly (thresholds use shortest round-trip formatting).
std::string print_formula(const Formula& f);
std::string print_formula(const FormulaPtr& f);

}  // namespace stlkern
