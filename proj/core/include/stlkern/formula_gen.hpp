// ── formula_gen.hpp ─────────────────────────────────────────────────────────
// Random formula generation by growing a syntax tree over a pool of atoms:
//
//   1. draw the atom count n uniformly from {1..max_atoms};
//   2. draw thresholds k_i uniformly from [threshold_lo, threshold_hi] and
//      seed the pool P with the atoms (x >= k_i);
//   3. loop while |P| > 1: with probability 1/2 the operator is `not`,
//      otherwise uniform over {or, and, U, F, G}; draw the operand(s) from
//      P, apply, put the result back;
//   4. once |P| == 1, with probability 1/2 wrap the survivor in an
//      operator drawn uniformly from {not, F, G}.
//
// Unary draws do not shrink the pool, so the bare loop terminates only in
// expectation; after three consecutive unary applications the next draw is
// forced uniform over the binary operators {or, and, U}.  All temporal
// operators are emitted unwindowed, every atom is used exactly once, and
// `true` never appears.
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstdint>
#include <vector>

#include "stlkern/formula.hpp"

namespace stlkern {

struct FormulaGenConfig {
    std::size_t max_atoms = 6;
    double threshold_lo = -7.0;
    double threshold_hi = 7.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Per-draw bookkeeping, exposed so sampling statistics are testable.
struct FormulaGenStats {
    std::size_t atoms_drawn = 0;
    bool wrapped = false;  // final 50% wrap applied
};

FormulaPtr sample_formula(const FormulaGenConfig& cfg,
                          FormulaGenStats* stats = nullptr);

// count independent formulas; formula i comes from derived stream i of
// cfg.seed, so a corpus prefix is stable under count changes.
std::vector<FormulaPtr> sample_corpus(const FormulaGenConfig& cfg,
                                      std::size_t count);

}  // namespace stlkern
