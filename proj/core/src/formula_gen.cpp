#include "stlkern/formula_gen.hpp"

#include <stdexcept>
#include <utility>

#include "stlkern/rng.hpp"

namespace stlkern {

void FormulaGenConfig::validate() const {
    if (max_atoms < 1) {
        throw std::invalid_argument("formula gen: max_atoms must be >= 1");
    }
    if (!(threshold_lo < threshold_hi)) {
        throw std::invalid_argument("formula gen: threshold_lo < threshold_hi required");
    }
}

namespace {

enum class GenOp { Not, Or, And, Until, Eventually, Globally };

FormulaPtr take_at(std::vector<FormulaPtr>& pool, std::size_t index) {
    FormulaPtr f = std::move(pool[index]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(index));
    return f;
}

FormulaPtr grow(const FormulaGenConfig& cfg, Rng& rng, FormulaGenStats* stats) {
    const std::size_t n = 1 + rng.next_below(cfg.max_atoms);
    if (stats) stats->atoms_drawn = n;

    std::vector<FormulaPtr> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        pool.push_back(make_atom(AtomPolarity::GreaterEqual,
                                 rng.next_uniform(cfg.threshold_lo,
                                                  cfg.threshold_hi)));
    }

    int unary_streak = 0;
    while (pool.size() > 1) {
        GenOp op;
        if (unary_streak >= 3) {
            // force a pool-shrinking draw
            constexpr GenOp binary[] = {GenOp::Or, GenOp::And, GenOp::Until};
            op = binary[rng.next_below(3)];
        } else if (rng.next_u01() < 0.5) {
            op = GenOp::Not;
        } else {
            constexpr GenOp mixed[] = {GenOp::Or, GenOp::And, GenOp::Until,
                                       GenOp::Eventually, GenOp::Globally};
            op = mixed[rng.next_below(5)];
        }

        switch (op) {
            case GenOp::Not:
            case GenOp::Eventually:
            case GenOp::Globally: {
                FormulaPtr f = take_at(pool, rng.next_below(pool.size()));
                if (op == GenOp::Not) f = make_not(std::move(f));
                else if (op == GenOp::Eventually) f = make_eventually(std::move(f));
                else f = make_globally(std::move(f));
                pool.push_back(std::move(f));
                ++unary_streak;
                break;
            }
            case GenOp::Or:
            case GenOp::And:
            case GenOp::Until: {
                FormulaPtr lhs = take_at(pool, rng.next_below(pool.size()));
                FormulaPtr rhs = take_at(pool, rng.next_below(pool.size()));
                FormulaPtr f;
                if (op == GenOp::Or) f = make_or(std::move(lhs), std::move(rhs));
                else if (op == GenOp::And) f = make_and(std::move(lhs), std::move(rhs));
                else f = make_until(std::move(lhs), std::move(rhs));
                pool.push_back(std::move(f));
                unary_streak = 0;
                break;
            }
        }
    }

    FormulaPtr result = std::move(pool.front());
    if (rng.next_u01() < 0.5) {
        if (stats) stats->wrapped = true;
        switch (rng.next_below(3)) {
            case 0: result = make_not(std::move(result)); break;
            case 1: result = make_eventually(std::move(result)); break;
            default: result = make_globally(std::move(result)); break;
        }
    }
    return result;
}

}  // namespace

FormulaPtr sample_formula(const FormulaGenConfig& cfg, FormulaGenStats* stats) {
    cfg.validate();
    Rng rng(cfg.seed);
    if (stats) *stats = FormulaGenStats{};
    return grow(cfg, rng, stats);
}

std::vector<FormulaPtr> sample_corpus(const FormulaGenConfig& cfg,
                                      std::size_t count) {
    cfg.validate();
    if (count == 0) {
        throw std::invalid_argument("sample_corpus: count must be >= 1");
    }
    std::vector<FormulaPtr> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        FormulaGenConfig per = cfg;
        per.seed = derive_stream(cfg.seed, i);
        out.push_back(sample_formula(per));
    }
    return out;
}

}  // namespace stlkern
