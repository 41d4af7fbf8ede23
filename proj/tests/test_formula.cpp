#include <doctest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "stlkern/formula.hpp"
#include "stlkern/formula_gen.hpp"
#include "stlkern/parser.hpp"

using namespace stlkern;

TEST_SUITE("formula") {

TEST_CASE("factories fill node counts and depth") {
    const FormulaPtr atom = make_atom(AtomPolarity::GreaterEqual, 1.5);
    CHECK(atom->node_count == 1);
    CHECK(atom->depth == 1);

    const FormulaPtr f = make_until(make_not(atom), atom, TimeWindow{0.0, 5.0});
    CHECK(f->node_count == 4);
    CHECK(f->depth == 3);
    CHECK(f->is_temporal());
}

TEST_CASE("invalid construction is rejected") {
    CHECK_THROWS_AS(make_atom(AtomPolarity::LessEqual,
                              std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    const FormulaPtr a = make_atom(AtomPolarity::GreaterEqual, 0.0);
    CHECK_THROWS_AS(make_eventually(a, TimeWindow{3.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_eventually(a, TimeWindow{-1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_not(nullptr), std::invalid_argument);
}

TEST_CASE("printer canonical forms") {
    CHECK(print_formula(make_eventually(
              make_atom(AtomPolarity::GreaterEqual, 1.5))) == "F (x >= 1.5)");
    CHECK(print_formula(make_not(make_atom(AtomPolarity::LessEqual, 0.0))) ==
          "not (x <= 0)");
    CHECK(print_formula(make_until(make_atom(AtomPolarity::GreaterEqual, -1.4),
                                   make_atom(AtomPolarity::LessEqual, 2.0),
                                   TimeWindow{0.0, 5.0})) ==
          "(x >= -1.4) U[0,5] (x <= 2)");
    CHECK(print_formula(make_true()) == "true");
}

TEST_CASE("parser maps the reference examples") {
    const FormulaPtr f1 = parse_formula("F (x >= 1.5)");
    CHECK(f1->kind == FormulaKind::Eventually);
    CHECK_FALSE(f1->window.has_value());
    CHECK(f1->left->kind == FormulaKind::Atom);
    CHECK(f1->left->threshold == 1.5);

    const FormulaPtr f2 = parse_formula("not (x <= 0.7)");
    CHECK(f2->kind == FormulaKind::Not);
    CHECK(f2->left->polarity == AtomPolarity::LessEqual);
    CHECK(f2->left->threshold == 0.7);

    const FormulaPtr f3 = parse_formula("(x >= -1.4) U[0,5] (x <= 2)");
    CHECK(f3->kind == FormulaKind::Until);
    REQUIRE(f3->window.has_value());
    CHECK(f3->window->lo == 0.0);
    CHECK(f3->window->hi == 5.0);
    CHECK(f3->left->threshold == -1.4);
}

TEST_CASE("whitespace is irrelevant") {
    CHECK(equal(parse_formula("F(x>=1.5)"), parse_formula("F ( x >= 1.5 )")));
}

TEST_CASE("precedence: not > temporal > and > or") {
    // "x >= 1 and x <= 2 or x >= 3" == ((a and b) or c)
    const FormulaPtr f = parse_formula("x >= 1 and x <= 2 or x >= 3");
    CHECK(f->kind == FormulaKind::Or);
    CHECK(f->left->kind == FormulaKind::And);

    // F binds a whole until chain on its right: "F a U b" is F (a U b)?  No:
    // F's operand is unary-level, so "F x >= 1 U x <= 2" is (F a) U b.
    const FormulaPtr g = parse_formula("F x >= 1 U x <= 2");
    CHECK(g->kind == FormulaKind::Until);
    CHECK(g->left->kind == FormulaKind::Eventually);

    // U is right-associative
    const FormulaPtr u = parse_formula("x >= 1 U x >= 2 U x >= 3");
    CHECK(u->kind == FormulaKind::Until);
    CHECK(u->right->kind == FormulaKind::Until);

    // `not` does not swallow a bare temporal operand
    CHECK_THROWS_AS(parse_formula("not F (x >= 1)"), ParseError);
}

TEST_CASE("syntax errors carry offset and expectations") {
    try {
        parse_formula("F (x >= 1.5");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 11);  // end of input
        CHECK(!e.expected().empty());
    }

    try {
        parse_formula("x >= ");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 5);
        bool wants_number = false;
        for (const std::string& s : e.expected()) {
            if (s == "number") wants_number = true;
        }
        CHECK(wants_number);
    }

    CHECK_THROWS_AS(parse_formula("y >= 1"), ParseError);
    CHECK_THROWS_AS(parse_formula(""), ParseError);
    CHECK_THROWS_AS(parse_formula("x >= 1 x >= 2"), ParseError);
}

TEST_CASE("windows with lo >= hi are rejected at parse time") {
    CHECK_THROWS_AS(parse_formula("F[5,5] (x >= 1)"), ParseError);
    CHECK_THROWS_AS(parse_formula("F[6,2] (x >= 1)"), ParseError);
    CHECK_THROWS_AS(parse_formula("F[-1,2] (x >= 1)"), ParseError);
}

TEST_CASE("parse-print round trip on generated corpora") {
    FormulaGenConfig cfg;
    cfg.seed = 2024;
    const std::vector<FormulaPtr> corpus = sample_corpus(cfg, 1000);
    for (const FormulaPtr& f : corpus) {
        const std::string text = print_formula(f);
        CHECK(equal(parse_formula(text), f));
    }
}

TEST_CASE("parse-print round trip on windowed random trees") {
    Rng rng(77);
    for (int i = 0; i < 500; ++i) {
        const FormulaPtr f = testing::random_formula(rng, 4, true);
        CHECK(equal(parse_formula(print_formula(f)), f));
    }
}

TEST_CASE("structural queries") {
    const FormulaPtr f =
        parse_formula("(x >= 1) and (not (x <= -3.5) or true)");
    CHECK(contains_true(*f));
    CHECK(atom_count(*f) == 2);
    CHECK(max_abs_threshold(*f) == 3.5);
    CHECK_FALSE(contains_true(*parse_formula("x >= 1")));
}

}  // TEST_SUITE
