#include "stlkern/formula.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace stlkern {

namespace {

FormulaPtr finish(Formula node) {
    std::size_t count = 1;
    std::size_t depth = 0;
    if (node.left) {
        count += node.left->node_count;
        depth = node.left->depth;
    }
    if (node.right) {
        count += node.right->node_count;
        depth = std::max(depth, node.right->depth);
    }
    node.node_count = count;
    node.depth = depth + 1;
    return std::make_shared<const Formula>(std::move(node));
}

void check_window(const std::optional<TimeWindow>& w) {
    if (!w) return;
    if (!(w->lo >= 0.0) || !(w->lo < w->hi) || !std::isfinite(w->hi)) {
        throw std::invalid_argument("time window requires 0 <= lo < hi < inf");
    }
}

void check_child(const FormulaPtr& c, const char* who) {
    if (!c) throw std::invalid_argument(std::string(who) + ": null child");
}

}  // namespace

FormulaPtr make_true() {
    Formula node;
    node.kind = FormulaKind::True;
    return finish(std::move(node));
}

FormulaPtr make_atom(AtomPolarity polarity, double threshold) {
    if (!std::isfinite(threshold)) {
        throw std::invalid_argument("atom threshold must be finite");
    }
    Formula node;
    node.kind = FormulaKind::Atom;
    node.polarity = polarity;
    node.threshold = threshold;
    return finish(std::move(node));
}

FormulaPtr make_not(FormulaPtr child) {
    check_child(child, "not");
    Formula node;
    node.kind = FormulaKind::Not;
    node.left = std::move(child);
    return finish(std::move(node));
}

FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs) {
    check_child(lhs, "and");
    check_child(rhs, "and");
    Formula node;
    node.kind = FormulaKind::And;
    node.left = std::move(lhs);
    node.right = std::move(rhs);
    return finish(std::move(node));
}

FormulaPtr make_or(FormulaPtr lhs, FormulaPtr rhs) {
    check_child(lhs, "or");
    check_child(rhs, "or");
    Formula node;
    node.kind = FormulaKind::Or;
    node.left = std::move(lhs);
    node.right = std::move(rhs);
    return finish(std::move(node));
}

FormulaPtr make_until(FormulaPtr lhs, FormulaPtr rhs,
                      std::optional<TimeWindow> window) {
    check_child(lhs, "until");
    check_child(rhs, "until");
    check_window(window);
    Formula node;
    node.kind = FormulaKind::Until;
    node.left = std::move(lhs);
    node.right = std::move(rhs);
    node.window = window;
    return finish(std::move(node));
}

FormulaPtr make_eventually(FormulaPtr child, std::optional<TimeWindow> window) {
    check_child(child, "eventually");
    check_window(window);
    Formula node;
    node.kind = FormulaKind::Eventually;
    node.left = std::move(child);
    node.window = window;
    return finish(std::move(node));
}

FormulaPtr make_globally(FormulaPtr child, std::optional<TimeWindow> window) {
    check_child(child, "globally");
    check_window(window);
    Formula node;
    node.kind = FormulaKind::Globally;
    node.left = std::move(child);
    node.window = window;
    return finish(std::move(node));
}

bool equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case FormulaKind::True:
            return true;
        case FormulaKind::Atom:
            return a.polarity == b.polarity && a.threshold == b.threshold;
        case FormulaKind::Not:
            return equal(*a.left, *b.left);
        case FormulaKind::And:
        case FormulaKind::Or:
            return equal(*a.left, *b.left) && equal(*a.right, *b.right);
        case FormulaKind::Until:
            return a.window == b.window && equal(*a.left, *b.left) &&
                   equal(*a.right, *b.right);
        case FormulaKind::Eventually:
        case FormulaKind::Globally:
            return a.window == b.window && equal(*a.left, *b.left);
    }
    return false;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    return equal(*a, *b);
}

bool contains_true(const Formula& f) {
    if (f.kind == FormulaKind::True) return true;
    if (f.left && contains_true(*f.left)) return true;
    if (f.right && contains_true(*f.right)) return true;
    return false;
}

std::size_t atom_count(const Formula& f) {
    if (f.kind == FormulaKind::Atom) return 1;
    std::size_t n = 0;
    if (f.left) n += atom_count(*f.left);
    if (f.right) n += atom_count(*f.right);
    return n;
}

double max_abs_threshold(const Formula& f) {
    if (f.kind == FormulaKind::Atom) return std::fabs(f.threshold);
    double m = 0.0;
    if (f.left) m = std::max(m, max_abs_threshold(*f.left));
    if (f.right) m = std::max(m, max_abs_threshold(*f.right));
    return m;
}

namespace {

// Shortest text that parses back to the same double.
std::string format_number(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

std::string window_suffix(const std::optional<TimeWindow>& w) {
    if (!w) return "";
    return "[" + format_number(w->lo) + "," + format_number(w->hi) + "]";
}

void render(const Formula& f, std::string& out);

void render_operand(const Formula& f, std::string& out) {
    out += '(';
    render(f, out);
    out += ')';
}

void render(const Formula& f, std::string& out) {
    switch (f.kind) {
        case FormulaKind::True:
            out += "true";
            break;
        case FormulaKind::Atom:
            out += "x ";
            out += (f.polarity == AtomPolarity::GreaterEqual) ? ">=" : "<=";
            out += ' ';
            out += format_number(f.threshold);
            break;
        case FormulaKind::Not:
            out += "not ";
            render_operand(*f.left, out);
            break;
        case FormulaKind::And:
            render_operand(*f.left, out);
            out += " and ";
            render_operand(*f.right, out);
            break;
        case FormulaKind::Or:
            render_operand(*f.left, out);
            out += " or ";
            render_operand(*f.right, out);
            break;
        case FormulaKind::Until:
            render_operand(*f.left, out);
            out += " U";
            out += window_suffix(f.window);
            out += ' ';
            render_operand(*f.right, out);
            break;
        case FormulaKind::Eventually:
            out += 'F';
            out += window_suffix(f.window);
            out += ' ';
            render_operand(*f.left, out);
            break;
        case FormulaKind::Globally:
            out += 'G';
            out += window_suffix(f.window);
            out += ' ';
            render_operand(*f.left, out);
            break;
    }
}

}  // namespace

std::string print_formula(const Formula& f) {
    std::string out;
    out.reserve(f.node_count * 12);
    render(f, out);
    return out;
}

std::string print_formula(const FormulaPtr& f) {
    if (!f) throw std::invalid_argument("print_formula: null formula");
    return print_formula(*f);
}

}  // namespace stlkern
