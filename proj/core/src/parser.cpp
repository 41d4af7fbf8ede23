#include "stlkern/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace stlkern {

namespace {

enum class Tok : unsigned char {
    End,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    True,
    Not,
    And,
    Or,
    Until,
    Eventually,
    Globally,
    Signal,  // "x"
    Ge,
    Le,
    Number,
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::End: return "end of input";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Comma: return "','";
        case Tok::True: return "'true'";
        case Tok::Not: return "'not'";
        case Tok::And: return "'and'";
        case Tok::Or: return "'or'";
        case Tok::Until: return "'U'";
        case Tok::Eventually: return "'F'";
        case Tok::Globally: return "'G'";
        case Tok::Signal: return "'x'";
        case Tok::Ge: return "'>='";
        case Tok::Le: return "'<='";
        case Tok::Number: return "number";
    }
    return "?";
}

struct Token {
    Tok kind = Tok::End;
    std::size_t offset = 0;
    double value = 0.0;  // Tok::Number only
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    [[noreturn]] void fail(std::size_t at, const std::string& what) {
        throw ParseError("syntax error at byte " + std::to_string(at) + ": " + what,
                         at, {});
    }

    void advance() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        current_.offset = pos_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::End;
            return;
        }
        const char c = text_[pos_];
        switch (c) {
            case '(': current_.kind = Tok::LParen; ++pos_; return;
            case ')': current_.kind = Tok::RParen; ++pos_; return;
            case '[': current_.kind = Tok::LBracket; ++pos_; return;
            case ']': current_.kind = Tok::RBracket; ++pos_; return;
            case ',': current_.kind = Tok::Comma; ++pos_; return;
            case 'U': current_.kind = Tok::Until; ++pos_; return;
            case 'F': current_.kind = Tok::Eventually; ++pos_; return;
            case 'G': current_.kind = Tok::Globally; ++pos_; return;
            default: break;
        }
        if (c == '>' || c == '<') {
            if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '=') {
                fail(pos_, std::string("stray '") + c + "', expected '" + c + "='");
            }
            current_.kind = (c == '>') ? Tok::Ge : Tok::Le;
            pos_ += 2;
            return;
        }
        if (c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   std::isalpha(static_cast<unsigned char>(text_[end]))) {
                ++end;
            }
            const std::string_view word = text_.substr(pos_, end - pos_);
            if (word == "true") current_.kind = Tok::True;
            else if (word == "not") current_.kind = Tok::Not;
            else if (word == "and") current_.kind = Tok::And;
            else if (word == "or") current_.kind = Tok::Or;
            else if (word == "x") current_.kind = Tok::Signal;
            else fail(pos_, "unknown word '" + std::string(word) + "'");
            pos_ = end;
            return;
        }
        fail(pos_, std::string("unexpected character '") + c + "'");
    }

    void lex_number() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr == begin || !std::isfinite(value)) {
            fail(pos_, "malformed number");
        }
        current_.kind = Tok::Number;
        current_.value = value;
        pos_ += static_cast<std::size_t>(ptr - begin);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token current_;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    FormulaPtr parse() {
        FormulaPtr f = parse_or();
        expect(Tok::End);
        return f;
    }

private:
    [[noreturn]] void unexpected(std::vector<Tok> wanted) {
        const Token& t = lex_.peek();
        std::vector<std::string> expected;
        expected.reserve(wanted.size());
        std::ostringstream msg;
        msg << "syntax error at byte " << t.offset << ": unexpected "
            << tok_name(t.kind) << ", expected ";
        for (std::size_t i = 0; i < wanted.size(); ++i) {
            if (i) msg << " | ";
            msg << tok_name(wanted[i]);
            expected.emplace_back(tok_name(wanted[i]));
        }
        throw ParseError(msg.str(), t.offset, std::move(expected));
    }

    Token expect(Tok kind) {
        if (lex_.peek().kind != kind) unexpected({kind});
        return lex_.take();
    }

    bool accept(Tok kind) {
        if (lex_.peek().kind != kind) return false;
        lex_.take();
        return true;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (accept(Tok::Or)) f = make_or(std::move(f), parse_and());
        return f;
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_until();
        while (accept(Tok::And)) f = make_and(std::move(f), parse_until());
        return f;
    }

    FormulaPtr parse_until() {
        FormulaPtr lhs = parse_unary();
        if (!accept(Tok::Until)) return lhs;
        auto window = parse_window_opt();
        return make_until(std::move(lhs), parse_until(), window);
    }

    FormulaPtr parse_unary() {
        if (lex_.peek().kind == Tok::Eventually) {
            lex_.take();
            auto window = parse_window_opt();
            return make_eventually(parse_unary(), window);
        }
        if (lex_.peek().kind == Tok::Globally) {
            lex_.take();
            auto window = parse_window_opt();
            return make_globally(parse_unary(), window);
        }
        return parse_not();
    }

    FormulaPtr parse_not() {
        if (accept(Tok::Not)) return make_not(parse_not());
        return parse_primary();
    }

    FormulaPtr parse_primary() {
        switch (lex_.peek().kind) {
            case Tok::True:
                lex_.take();
                return make_true();
            case Tok::Signal:
                return parse_atom();
            case Tok::LParen: {
                lex_.take();
                FormulaPtr f = parse_or();
                expect(Tok::RParen);
                return f;
            }
            default:
                unexpected({Tok::True, Tok::Signal, Tok::Not, Tok::Eventually,
                            Tok::Globally, Tok::LParen});
        }
    }

    FormulaPtr parse_atom() {
        expect(Tok::Signal);
        AtomPolarity polarity;
        if (accept(Tok::Ge)) {
            polarity = AtomPolarity::GreaterEqual;
        } else if (accept(Tok::Le)) {
            polarity = AtomPolarity::LessEqual;
        } else {
            unexpected({Tok::Ge, Tok::Le});
        }
        const Token num = expect(Tok::Number);
        return make_atom(polarity, num.value);
    }

    std::optional<TimeWindow> parse_window_opt() {
        if (lex_.peek().kind != Tok::LBracket) return std::nullopt;
        const Token open = lex_.take();
        const Token lo = expect(Tok::Number);
        expect(Tok::Comma);
        const Token hi = expect(Tok::Number);
        expect(Tok::RBracket);
        if (!(lo.value >= 0.0) || !(lo.value < hi.value)) {
            throw ParseError("syntax error at byte " + std::to_string(open.offset) +
                                 ": window must satisfy 0 <= lo < hi",
                             open.offset, {});
        }
        return TimeWindow{lo.value, hi.value};
    }

    Lexer lex_;
};

}  // namespace

ParseError::ParseError(std::string message, std::size_t byte_offset,
                       std::vector<std::string> expected)
    : std::runtime_error(std::move(message)),
      offset_(byte_offset),
      expected_(std::move(expected)) {}

FormulaPtr parse_formula(std::string_view text) {
    return Parser(text).parse();
}

}  // namespace stlkern
