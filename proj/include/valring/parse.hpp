#pragma once

// Lexer and expression parser shared by the series, residue and formula
// grammars. Expressions evaluate to XPoly; narrower readers (series, residue
// elements) check the shape of the result.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "valring/errors.hpp"
#include "valring/xpoly.hpp"

namespace valring {

namespace parse_detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Eq, Le, And, Or, Bang, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string text, int c) { out.push_back({k, std::move(text), line, c}); };
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            ++col;
            continue;
        }
        int start = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            push(Tok::Number, std::string(src.substr(i, j - i)), start);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            push(Tok::Ident, std::string(src.substr(i, j - i)), start);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (ch == '<' && i + 1 < src.size() && src[i + 1] == '=') {
            push(Tok::Le, "<=", start);
            i += 2;
            col += 2;
            continue;
        }
        Tok k;
        switch (ch) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '=': k = Tok::Eq; break;
        case '&': k = Tok::And; break;
        case '|': k = Tok::Or; break;
        case '!': k = Tok::Bang; break;
        default: throw SyntaxError(line, start, std::string("unexpected character '") + ch + "'");
        }
        push(k, std::string(1, ch), start);
        ++i;
        ++col;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

/// Index of x / x<k> (0-based), or -1.
inline long x_index(const std::string& id) {
    if (id == "x") return 0;
    if (id.size() > 1 && id[0] == 'x' && std::all_of(id.begin() + 1, id.end(), ::isdigit) && id[1] != '0')
        return std::stol(id.substr(1)) - 1;
    return -1;
}

/// 1-based tower index of u<k>, or 0.
inline std::size_t u_index(const std::string& id) {
    if (id.size() > 1 && id[0] == 'u' && std::all_of(id.begin() + 1, id.end(), ::isdigit) && id[1] != '0')
        return static_cast<std::size_t>(std::stoul(id.substr(1)));
    return 0;
}

class Cursor {
public:
    explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        next();
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) error(std::string("expected ") + what);
        return next();
    }
    [[noreturn]] void error(const std::string& msg) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(t.line, t.column, msg + ", found " + found);
    }

    std::size_t pos() const { return pos_; }
    void reset(std::size_t p) { pos_ = p; }

    // expr := ['+'|'-'] term { ('+'|'-') term }
    XPoly expr() {
        XPoly acc;
        bool neg = false;
        if (accept(Tok::Minus)) neg = true;
        else accept(Tok::Plus);
        acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (accept(Tok::Plus)) acc += term();
            else if (accept(Tok::Minus)) acc -= term();
            else return acc;
        }
    }

private:
    // term := factor { ('*'|'/') factor }
    XPoly term() {
        XPoly acc = factor();
        for (;;) {
            if (accept(Tok::Star)) {
                acc *= factor();
            } else if (peek().kind == Tok::Slash) {
                const Token& at = next();
                acc *= invert(factor(), at);
            } else {
                return acc;
            }
        }
    }

    // factor := primary [ '^' ['-'] NUMBER ]
    XPoly factor() {
        XPoly base = primary();
        if (peek().kind != Tok::Caret) return base;
        const Token& at = next();
        bool neg = accept(Tok::Minus);
        const Token& n = expect(Tok::Number, "integer exponent");
        unsigned long e = std::stoul(n.text);
        if (e > 100000) throw SyntaxError(n.line, n.column, "exponent too large");
        XPoly p = base.pow(static_cast<unsigned>(e));
        return neg ? invert(p, at) : p;
    }

    XPoly primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Number: {
            next();
            return XPoly(Series(ResidueElem(Rational(t.text))));
        }
        case Tok::LParen: {
            next();
            XPoly e = expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::Ident: {
            if (t.text == "t") {
                next();
                return XPoly(Series::monomial(1, 1));
            }
            if (t.text == "O") return big_o();
            if (long xi = x_index(t.text); xi >= 0) {
                next();
                return XPoly::var(static_cast<std::size_t>(xi));
            }
            if (std::size_t ui = u_index(t.text); ui > 0) {
                next();
                return XPoly(Series(ResidueElem::u(ui)));
            }
            error("unknown identifier");
        }
        default: error("expected a term");
        }
    }

    // 'O' '(' 't' [ '^' ['-'] NUMBER ] ')'
    XPoly big_o() {
        next();
        expect(Tok::LParen, "'(' after O");
        const Token& tt = peek();
        if (tt.kind != Tok::Ident || tt.text != "t") error("expected 't' inside O(...)");
        next();
        long n = 1;
        if (accept(Tok::Caret)) {
            bool neg = accept(Tok::Minus);
            n = std::stol(expect(Tok::Number, "integer exponent").text);
            if (neg) n = -n;
        }
        expect(Tok::RParen, "')'");
        return XPoly(Series::big_o(n));
    }

    static XPoly invert(const XPoly& d, const Token& at) {
        if (d.is_constant()) {
            Series s = d.constant_term();
            if (s.is_exact_monomial()) {
                long k = *s.first_nonzero();
                return XPoly(Series::monomial(s.coeff(k).inverse(), -k));
            }
        }
        throw SyntaxError(at.line, at.column, "can only divide by a nonzero exact monomial c*t^k");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace parse_detail

/// Parses a polynomial in x (or x1, ..., xm) with series coefficients.
inline XPoly parse_xpoly(std::string_view text) {
    parse_detail::Cursor c(parse_detail::lex(text));
    XPoly p = c.expr();
    if (c.peek().kind != parse_detail::Tok::End) c.error("unexpected trailing input");
    return p;
}

/// Series literal: sum of c*t^k terms with an optional trailing O(t^N).
inline Series parse_series(std::string_view text) {
    XPoly p = parse_xpoly(text);
    if (!p.is_constant()) fail(ErrorKind::InvalidArgument, "series literal mentions x");
    return p.constant_term();
}

/// Residue field element: arithmetic expression over rationals and u-variables.
inline ResidueElem parse_residue(std::string_view text) {
    Series s = parse_series(text);
    if (!s.is_exact() || (!s.is_exact_zero() && (s.stored().size() != 1 || s.offset() != 0)))
        fail(ErrorKind::InvalidArgument, "residue literal must not mention t");
    return s.is_exact_zero() ? ResidueElem(0) : s.stored()[0];
}

} // namespace valring
