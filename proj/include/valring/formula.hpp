#pragma once

// Quantifier-free formulas over the valued-field language: atoms f = 0,
// v(f) <= v(g), P_n(f), N(f), closed under !, &, |.

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "valring/parse.hpp"

namespace valring {

struct Atomic {
    enum class Kind { Eq, Div, Pn, Nv };

    Kind kind = Kind::Eq;
    XPoly f;
    XPoly g;    // Div only
    long n = 0; // Pn only

    static Atomic eq(XPoly f) { return {Kind::Eq, std::move(f), {}, 0}; }
    static Atomic div(XPoly f, XPoly g) { return {Kind::Div, std::move(f), std::move(g), 0}; }
    static Atomic pn(long n, XPoly f) {
        if (n < 1) fail(ErrorKind::InvalidArgument, "P_n needs n >= 1");
        return {Kind::Pn, std::move(f), {}, n};
    }
    static Atomic nv(XPoly f) { return {Kind::Nv, std::move(f), {}, 0}; }

    std::size_t arity() const { return std::max(f.arity(), g.arity()); }

    bool operator==(const Atomic& o) const { return kind == o.kind && n == o.n && f == o.f && g == o.g; }
};

class Formula {
public:
    enum class Op { Atom, Not, And, Or };

    static Formula atom(Atomic a) {
        Formula f(Op::Atom);
        f.atom_ = std::make_shared<const Atomic>(std::move(a));
        return f;
    }
    static Formula negation(Formula a) {
        Formula f(Op::Not);
        f.args_.push_back(std::move(a));
        return f;
    }
    static Formula conj(std::vector<Formula> args) { return nary(Op::And, std::move(args)); }
    static Formula disj(std::vector<Formula> args) { return nary(Op::Or, std::move(args)); }

    Op op() const { return op_; }
    const Atomic& atomic() const { return *atom_; }
    const std::vector<Formula>& args() const { return args_; }

    std::size_t arity() const {
        if (op_ == Op::Atom) return atom_->arity();
        std::size_t a = 0;
        for (const auto& x : args_) a = std::max(a, x.arity());
        return a;
    }

    template <typename F>
    void for_each_atom(F&& fn) const {
        if (op_ == Op::Atom) fn(*atom_);
        for (const auto& x : args_) x.for_each_atom(fn);
    }

    template <typename F>
    Formula map_atoms(F&& fn) const {
        if (op_ == Op::Atom) return atom(fn(*atom_));
        Formula r(op_);
        for (const auto& x : args_) r.args_.push_back(x.map_atoms(fn));
        return r;
    }

    bool operator==(const Formula& o) const {
        if (op_ != o.op_) return false;
        if (op_ == Op::Atom) return *atom_ == *o.atom_;
        return args_ == o.args_;
    }
    bool operator!=(const Formula& o) const { return !(*this == o); }

private:
    explicit Formula(Op op) : op_(op) {}
    static Formula nary(Op op, std::vector<Formula> args) {
        if (args.empty()) fail(ErrorKind::InvalidArgument, "connective needs arguments");
        if (args.size() == 1) return std::move(args.front());
        Formula f(op);
        f.args_ = std::move(args);
        return f;
    }

    Op op_;
    std::shared_ptr<const Atomic> atom_;
    std::vector<Formula> args_;
};

/// An atom of kind Eq, Div or Pn, possibly negated.
struct Literal {
    Atomic atomic;
    bool negated = false;
};

// ---------------------------------------------------------------------------
// Parsing and printing

namespace parse_detail {

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : c_(lex(text)) {}

    Formula parse() {
        Formula f = disj();
        if (c_.peek().kind != Tok::End) c_.error("unexpected trailing input");
        return f;
    }

private:
    Formula disj() {
        std::vector<Formula> xs{conj()};
        while (c_.accept(Tok::Or)) xs.push_back(conj());
        return Formula::disj(std::move(xs));
    }
    Formula conj() {
        std::vector<Formula> xs{unary()};
        while (c_.accept(Tok::And)) xs.push_back(unary());
        return Formula::conj(std::move(xs));
    }
    Formula unary() {
        if (c_.accept(Tok::Bang)) return Formula::negation(unary());
        if (c_.peek().kind == Tok::LParen) {
            // Either a parenthesized formula or an atom whose polynomial starts with '('.
            std::size_t start = c_.pos();
            try {
                c_.next();
                Formula f = disj();
                c_.expect(Tok::RParen, "')'");
                return f;
            } catch (const SyntaxError& first) {
                c_.reset(start);
                try {
                    return atomic();
                } catch (const SyntaxError& second) {
                    bool first_further = first.line() > second.line() ||
                                         (first.line() == second.line() && first.column() >= second.column());
                    if (first_further) throw first;
                    throw;
                }
            }
        }
        return atomic();
    }

    XPoly paren_poly() {
        c_.expect(Tok::LParen, "'('");
        XPoly p = c_.expr();
        c_.expect(Tok::RParen, "')'");
        return p;
    }

    Formula atomic() {
        const Token& t = c_.peek();
        if (t.kind == Tok::Ident && c_.peek(1).kind == Tok::LParen) {
            if (t.text == "v") {
                c_.next();
                XPoly f = paren_poly();
                c_.expect(Tok::Le, "'<='");
                const Token& v2 = c_.peek();
                if (v2.kind != Tok::Ident || v2.text != "v") c_.error("expected 'v('");
                c_.next();
                XPoly g = paren_poly();
                return Formula::atom(Atomic::div(std::move(f), std::move(g)));
            }
            if (t.text == "N") {
                c_.next();
                return Formula::atom(Atomic::nv(paren_poly()));
            }
            if (t.text.rfind("P_", 0) == 0) {
                std::string digits = t.text.substr(2);
                if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || std::stol(digits) < 1)
                    c_.error("expected P_n with n >= 1");
                long n = std::stol(digits);
                c_.next();
                return Formula::atom(Atomic::pn(n, paren_poly()));
            }
        }
        XPoly f = c_.expr();
        c_.expect(Tok::Eq, "'=' or '<='");
        const Token& z = c_.peek();
        if (z.kind != Tok::Number || Rational(z.text) != 0) c_.error("expected '0' after '='");
        c_.next();
        return Formula::atom(Atomic::eq(std::move(f)));
    }

    Cursor c_;
};

} // namespace parse_detail

inline Formula parse_formula(std::string_view text) { return parse_detail::FormulaParser(text).parse(); }

inline std::string to_string(const Atomic& a, bool indexed = false) {
    switch (a.kind) {
    case Atomic::Kind::Eq: return a.f.to_string(indexed) + " = 0";
    case Atomic::Kind::Div: return "v(" + a.f.to_string(indexed) + ") <= v(" + a.g.to_string(indexed) + ")";
    case Atomic::Kind::Pn: return "P_" + std::to_string(a.n) + "(" + a.f.to_string(indexed) + ")";
    case Atomic::Kind::Nv: return "N(" + a.f.to_string(indexed) + ")";
    }
    return {};
}

namespace detail {
inline std::string print_formula(const Formula& f, bool indexed) {
    using Op = Formula::Op;
    auto child = [&](const Formula& c) {
        std::string s = print_formula(c, indexed);
        return c.op() == Op::And || c.op() == Op::Or ? "(" + s + ")" : s;
    };
    switch (f.op()) {
    case Op::Atom: return to_string(f.atomic(), indexed);
    case Op::Not: {
        const Formula& a = f.args()[0];
        bool bare = a.op() == Op::Not ||
                    (a.op() == Op::Atom && (a.atomic().kind == Atomic::Kind::Pn || a.atomic().kind == Atomic::Kind::Nv));
        std::string s = print_formula(a, indexed);
        return bare ? "!" + s : "!(" + s + ")";
    }
    case Op::And:
    case Op::Or: {
        std::string sep = f.op() == Op::And ? " & " : " | ";
        std::string s;
        for (const auto& c : f.args()) s += (s.empty() ? "" : sep) + child(c);
        return s;
    }
    }
    return {};
}
} // namespace detail

/// Canonical text in the input grammar; parse_formula(to_string(f)) == f.
inline std::string to_string(const Formula& f) { return detail::print_formula(f, f.arity() > 1); }

inline nlohmann::ordered_json to_json(const Formula& f) {
    using Op = Formula::Op;
    nlohmann::ordered_json j;
    bool indexed = f.arity() > 1;
    std::function<nlohmann::ordered_json(const Formula&)> rec = [&](const Formula& g) {
        nlohmann::ordered_json out;
        if (g.op() == Op::Atom) {
            const Atomic& a = g.atomic();
            switch (a.kind) {
            case Atomic::Kind::Eq: out["atom"] = "eq"; break;
            case Atomic::Kind::Div: out["atom"] = "div"; break;
            case Atomic::Kind::Pn:
                out["atom"] = "pn";
                out["n"] = a.n;
                break;
            case Atomic::Kind::Nv: out["atom"] = "n"; break;
            }
            out["f"] = a.f.to_string(indexed);
            if (a.kind == Atomic::Kind::Div) out["g"] = a.g.to_string(indexed);
            return out;
        }
        out["op"] = g.op() == Op::Not ? "not" : (g.op() == Op::And ? "and" : "or");
        out["args"] = nlohmann::ordered_json::array();
        for (const auto& c : g.args()) out["args"].push_back(rec(c));
        return out;
    };
    j = rec(f);
    return j;
}

// ---------------------------------------------------------------------------
// Normalization and substitution

namespace detail {
inline Formula nnf(const Formula& f, bool negate) {
    using Op = Formula::Op;
    switch (f.op()) {
    case Op::Atom: {
        const Atomic& a = f.atomic();
        if (a.kind == Atomic::Kind::Nv) {
            XPoly t(Series::monomial(1, 1));
            Formula both = Formula::conj({Formula::atom(Atomic::div(t, a.f)), Formula::atom(Atomic::div(a.f, t))});
            return nnf(both, negate);
        }
        return negate ? Formula::negation(f) : f;
    }
    case Op::Not: return nnf(f.args()[0], !negate);
    case Op::And:
    case Op::Or: {
        std::vector<Formula> xs;
        for (const auto& c : f.args()) xs.push_back(nnf(c, negate));
        bool is_and = (f.op() == Op::And) != negate;
        return is_and ? Formula::conj(std::move(xs)) : Formula::disj(std::move(xs));
    }
    }
    return f;
}
} // namespace detail

/// Negation normal form over literals of kinds Eq, Div, Pn; N(f) is rewritten
/// as v(t) <= v(f) & v(f) <= v(t).
inline Formula normalize(const Formula& phi) { return detail::nnf(phi, false); }

/// Collects the literals of a formula in negation normal form.
inline std::vector<Literal> literals(const Formula& nnf) {
    using Op = Formula::Op;
    std::vector<Literal> out;
    std::function<void(const Formula&)> rec = [&](const Formula& f) {
        if (f.op() == Op::Atom) out.push_back({f.atomic(), false});
        else if (f.op() == Op::Not && f.args()[0].op() == Op::Atom) out.push_back({f.args()[0].atomic(), true});
        else
            for (const auto& c : f.args()) rec(c);
    };
    rec(nnf);
    return out;
}

/// Composes every polynomial with x_i -> images[i].
inline Formula substitute(const Formula& phi, const std::vector<XPoly>& images) {
    return phi.map_atoms([&](const Atomic& a) {
        Atomic b = a;
        b.f = a.f.compose(images);
        if (a.kind == Atomic::Kind::Div) b.g = a.g.compose(images);
        return b;
    });
}

// ---------------------------------------------------------------------------
// Three-valued evaluation

enum class Truth { False, True, Unknown };

inline const char* to_string(Truth t) {
    switch (t) {
    case Truth::False: return "False";
    case Truth::True: return "True";
    case Truth::Unknown: return "Unknown";
    }
    return "";
}

inline Truth truth_of(bool b) { return b ? Truth::True : Truth::False; }

namespace detail {

// Valuation of an evaluated value: exact when decided, else a lower bound.
struct ValInfo {
    bool known;
    Valuation v;
};

inline ValInfo val_info(const Series& s) {
    if (auto f = s.first_nonzero()) return {true, *f};
    if (s.is_exact()) return {true, Valuation::infinity()};
    return {false, *s.prec()};
}

inline Truth eval_atomic(const Atomic& a, const std::vector<Series>& point) {
    ValInfo fv = val_info(a.f.eval(point));
    switch (a.kind) {
    case Atomic::Kind::Eq:
        if (!fv.known) return Truth::Unknown;
        return truth_of(fv.v.is_infinite());
    case Atomic::Kind::Div: {
        ValInfo gv = val_info(a.g.eval(point));
        if (fv.known && gv.known) return truth_of(fv.v <= gv.v);
        if (fv.known && fv.v <= gv.v) return Truth::True;  // v(g) >= bound >= v(f)
        if (gv.known && fv.v > gv.v) return Truth::False;  // v(f) >= bound > v(g)
        return Truth::Unknown;
    }
    case Atomic::Kind::Pn:
        if (!fv.known) return Truth::Unknown;
        if (fv.v.is_infinite()) return Truth::True; // 0 = 0^n
        return truth_of(fv.v.value() % a.n == 0);
    case Atomic::Kind::Nv:
        if (!fv.known) return fv.v > Valuation(1) ? Truth::False : Truth::Unknown;
        return truth_of(fv.v == Valuation(1));
    }
    return Truth::Unknown;
}

} // namespace detail

namespace detail {
inline Truth eval_rec(const Formula& phi, const std::vector<Series>& point) {
    using Op = Formula::Op;
    switch (phi.op()) {
    case Op::Atom: return eval_atomic(phi.atomic(), point);
    case Op::Not: {
        Truth t = eval_rec(phi.args()[0], point);
        return t == Truth::Unknown ? t : truth_of(t == Truth::False);
    }
    case Op::And: {
        Truth acc = Truth::True;
        for (const auto& c : phi.args()) {
            Truth t = eval_rec(c, point);
            if (t == Truth::False) return t;
            if (t == Truth::Unknown) acc = t;
        }
        return acc;
    }
    case Op::Or: {
        Truth acc = Truth::False;
        for (const auto& c : phi.args()) {
            Truth t = eval_rec(c, point);
            if (t == Truth::True) return t;
            if (t == Truth::Unknown) acc = t;
        }
        return acc;
    }
    }
    return Truth::Unknown;
}
} // namespace detail

/// Truth value at a point of C((t))^m, Kleene logic over Unknown.
inline Truth evaluate(const Formula& phi, const std::vector<Series>& point) {
    if (point.size() < phi.arity())
        fail(ErrorKind::ArityMismatch, "formula has " + std::to_string(phi.arity()) + " variables, point has " +
                                           std::to_string(point.size()));
    return detail::eval_rec(phi, point);
}

inline Truth evaluate(const Formula& phi, const Series& a) { return evaluate(phi, std::vector<Series>{a}); }

} // namespace valring
