#include <gtest/gtest.h>

#include "valring/valring.hpp"

using namespace valring;

namespace {

XPoly X(const char* s) { return parse_xpoly(s); }
Formula A(Atomic a) { return Formula::atom(std::move(a)); }
Formula Not(Formula f) { return Formula::negation(std::move(f)); }
const Series u1(ResidueElem::u(1));

bool is_nnf(const Formula& f) {
    switch (f.op()) {
    case Formula::Op::Atom: return f.atomic().kind != Atomic::Kind::Nv;
    case Formula::Op::Not: return f.args()[0].op() == Formula::Op::Atom && f.args()[0].atomic().kind != Atomic::Kind::Nv;
    default:
        for (const auto& c : f.args())
            if (!is_nnf(c)) return false;
        return true;
    }
}

} // namespace

TEST(Parse, Atoms) {
    EXPECT_EQ(parse_formula("x = 0"), A(Atomic::eq(X("x"))));
    EXPECT_EQ(parse_formula("v(t*x+1) <= v(t) & !P_2(x)"),
              Formula::conj({A(Atomic::div(X("t*x+1"), X("t"))), Not(A(Atomic::pn(2, X("x"))))}));
    EXPECT_EQ(parse_formula("N(x^2 - t)"), A(Atomic::nv(X("x^2 - t"))));
    EXPECT_EQ(parse_formula("(x = 0 | x - 1 = 0)"),
              Formula::disj({A(Atomic::eq(X("x"))), A(Atomic::eq(X("x - 1")))}));
}

TEST(Parse, PrecedenceAndParentheses) {
    Formula f = parse_formula("x = 0 | x - 1 = 0 & P_3(x)");
    ASSERT_EQ(f.op(), Formula::Op::Or);
    EXPECT_EQ(f.args()[1].op(), Formula::Op::And);
    Formula g = parse_formula("(x + 1)*(x - 1) = 0");
    EXPECT_EQ(g, A(Atomic::eq(X("x^2 - 1"))));
    EXPECT_EQ(parse_formula("!(x = 0 & P_2(x))").op(), Formula::Op::Not);
}

TEST(Parse, SyntaxErrorPosition) {
    try {
        parse_formula("v(x");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 1);
        EXPECT_EQ(e.column(), 4);
    }
    EXPECT_THROW(parse_formula("x = "), SyntaxError);
    EXPECT_THROW(parse_formula("P_0(x)"), Error);
    EXPECT_THROW(parse_formula("x = 0 &"), SyntaxError);
}

TEST(Print, Canonical) {
    EXPECT_EQ(to_string(parse_formula("P_2(x) & !(x=0)")), "P_2(x) & !(x = 0)");
    EXPECT_EQ(to_string(parse_formula("!P_2(x)")), "!P_2(x)");
    EXPECT_EQ(to_string(parse_formula("v(x1) <= v(x2 + t)")), "v(x1) <= v(x2 + t)");
}

TEST(Print, Json) {
    auto j = to_json(parse_formula("v(x) <= v(t) & !P_2(x)"));
    EXPECT_EQ(j.dump(), R"({"op":"and","args":[{"atom":"div","f":"x","g":"t"},{"op":"not","args":[{"atom":"pn","n":2,"f":"x"}]}]})");
}

TEST(Print, RoundTripOnCorpus) {
    Rng rng(101);
    CorpusConfig cfg;
    for (const auto& phi : gen::corpus(rng, cfg, 150)) EXPECT_EQ(parse_formula(to_string(phi)), phi) << to_string(phi);
    for (int i = 0; i < 50; ++i) {
        Formula phi = gen::multi_atom(rng, cfg, 2);
        EXPECT_EQ(parse_formula(to_string(phi)), phi) << to_string(phi);
    }
}

TEST(Normalize, Examples) {
    XPoly t = X("t"), x = X("x");
    EXPECT_EQ(normalize(parse_formula("N(x)")), Formula::conj({A(Atomic::div(t, x)), A(Atomic::div(x, t))}));
    Formula a = A(Atomic::eq(x)), b = A(Atomic::pn(2, x));
    EXPECT_EQ(normalize(Not(Formula::conj({a, b}))), Formula::disj({Not(a), Not(b)}));
    EXPECT_EQ(normalize(Not(Not(a))), a);
}

TEST(Normalize, PreservesTruth) {
    Rng rng(7);
    CorpusConfig cfg;
    for (const auto& phi : gen::corpus(rng, cfg, 100)) {
        Formula n = normalize(phi);
        EXPECT_TRUE(is_nnf(n)) << to_string(phi);
        for (int i = 0; i < 5; ++i) {
            Series a = random_point(rng);
            EXPECT_EQ(evaluate(phi, a), evaluate(n, a)) << to_string(phi) << " at " << a.to_string();
        }
        EXPECT_EQ(evaluate(phi, u1), evaluate(n, u1));
    }
}

TEST(Substitute, Examples) {
    Formula eq = A(Atomic::eq(X("x")));
    EXPECT_EQ(substitute(eq, {X("x + 1")}), A(Atomic::eq(X("x + 1"))));
    XPoly ux = XPoly(u1) * XPoly::var(0);
    EXPECT_EQ(substitute(A(Atomic::pn(2, X("x"))), {ux}), A(Atomic::pn(2, ux)));
    EXPECT_EQ(substitute(A(Atomic::div(X("x"), X("t"))), {X("t*x")}), A(Atomic::div(X("t*x"), X("t"))));
}

TEST(Substitute, CommutesWithEvaluation) {
    Rng rng(13);
    CorpusConfig cfg;
    for (const auto& phi : gen::corpus(rng, cfg, 60)) {
        XPoly img = XPoly(gen::unit(rng, cfg)) * XPoly::var(0) + XPoly(gen::o_element(rng, cfg));
        Formula psi = substitute(phi, {img});
        for (int i = 0; i < 3; ++i) {
            Series a = random_point(rng);
            EXPECT_EQ(evaluate(psi, a), evaluate(phi, img.eval({a}))) << to_string(phi);
        }
    }
}

TEST(Evaluate, Examples) {
    EXPECT_EQ(evaluate(parse_formula("x^2 - 1 = 0"), Series(1)), Truth::True);
    EXPECT_EQ(evaluate(parse_formula("v(t) <= v(x)"), u1), Truth::False);
    EXPECT_EQ(evaluate(parse_formula("P_2(x)"), parse_series("t^3")), Truth::False);
    EXPECT_EQ(evaluate(parse_formula("N(x)"), parse_series("t")), Truth::True);
    EXPECT_EQ(evaluate(parse_formula("x = 0"), Series(0)), Truth::True);
    EXPECT_EQ(evaluate(parse_formula("P_3(x)"), Series(0)), Truth::True);
    EXPECT_EQ(evaluate(parse_formula("v(x) <= v(0)"), parse_series("t^-4")), Truth::True);
    EXPECT_EQ(evaluate(parse_formula("v(0) <= v(x)"), parse_series("t")), Truth::False);
}

TEST(Evaluate, ThreeValued) {
    Series approx = parse_series("t + O(t^3)");
    EXPECT_EQ(evaluate(parse_formula("x = 0"), approx), Truth::False);
    EXPECT_EQ(evaluate(parse_formula("x = 0"), parse_series("O(t^3)")), Truth::Unknown);
    EXPECT_EQ(evaluate(parse_formula("x = 0 | x - t = 0"), parse_series("O(t^3)")), Truth::Unknown);
    EXPECT_EQ(evaluate(parse_formula("x = 0 | v(1) <= v(1)"), parse_series("O(t^3)")), Truth::True);
    EXPECT_EQ(evaluate(parse_formula("x = 0 & v(1) <= v(t^-1)"), parse_series("O(t^3)")), Truth::False);
}

TEST(Evaluate, ArityMismatch) {
    try {
        evaluate(parse_formula("v(x1) <= v(x2)"), Series(1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ArityMismatch);
    }
    EXPECT_EQ(evaluate(parse_formula("v(x1) <= v(x2)"), {Series(1), parse_series("t")}), Truth::True);
}

TEST(Evaluate, ExactPointsAreDecided) {
    Rng rng(19);
    CorpusConfig cfg;
    for (const auto& phi : gen::corpus(rng, cfg, 100))
        for (int i = 0; i < 5; ++i) EXPECT_NE(evaluate(phi, random_point(rng)), Truth::Unknown) << to_string(phi);
}
