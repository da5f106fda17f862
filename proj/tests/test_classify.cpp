#include <optional>

#include <gtest/gtest.h>

#include "valring/valring.hpp"

using namespace valring;

namespace {

KPoly F(const char* s) { return parse_xpoly(s).to_kpoly(); }
Formula phi(const char* s) { return parse_formula(s); }
Literal lit(const char* s, bool negated = false) { return {phi(s).atomic(), negated}; }
const ResiduePoly y = ResiduePoly::y();
const ResiduePoly one(ResidueElem(1));
constexpr auto Finite = Classification::Kind::ResFinite;
constexpr auto Cofinite = Classification::Kind::ResCofinite;

Rational eval_at(const MPoly& p, const Rational& c) {
    Rational r(0);
    for (const auto& [m, a] : p.terms()) {
        Rational v = a;
        for (std::uint32_t e : m.exponents())
            for (std::uint32_t k = 0; k < e; ++k) v *= c;
        r += v;
    }
    return r;
}

// Sets every tower variable to c; nullopt when a denominator vanishes.
std::optional<ResiduePoly> specialize(const ResiduePoly& w, const Rational& c) {
    std::vector<ResidueElem> cs;
    for (const auto& e : w.coeffs()) {
        Rational d = eval_at(e.den(), c);
        if (d == 0) return std::nullopt;
        cs.emplace_back(Rational(eval_at(e.num(), c) / d));
    }
    return ResiduePoly(std::move(cs));
}

// Squarefree over Q(u) if some rational specialization of the same degree is
// squarefree over Q. Avoids Euclid over Q(u), whose coefficients blow up.
bool squarefree_by_specialization(const ResiduePoly& w) {
    for (long k = 2; k < 40; ++k) {
        auto s = specialize(w, Rational(k, 3));
        if (!s || s->degree() != w.degree()) continue;
        if (rpoly_gcd(*s, s->derivative()).degree() == 0) return true;
    }
    return false;
}

} // namespace

TEST(MinValCoeff, Examples) {
    auto [i1, e1] = min_val_coeff(F("t + x"));
    EXPECT_EQ(i1, 1u);
    EXPECT_EQ(e1, Series(1));
    auto [i2, e2] = min_val_coeff(F("2 + 3*x"));
    EXPECT_EQ(i2, 0u);
    EXPECT_EQ(e2, Series(2));
    auto [i3, e3] = min_val_coeff(F("t^2 + t*x^3"));
    EXPECT_EQ(i3, 3u);
    EXPECT_EQ(e3, parse_series("t"));
    try {
        min_val_coeff(KPoly({Series{}, Series{}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroPolynomial);
    }
}

TEST(StarForm, Examples) {
    StarForm a = star_form(F("t + t*x"));
    EXPECT_EQ(a.f_star.coeffs(), F("1 + x").coeffs());
    EXPECT_EQ(a.res_f_star, y + one);
    StarForm b = star_form(F("t + x"));
    EXPECT_EQ(b.f_star.coeffs(), F("t + x").coeffs());
    EXPECT_EQ(b.res_f_star, y);
    StarForm c = star_form(F("2"));
    EXPECT_EQ(c.f_star.coeffs(), F("1").coeffs());
    EXPECT_EQ(c.res_f_star, one);
}

TEST(StarForm, ReconstructsF) {
    Rng rng(41);
    CorpusConfig cfg;
    for (int i = 0; i < 100; ++i) {
        XPoly p = gen::poly(rng, cfg);
        if (p.is_zero()) continue;
        KPoly f = p.to_kpoly();
        StarForm s = star_form(f, 16);
        for (std::size_t k = 0; k < f.size(); ++k) {
            EXPECT_TRUE(s.f_star.coeffs()[k].in_valuation_ring());
            EXPECT_TRUE((s.e_f * s.f_star.coeffs()[k] - f.coeffs()[k]).vanishes_below(s.e_f.valuation().value() + 16));
        }
        EXPECT_EQ(s.f_star.coeffs()[s.e_index], Series(1));
    }
}

TEST(ClassifyLiteral, Examples) {
    EXPECT_EQ(classify_literal(lit("x = 0")), (Classification{Finite, y}));
    EXPECT_EQ(classify_literal(lit("v(t*x + 1) <= v(t)")), (Classification{Cofinite, one}));
    // oracle for P_2(t + t x^2): see SampleCheck.Examples
    EXPECT_EQ(classify_literal(lit("P_2(t + t*x^2)")), (Classification{Finite, y * y + one}));
    EXPECT_EQ(classify_literal(lit("x = 0", true)), (Classification{Cofinite, y}));
}

TEST(ClassifyLiteral, DegenerateCases) {
    EXPECT_EQ(classify_literal(lit("0 = 0")), (Classification{Cofinite, one}));
    EXPECT_EQ(classify_literal(lit("0 = 0", true)), (Classification{Finite, one}));
    EXPECT_EQ(classify_literal(lit("v(x) <= v(0)")), (Classification{Cofinite, one}));
    EXPECT_EQ(classify_literal(lit("v(0) <= v(x - 1)")), (Classification{Finite, y - one}));
    EXPECT_EQ(classify_literal(lit("P_2(0)")), (Classification{Cofinite, one}));
    EXPECT_EQ(classify_literal(lit("t = 0")), (Classification{Finite, one}));
}

TEST(ClassifyFormula, Examples) {
    EXPECT_EQ(classify_formula(phi("!(x = 0) & P_2(x)")), (Classification{Cofinite, y}));
    EXPECT_EQ(classify_formula(phi("x = 0 | x - 1 = 0")), (Classification{Finite, y * (y - one)}));
    EXPECT_EQ(classify_formula(phi("N(x)")), (Classification{Finite, y}));
    EXPECT_EQ(to_json(classify_formula(phi("P_2(x) & !(x=0)"))).dump(),
              R"({"kind":"res-cofinite","witness":"y","in_p_trans":true})");
}

TEST(ClassifyFormula, WitnessIsMonicSquarefree) {
    Rng rng(43);
    CorpusConfig cfg;
    for (const auto& f : gen::corpus(rng, cfg, 100)) {
        Classification c = classify_formula(f);
        const auto& w = c.witness;
        EXPECT_EQ(w.coeffs().back(), ResidueElem(1)) << to_string(f);
        if (w.degree() > 0) {
            EXPECT_TRUE(squarefree_by_specialization(w)) << to_string(f);
        }
    }
}

TEST(ClassifyFormula, ScalarInvariance) {
    Rng rng(47);
    CorpusConfig cfg;
    for (int i = 0; i < 100; ++i) {
        Atomic a = gen::atom(rng, cfg);
        if (a.f.is_zero()) continue;
        Series c = gen::coefficient(rng, cfg);
        Atomic b = a;
        b.f = XPoly(c) * a.f;
        if (a.kind == Atomic::Kind::Eq) {
            EXPECT_EQ(classify_formula(Formula::atom(a)), classify_formula(Formula::atom(b)));
        } else if (a.kind == Atomic::Kind::Div && !a.g.is_zero()) {
            // scaling both sides keeps the relation
            b.g = XPoly(c) * a.g;
            EXPECT_EQ(classify_formula(Formula::atom(a)), classify_formula(Formula::atom(b)));
        }
    }
}

TEST(StarForm, ValuationOffTheWitness) {
    // If res(f*)(res a) != 0 then v(f(a)) = v(e_f); in particular f(a) != 0.
    Rng rng(53);
    CorpusConfig cfg;
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        XPoly p = gen::poly(rng, cfg);
        if (p.is_zero()) continue;
        KPoly f = p.to_kpoly();
        StarForm s = star_form(f);
        for (int k = 0; k < 5; ++k) {
            Series a = random_point(rng);
            if (s.res_f_star.eval(a.residue()).is_zero()) continue;
            EXPECT_EQ(f.eval(a).valuation(), s.e_f.valuation()) << p.to_string() << " at " << a.to_string();
            ++checked;
        }
    }
    EXPECT_GT(checked, 500);
}

TEST(InPTrans, Examples) {
    EXPECT_TRUE(in_p_trans(phi("!(x = 0)")));
    EXPECT_FALSE(in_p_trans(phi("v(t) <= v(x)")));
    EXPECT_TRUE(in_p_trans(phi("P_2(x)")));
    // cross-check by evaluating at a fresh transcendental constant
    EXPECT_EQ(evaluate(phi("P_2(x)"), fresh_point(Tower{}).second), Truth::True);
}

TEST(DPhi, Examples) {
    auto S = [](const char* s) { return parse_series(s); };
    EXPECT_TRUE(d_phi(Template::Eq, {{Series{}, Series{}, Series{}}, {}, 1}));
    EXPECT_FALSE(d_phi(Template::Eq, {{Series{}, S("t")}, {}, 1}));
    EXPECT_TRUE(d_phi(Template::Div, {{S("t"), S("1")}, {S("t^2")}, 1}));
    TemplateParams p3{{S("t"), S("t^3")}, {}, 2};
    EXPECT_FALSE(d_phi(Template::Pn, p3));
    EXPECT_EQ(d_phi(Template::Pn, p3), in_p_trans(instantiate(Template::Pn, p3)));
    EXPECT_EQ(to_string(instantiate(Template::Pn, p3)), "P_2(t^3*x + t)");
}

TEST(DPhi, AgreesWithMembership) {
    Rng rng(59);
    CorpusConfig cfg;
    for (Template t : {Template::Eq, Template::Div, Template::Pn})
        for (int i = 0; i < 60; ++i) {
            TemplateParams p = gen::template_params(rng, cfg, t);
            EXPECT_EQ(d_phi(t, p), in_p_trans(instantiate(t, p))) << to_string(instantiate(t, p));
        }
}

TEST(FindWitness, Examples) {
    EXPECT_EQ(find_witness(phi("P_2(x) & !(x - 1 = 0)")), Series(2));
    EXPECT_EQ(find_witness(phi("!(x = 0)")), Series(1));
    Formula d = phi("v(x) <= v(t^2*x + 1)");
    Series w = find_witness(d);
    EXPECT_EQ(w, Series(1));
    EXPECT_EQ(evaluate(d, w), Truth::True);
    try {
        find_witness(phi("x = 0"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotResCofinite);
    }
}

TEST(SampleCheck, Examples) {
    Formula nz = phi("!(x = 0)");
    SampleReport a = sample_check(nz, classify_formula(nz), 10, 1);
    EXPECT_TRUE(a.pass);
    EXPECT_EQ(a.agree, 10 - a.discarded);
    Formula z = phi("x = 0");
    SampleReport b = sample_check(z, classify_formula(z), 10, 1);
    EXPECT_TRUE(b.pass);
    Formula p = phi("P_2(t + t*x^2)");
    SampleReport c = sample_check(p, classify_formula(p), 50, 2);
    EXPECT_TRUE(c.pass);
    EXPECT_EQ(c.agree + c.discarded, 50);
    EXPECT_EQ(c.to_json().dump(), R"({"samples":50,"discarded":)" + std::to_string(c.discarded) +
                                      R"(,"agree":)" + std::to_string(c.agree) + R"(,"pass":true})");
}

TEST(SampleCheck, DetectsWrongClassification) {
    Formula p = phi("P_2(x)");
    Classification wrong{Finite, one};
    EXPECT_FALSE(sample_check(p, wrong, 20, 3).pass);
}

TEST(SampleCheck, Deterministic) {
    Formula p = phi("v(x - 1) <= v(t) | P_3(x^2 + t)");
    Classification c = classify_formula(p);
    SampleReport a = sample_check(p, c, 30, 9), b = sample_check(p, c, 30, 9);
    EXPECT_EQ(a.to_json(), b.to_json());
}
