#include <functional>

#include <gtest/gtest.h>

#include "valring/valring.hpp"

using namespace valring;

namespace {

Series S(const char* s) { return parse_series(s); }
Formula phi(const char* s) { return parse_formula(s); }
const Series u1(ResidueElem::u(1));

Tower base() { return tower_fresh(Tower{}).first; }

CorpusConfig rational_config() {
    CorpusConfig c;
    c.tower_vars = 0;
    return c;
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST(FreshPoint, Examples) {
    auto [t1, a1] = fresh_point(Tower{});
    EXPECT_EQ(t1.size(), 1u);
    EXPECT_EQ(a1, u1);
    auto [t2, a2] = fresh_point(t1);
    EXPECT_EQ(t2.vars(), (std::vector<std::string>{"u1", "u2"}));
    EXPECT_EQ(a2, Series(ResidueElem::u(2)));
    EXPECT_TRUE(a2.is_exact());
}

TEST(GenericGL, Shapes) {
    for (std::size_t n = 1; n <= 3; ++n) {
        GenericTuple gt = generic_gl(n, base());
        EXPECT_EQ(gt.n(), n);
        EXPECT_EQ(gt.base_size, 1u);
        EXPECT_EQ(gt.tower.size(), 1 + n * n);
        for (std::size_t i = 0; i < n * n; ++i) EXPECT_EQ(gt.g_star.entries()[i], Series(ResidueElem::u(2 + i)));
        EXPECT_TRUE(in_gl(gt.g_star));
        EXPECT_FALSE(gt.is_fresh_var(1));
        EXPECT_TRUE(gt.is_fresh_var(1 + n * n));
    }
    EXPECT_EQ(kind_of([] { generic_gl(0, Tower{}); }), ErrorKind::InvalidArgument);
}

TEST(InPG, Examples) {
    GenericTuple gt = generic_gl(2, base());
    EXPECT_TRUE(in_p_G(phi("!(x1*x4 - x2*x3 = 0)"), gt));
    EXPECT_TRUE(in_p_G(phi("P_2(x1)"), gt));
    EXPECT_FALSE(in_p_G(phi("v(t) <= v(x1)"), gt));
    EXPECT_FALSE(in_p_G(phi("x1 - x4 = 0"), gt));
    EXPECT_TRUE(in_p_G(phi("v(x1 - u1) <= v(1)"), gt));
}

TEST(InPG, Errors) {
    GenericTuple gt = generic_gl(2, base());
    Formula leak = Formula::atom(Atomic::eq(XPoly::var(0) - XPoly(Series(ResidueElem::u(2)))));
    EXPECT_EQ(kind_of([&] { in_p_G(leak, gt); }), ErrorKind::VariableLeak);
    EXPECT_EQ(kind_of([&] { in_p_G(phi("x5 = 0"), gt); }), ErrorKind::ArityMismatch);
}

TEST(InPG, DimensionOneIsPTrans) {
    Rng rng(61);
    CorpusConfig cfg;
    GenericTuple gt = generic_gl(1, base());
    for (const auto& f : gen::corpus(rng, cfg, 60)) EXPECT_EQ(in_p_G(f, gt), in_p_trans(f)) << to_string(f);
}

TEST(Matrix, DetAndInverse) {
    OMatrix a(2, {S("1"), S("t"), S("0"), S("1")});
    EXPECT_EQ(mat_det(a), Series(1));
    OMatrix b(2, {S("1+t"), S("0"), S("0"), S("1")});
    OMatrix bi = mat_inv(b, 4);
    EXPECT_EQ(bi.at(0, 0).to_string(), "1 - t + t^2 - t^3 + O(t^4)");
    EXPECT_TRUE((bi.at(1, 1) - Series(1)).vanishes_below(4));
    EXPECT_TRUE(bi.at(0, 1).vanishes_below(4));
    EXPECT_EQ(mat_inv(a), OMatrix(2, {S("1"), S("-t"), S("0"), S("1")}));
    EXPECT_EQ(kind_of([] { mat_inv(OMatrix(2, {S("t"), S("0"), S("0"), S("1")})); }), ErrorKind::NotInvertibleInGL);
    EXPECT_EQ(OMatrix::identity(2).to_string(), "[[1, 0], [0, 1]]");
}

TEST(Matrix, ResidueAndSection) {
    EXPECT_EQ(kind_of([] { OMatrix(1, {S("t^-1")}); }), ErrorKind::NotInValuationRing);
    EXPECT_EQ(kind_of([] { OMatrix(2, {S("1")}); }), ErrorKind::DimensionMismatch);
    OMatrix a(2, {S("1 + t"), S("2"), S("3*t"), S("4 - t^2")});
    ResidueMatrix r = res_mat(a);
    EXPECT_EQ(r, ResidueMatrix(2, {ResidueElem(1), ResidueElem(2), ResidueElem(0), ResidueElem(4)}));
    EXPECT_EQ(lift_mat(r), OMatrix(2, {S("1"), S("2"), S("0"), S("4")}));
    ResidueMatrix sing(2, {ResidueElem(1), ResidueElem(2), ResidueElem(2), ResidueElem(4)});
    EXPECT_EQ(kind_of([&] { lift_mat(sing); }), ErrorKind::SingularResidueMatrix);
    EXPECT_EQ(kind_of([&] { sing.inverse(); }), ErrorKind::SingularResidueMatrix);
}

TEST(Matrix, ResidueMapIsHomomorphism) {
    Rng rng(67);
    CorpusConfig cfg = rational_config();
    for (std::size_t n = 1; n <= 3; ++n)
        for (int i = 0; i < 15; ++i) {
            OMatrix a = gen::gl_any(rng, cfg, n), b = gen::gl_any(rng, cfg, n);
            ASSERT_TRUE(in_gl(a)) << a.to_string();
            EXPECT_EQ(res_mat(mat_mul(a, b)), res_mat(a) * res_mat(b));
            EXPECT_EQ(res_mat(mat_inv(a, 8)), res_mat(a).inverse());
            EXPECT_EQ(res_mat(lift_mat(res_mat(a))), res_mat(a));
            EXPECT_EQ(res_mat(a).det(), mat_det(a).residue());
        }
}

TEST(Matrix, InverseIsInverse) {
    Rng rng(71);
    CorpusConfig cfg = rational_config();
    for (std::size_t n = 1; n <= 3; ++n)
        for (int i = 0; i < 10; ++i) {
            OMatrix a = gen::gl_any(rng, cfg, n);
            OMatrix p = mat_mul(a, mat_inv(a, 10));
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    EXPECT_TRUE((p.at(r, c) - Series(r == c ? 1 : 0)).vanishes_below(10)) << a.to_string();
        }
}

TEST(LeftTranslate, Examples) {
    Formula f = phi("x2 = 0");
    EXPECT_EQ(left_translate(f, OMatrix::identity(2)), f);
    OMatrix d(2, {u1, S("0"), S("0"), S("1")});
    EXPECT_EQ(left_translate(phi("x1 = 0"), d), Formula::atom(Atomic::eq(XPoly(Series(ResidueElem::u(1).inverse())) * XPoly::var(0))));
    OMatrix h(2, {S("1"), S("t"), S("0"), S("1")});
    EXPECT_EQ(left_translate(f, h), phi("x2 - t*x4 = 0"));
    EXPECT_EQ(kind_of([] { left_translate(phi("x1 = 0"), OMatrix(1, {S("1 + t")})); }), ErrorKind::PrecisionExhausted);
    EXPECT_EQ(kind_of([] { left_translate(phi("x1 = 0"), OMatrix(1, {S("t")})); }), ErrorKind::NotInvertibleInGL);
}

TEST(LeftTranslate, MatchesEvaluationAtInverseProduct) {
    // (h . phi)(M) = phi(h^-1 M)
    Rng rng(73);
    CorpusConfig cfg;
    CorpusConfig mc = rational_config();
    for (std::size_t n = 1; n <= 2; ++n)
        for (int i = 0; i < 20; ++i) {
            Formula f = gen::multi_atom(rng, cfg, n);
            OMatrix h = gen::gl_exact(rng, mc, n);
            OMatrix m = gen::gl_exact(rng, mc, n);
            EXPECT_EQ(evaluate(left_translate(f, h), m.entries()), evaluate(f, mat_mul(mat_inv(h), m).entries()))
                << to_string(f) << " by " << h.to_string();
        }
}

TEST(LeftTranslate, GenericTypeIsInvariant) {
    Rng rng(79);
    CorpusConfig cfg;
    CorpusConfig mc = rational_config();
    for (std::size_t n = 1; n <= 2; ++n) {
        GenericTuple gt = generic_gl(n, base());
        for (int i = 0; i < 20; ++i) {
            Formula f = gen::multi_atom(rng, cfg, n);
            bool in = in_p_G(f, gt);
            for (int k = 0; k < 3; ++k) {
                OMatrix h = gen::gl_exact(rng, mc, n);
                EXPECT_EQ(in_p_G(left_translate(f, h), gt), in) << to_string(f) << " by " << h.to_string();
            }
        }
    }
}

TEST(Perturb, Examples) {
    GenericTuple gt = generic_gl(2, base());
    EXPECT_EQ(perturb(gt, OMatrix(2, {S("0"), S("0"), S("0"), S("0")})), gt.g_star);
    OMatrix tI(2, {S("t"), S("0"), S("0"), S("t")});
    OMatrix p = perturb(gt, tI);
    EXPECT_EQ(p.at(0, 0), gt.g_star.at(0, 0) + S("t"));
    EXPECT_EQ(p.at(0, 1), gt.g_star.at(0, 1));
    EXPECT_EQ(res_mat(p), res_mat(gt.g_star));
    EXPECT_EQ(kind_of([&] { perturb(gt, OMatrix(2, {S("1"), S("0"), S("0"), S("0")})); }), ErrorKind::ResidueChanged);
    EXPECT_EQ(kind_of([&] { perturb(gt, OMatrix::identity(3)); }), ErrorKind::DimensionMismatch);
}

TEST(Perturb, LiftsHaveTheGenericType) {
    Rng rng(83);
    CorpusConfig cfg;
    for (std::size_t n = 1; n <= 2; ++n) {
        GenericTuple gt = generic_gl(n, base());
        std::vector<Formula> fs;
        for (int i = 0; i < 20; ++i) fs.push_back(gen::multi_atom(rng, cfg, n));
        for (int k = 0; k < 5; ++k) {
            OMatrix lifted = perturb(gt, gen::small_matrix(rng, n));
            for (const auto& f : fs)
                EXPECT_EQ(evaluate(f, lifted.entries()), truth_of(in_p_G(f, gt))) << to_string(f) << " at " << lifted.to_string();
        }
    }
}
