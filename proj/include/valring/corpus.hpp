#pragma once

// Seeded generators for formulas, points, matrices and Hensel instances.

#include <map>
#include <vector>

#include "valring/realize.hpp"

namespace valring {

struct CorpusConfig {
    long max_degree = 4;
    long val_lo = -3;
    long val_hi = 3;
    long max_depth = 3;
    /// Base-tower variables allowed in coefficients (u1 .. u_k).
    std::size_t tower_vars = 1;
};

namespace gen {

inline ResidueElem residue(Rng& rng, const CorpusConfig& cfg) {
    ResidueElem c(rng.small_nonzero_rational());
    if (cfg.tower_vars > 0 && rng.chance(1, 10)) {
        auto k = static_cast<std::size_t>(rng.range(1, static_cast<long>(cfg.tower_vars)));
        c *= rng.chance(1, 2) ? ResidueElem::u(k) : ResidueElem::u(k) + ResidueElem(rng.small_rational());
    }
    return c;
}

/// Nonzero exact series with valuation in [lo, hi], one or two terms.
inline Series series(Rng& rng, const CorpusConfig& cfg, long lo, long hi) {
    long k = rng.range(lo, hi);
    std::map<long, ResidueElem> m{{k, residue(rng, cfg)}};
    if (rng.chance(1, 3)) m.emplace(k + rng.range(1, 3), ResidueElem(rng.small_nonzero_rational()));
    return Series::make(m);
}

inline Series coefficient(Rng& rng, const CorpusConfig& cfg) { return series(rng, cfg, cfg.val_lo, cfg.val_hi); }

/// Exact element of O.
inline Series o_element(Rng& rng, const CorpusConfig& cfg, long max_deg = 2) {
    std::map<long, ResidueElem> m;
    for (long k = 0; k <= max_deg; ++k)
        if (rng.chance(2, 3)) m.emplace(k, k == 0 ? residue(rng, cfg) : ResidueElem(rng.small_rational()));
    return Series::make(m);
}

/// Exact unit of O.
inline Series unit(Rng& rng, const CorpusConfig& cfg, long max_deg = 2) {
    std::map<long, ResidueElem> m{{0, residue(rng, cfg)}};
    for (long k = 1; k <= max_deg; ++k)
        if (rng.chance(1, 2)) m.emplace(k, ResidueElem(rng.small_rational()));
    return Series::make(m);
}

/// Univariate polynomial: either random sparse coefficients or a product of
/// linear factors with small rational roots (so witnesses meet the samples).
inline XPoly poly(Rng& rng, const CorpusConfig& cfg) {
    if (rng.chance(1, 60)) return XPoly{};
    if (rng.chance(1, 4)) {
        long d = rng.range(1, std::max(1L, cfg.max_degree));
        XPoly p(coefficient(rng, cfg));
        for (long i = 0; i < d; ++i) {
            Series root(ResidueElem(rng.small_rational(3, 2)));
            if (rng.chance(1, 3)) root += Series::monomial(ResidueElem(rng.small_nonzero_rational()), rng.range(1, 2));
            p *= XPoly::var(0) - XPoly(root);
        }
        return p;
    }
    long d = rng.range(0, cfg.max_degree);
    std::vector<Series> cs(static_cast<std::size_t>(d) + 1);
    bool any = false;
    for (auto& c : cs) {
        if (rng.chance(1, 3)) continue;
        c = coefficient(rng, cfg);
        any = true;
    }
    if (!any) cs.back() = coefficient(rng, cfg);
    return XPoly::from_kpoly(KPoly(std::move(cs)));
}

inline Atomic atom(Rng& rng, const CorpusConfig& cfg) {
    switch (rng.below(10)) {
    case 0:
    case 1:
    case 2: return Atomic::eq(poly(rng, cfg));
    case 3:
    case 4:
    case 5: return Atomic::div(poly(rng, cfg), poly(rng, cfg));
    case 6:
    case 7:
    case 8: return Atomic::pn(rng.range(2, 5), poly(rng, cfg));
    default: return Atomic::nv(poly(rng, cfg));
    }
}

inline Formula formula(Rng& rng, const CorpusConfig& cfg, long depth) {
    if (depth <= 0 || rng.chance(1, 4)) {
        Formula a = Formula::atom(atom(rng, cfg));
        return rng.chance(1, 3) ? Formula::negation(a) : a;
    }
    switch (rng.below(3)) {
    case 0: return Formula::negation(formula(rng, cfg, depth - 1));
    case 1:
    case 2: {
        std::vector<Formula> xs;
        long k = rng.range(2, 3);
        for (long i = 0; i < k; ++i) xs.push_back(formula(rng, cfg, depth - 1));
        return rng.chance(1, 2) ? Formula::conj(std::move(xs)) : Formula::disj(std::move(xs));
    }
    }
    return formula(rng, cfg, 0);
}

inline std::vector<Formula> corpus(Rng& rng, const CorpusConfig& cfg, std::size_t size) {
    std::vector<Formula> out;
    out.reserve(size);
    for (std::size_t i = 0; i < size; ++i) out.push_back(formula(rng, cfg, cfg.max_depth));
    return out;
}

/// Polynomial in x1..x_{n^2} used by the GL suites.
inline XPoly multi_poly(Rng& rng, const CorpusConfig& cfg, std::size_t n) {
    const std::size_t m = n * n;
    auto var = [&] { return XPoly::var(static_cast<std::size_t>(rng.below(m))); };
    auto coeff = [&] { return XPoly(series(rng, cfg, -2, 2)); };
    switch (rng.below(6)) {
    case 0: { // det(x)
        std::vector<XPoly> xs;
        for (std::size_t i = 0; i < m; ++i) xs.push_back(XPoly::var(i));
        return detail::cofactor_det(xs, n) * coeff();
    }
    case 1: return var() - var() * coeff();
    case 2: return var() * var() - coeff();
    default: {
        XPoly p;
        long terms = rng.range(1, 4);
        for (long i = 0; i < terms; ++i) {
            XPoly t = coeff();
            long deg = rng.range(0, 2);
            for (long j = 0; j < deg; ++j) t *= var();
            p += t;
        }
        return p;
    }
    }
}

inline Formula multi_atom(Rng& rng, const CorpusConfig& cfg, std::size_t n) {
    Atomic a;
    switch (rng.below(4)) {
    case 0: a = Atomic::eq(multi_poly(rng, cfg, n)); break;
    case 1: a = Atomic::div(multi_poly(rng, cfg, n), multi_poly(rng, cfg, n)); break;
    case 2: a = Atomic::pn(rng.range(2, 4), multi_poly(rng, cfg, n)); break;
    default: a = Atomic::nv(multi_poly(rng, cfg, n)); break;
    }
    Formula f = Formula::atom(std::move(a));
    return rng.chance(1, 3) ? Formula::negation(f) : f;
}

/// Exact element of GL(n, O) with constant determinant: P * L * D * U with
/// unitriangular L, U over O[t] and a constant invertible diagonal D.
inline OMatrix gl_exact(Rng& rng, const CorpusConfig& cfg, std::size_t n) {
    std::vector<Series> l = OMatrix::identity(n).entries(), u = l, d(n * n, Series{}), p(n * n, Series{});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i > j) l[i * n + j] = o_element(rng, cfg);
            if (i < j) u[i * n + j] = o_element(rng, cfg);
        }
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = Series(residue(rng, cfg));
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    for (std::size_t i = 0; i < n; ++i) p[i * n + perm[i]] = Series(1);
    return mat_mul(mat_mul(OMatrix(n, p), OMatrix(n, l)), mat_mul(OMatrix(n, d), OMatrix(n, u)));
}

/// Like gl_exact, but half of the samples get a non-constant unit determinant.
inline OMatrix gl_any(Rng& rng, const CorpusConfig& cfg, std::size_t n) {
    OMatrix g = gl_exact(rng, cfg, n);
    if (rng.chance(1, 2)) return g;
    std::vector<Series> e = g.entries();
    Series scale = Series(1) + Series::monomial(ResidueElem(rng.small_nonzero_rational()), rng.range(1, 2));
    for (std::size_t j = 0; j < n; ++j) e[j] *= scale;
    return OMatrix(n, std::move(e));
}

/// Exact matrix with every entry of valuation >= 1 (zero allowed).
inline OMatrix small_matrix(Rng& rng, std::size_t n) {
    std::vector<Series> e(n * n);
    for (auto& x : e) {
        std::map<long, ResidueElem> m;
        for (long k = 1; k <= 3; ++k)
            if (rng.chance(1, 2)) m.emplace(k, ResidueElem(rng.small_rational()));
        x = Series::make(m);
    }
    return OMatrix(n, std::move(e));
}

inline TemplateParams template_params(Rng& rng, const CorpusConfig& cfg, Template t) {
    auto tuple = [&](bool all_zero_possible) {
        std::vector<Series> v(static_cast<std::size_t>(rng.range(1, 4)));
        bool all_zero = all_zero_possible && rng.chance(1, 4);
        for (auto& x : v)
            if (!all_zero && !rng.chance(1, 4)) x = coefficient(rng, cfg);
        return v;
    };
    TemplateParams p;
    p.b = tuple(true);
    if (t == Template::Div) p.c = tuple(true);
    if (t == Template::Pn) p.n = rng.range(2, 5);
    return p;
}

struct HenselInstance {
    KPoly f;
    Series alpha;
};

/// f = (x - rho) q(x) + t r(x) with res(q)(rho) != 0, alpha = rho + t c.
inline HenselInstance hensel_instance(Rng& rng, const CorpusConfig& cfg) {
    ResidueElem rho = rng.chance(1, 10) && cfg.tower_vars > 0 ? ResidueElem::u(1) + ResidueElem(rng.small_rational())
                                                              : ResidueElem(rng.small_rational());
    for (;;) {
        long dq = rng.range(0, 2);
        std::vector<Series> q(static_cast<std::size_t>(dq) + 1);
        for (auto& c : q) c = o_element(rng, cfg, 1);
        KPoly qk(q);
        if (qk.eval(Series(rho)).residue().is_zero()) continue;
        XPoly f = (XPoly::var(0) - XPoly(Series(rho))) * XPoly::from_kpoly(qk);
        long dr = rng.range(0, 3);
        for (long i = 0; i <= dr; ++i)
            f += XPoly(Series::monomial(1, 1) * o_element(rng, cfg, 1)) * XPoly::var(0).pow(static_cast<unsigned>(i));
        Series alpha = Series(rho) + Series::monomial(ResidueElem(rng.small_rational()), 1);
        return {f.to_kpoly(), alpha};
    }
}

} // namespace gen
} // namespace valring
