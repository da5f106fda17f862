#pragma once

// Decision procedures for one-variable quantifier-free definable subsets of
// the valuation ring: every such set is res-finite or res-cofinite, with an
// explicit finite exception set Z given as the zero set of a squarefree
// witness polynomial over the residue field.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "valring/formula.hpp"
#include "valring/random.hpp"

namespace valring {

struct Classification {
    enum class Kind { ResFinite, ResCofinite };

    Kind kind = Kind::ResFinite;
    ResiduePoly witness = ResiduePoly(ResidueElem(1)); ///< monic squarefree, or 1 for Z = ∅

    bool cofinite() const { return kind == Kind::ResCofinite; }
    bool operator==(const Classification& o) const { return kind == o.kind && witness == o.witness; }
};

inline const char* to_string(Classification::Kind k) {
    return k == Classification::Kind::ResCofinite ? "res-cofinite" : "res-finite";
}

inline nlohmann::ordered_json to_json(const Classification& c) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(c.kind);
    j["witness"] = c.witness.to_string();
    j["in_p_trans"] = c.cofinite();
    return j;
}

/// f = e_f * f_star with e_f a coefficient of least valuation.
struct StarForm {
    std::size_t e_index = 0;
    Series e_f;
    KPoly f_star;            ///< exact when e_f is a monomial, else to the requested precision
    ResiduePoly res_f_star;  ///< always exact; nonzero
};

/// Coefficient of least valuation, lowest index on ties.
inline std::pair<std::size_t, Series> min_val_coeff(const KPoly& f) {
    std::size_t best = 0;
    Valuation best_v = Valuation::infinity();
    for (std::size_t i = 0; i < f.size(); ++i) {
        Valuation v = f.coeffs()[i].valuation();
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    if (best_v.is_infinite()) fail(ErrorKind::ZeroPolynomial, "polynomial is identically zero");
    return {best, f.coeffs()[best]};
}

namespace detail {
inline ResiduePoly residue_of_star(const KPoly& f, const Series& e_f) {
    long ve = e_f.valuation().value();
    ResidueElem lead_inv = e_f.coeff(ve).inverse();
    std::vector<ResidueElem> r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Series& b = f.coeffs()[i];
        if (b.known_below() <= ve) fail(ErrorKind::PrecisionExhausted, "coefficient known only below t^" + std::to_string(b.known_below()));
        r[i] = b.coeff(ve) * lead_inv;
    }
    return ResiduePoly(std::move(r));
}
} // namespace detail

inline StarForm star_form(const KPoly& f, long prec = 32) {
    auto [idx, e] = min_val_coeff(f);
    StarForm s;
    s.e_index = idx;
    s.e_f = e;
    s.res_f_star = detail::residue_of_star(f, e);
    Series inv = s_inv(e, prec);
    std::vector<Series> c;
    for (const auto& b : f.coeffs()) c.push_back(b * inv);
    c[idx] = Series(1);
    s.f_star = KPoly(std::move(c));
    return s;
}

namespace detail {

inline Classification constant_class(bool always_true) {
    return {always_true ? Classification::Kind::ResCofinite : Classification::Kind::ResFinite, ResiduePoly(ResidueElem(1))};
}

inline Classification make_class(bool cofinite, const ResiduePoly& witness) {
    return {cofinite ? Classification::Kind::ResCofinite : Classification::Kind::ResFinite, rpoly_squarefree(witness)};
}

} // namespace detail

inline Classification classify_literal(const Literal& lit) {
    const Atomic& a = lit.atomic;
    if (a.arity() > 1) fail(ErrorKind::ArityMismatch, "classification is one-variable only");
    const bool neg = lit.negated;
    switch (a.kind) {
    case Atomic::Kind::Eq: {
        KPoly f = a.f.to_kpoly();
        if (f.is_zero()) return detail::constant_class(!neg);
        auto [idx, e] = min_val_coeff(f);
        return detail::make_class(neg, detail::residue_of_star(f, e));
    }
    case Atomic::Kind::Div: {
        KPoly f = a.f.to_kpoly(), g = a.g.to_kpoly();
        bool fz = f.is_zero(), gz = g.is_zero();
        if (gz) return detail::constant_class(!neg);        // v(f(a)) <= ∞
        if (fz) return classify_literal({Atomic::eq(a.g), neg}); // ∞ <= v(g(a)) iff g(a) = 0
        auto [fi, ef] = min_val_coeff(f);
        auto [gi, eg] = min_val_coeff(g);
        ResiduePoly w = detail::residue_of_star(f, ef) * detail::residue_of_star(g, eg);
        bool holds = ef.valuation() <= eg.valuation();
        return detail::make_class(holds != neg, w);
    }
    case Atomic::Kind::Pn: {
        KPoly f = a.f.to_kpoly();
        if (f.is_zero()) return detail::constant_class(!neg); // P_n(0) holds
        auto [idx, e] = min_val_coeff(f);
        bool holds = e.valuation().value() % a.n == 0;
        return detail::make_class(holds != neg, detail::residue_of_star(f, e));
    }
    case Atomic::Kind::Nv:
        fail(ErrorKind::InvalidArgument, "N(f) must be normalized before classification");
    }
    return {};
}

namespace detail {

inline ResiduePoly rpoly_lcm(const ResiduePoly& a, const ResiduePoly& b) {
    if (a.degree() == 0) return b;
    if (b.degree() == 0 || a == b) return a;
    ResiduePoly g = rpoly_gcd(a, b);
    return (a * b.divmod(g).first).monic();
}

inline bool eval_with_kinds(const Formula& nnf, const std::vector<Classification>& cls, std::size_t& next) {
    using Op = Formula::Op;
    switch (nnf.op()) {
    case Op::Atom: return cls[next++].cofinite();
    case Op::Not: return cls[next++].cofinite(); // literal: Not over an atom
    case Op::And: {
        bool acc = true;
        for (const auto& c : nnf.args()) acc = eval_with_kinds(c, cls, next) && acc;
        return acc;
    }
    case Op::Or: {
        bool acc = false;
        for (const auto& c : nnf.args()) acc = eval_with_kinds(c, cls, next) || acc;
        return acc;
    }
    }
    return false;
}

} // namespace detail

/// Off the combined witness every literal is constant, so the formula is.
inline Classification classify_formula(const Formula& phi) {
    if (phi.arity() > 1) fail(ErrorKind::ArityMismatch, "classification is one-variable only");
    Formula nnf = normalize(phi);
    std::vector<Literal> lits = literals(nnf);
    std::vector<Classification> cls;
    cls.reserve(lits.size());
    std::vector<ResiduePoly> distinct;
    for (const auto& l : lits) {
        cls.push_back(classify_literal(l));
        const auto& w = cls.back().witness;
        if (std::find(distinct.begin(), distinct.end(), w) == distinct.end()) distinct.push_back(w);
    }
    ResiduePoly witness(ResidueElem(1));
    for (const auto& w : distinct) witness = detail::rpoly_lcm(witness, w);
    std::size_t next = 0;
    bool value = detail::eval_with_kinds(nnf, cls, next);
    return {value ? Classification::Kind::ResCofinite : Classification::Kind::ResFinite, witness};
}

inline bool in_p_trans(const Formula& phi) { return classify_formula(phi).cofinite(); }

// ---------------------------------------------------------------------------
// Parameter conditions D_phi for the three atom templates with coefficient
// tuples as parameters.

enum class Template { Eq, Div, Pn };

struct TemplateParams {
    std::vector<Series> b;
    std::vector<Series> c; ///< Div only
    long n = 1;            ///< Pn only
};

namespace detail {
inline Valuation min_valuation(const std::vector<Series>& xs) {
    Valuation m = Valuation::infinity();
    for (const auto& x : xs) m = std::min(m, x.valuation());
    return m;
}
} // namespace detail

inline bool d_phi(Template t, const TemplateParams& p) {
    switch (t) {
    case Template::Eq:
        return std::all_of(p.b.begin(), p.b.end(), [](const Series& s) { return s.valuation().is_infinite(); });
    case Template::Div: return detail::min_valuation(p.b) <= detail::min_valuation(p.c);
    case Template::Pn: {
        // argmin semantics: P_n at the lowest-index coefficient of least valuation
        Valuation m = detail::min_valuation(p.b);
        if (m.is_infinite()) return true;
        return m.value() % p.n == 0;
    }
    }
    return false;
}

/// The formula phi(x, params) for a template.
inline Formula instantiate(Template t, const TemplateParams& p) {
    auto poly = [](const std::vector<Series>& cs) { return XPoly::from_kpoly(KPoly(cs)); };
    switch (t) {
    case Template::Eq: return Formula::atom(Atomic::eq(poly(p.b)));
    case Template::Div: return Formula::atom(Atomic::div(poly(p.b), poly(p.c)));
    case Template::Pn: return Formula::atom(Atomic::pn(p.n, poly(p.b)));
    }
    fail(ErrorKind::InvalidArgument, "unknown template");
}

// ---------------------------------------------------------------------------
// Witnesses and the sampling oracle

/// 0, 1, 2, ...: a nonzero witness has finitely many roots, so this terminates.
inline Series find_witness(const Formula& phi) {
    Classification c = classify_formula(phi);
    if (!c.cofinite()) fail(ErrorKind::NotResCofinite, "formula is res-finite");
    for (long r = 0;; ++r) {
        if (c.witness.eval(ResidueElem(r)).is_zero()) continue;
        Series point(r);
        if (evaluate(phi, point) != Truth::True)
            throw std::logic_error("witness point " + std::to_string(r) + " fails " + to_string(phi));
        return point;
    }
}

struct SampleReport {
    long samples = 0;
    long discarded = 0;
    long agree = 0;
    bool pass = false;
    /// Rational roots of the witness and the formula's value there (informative).
    std::vector<std::pair<Rational, Truth>> root_probes;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["samples"] = samples;
        j["discarded"] = discarded;
        j["agree"] = agree;
        j["pass"] = pass;
        return j;
    }
};

/// Random exact point r0 + r1 t + ... + rd t^d with small rational coefficients.
inline Series random_point(Rng& rng, long max_degree = 3) {
    std::map<long, ResidueElem> m;
    long d = rng.range(0, max_degree);
    for (long i = 0; i <= d; ++i) m.emplace(i, ResidueElem(rng.small_rational()));
    return Series::make(m);
}

inline SampleReport sample_check(const Formula& phi, const Classification& c, long k, std::uint64_t seed) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "sample count must be positive");
    Rng rng(seed);
    SampleReport rep;
    rep.samples = k;
    const Truth expected = c.cofinite() ? Truth::True : Truth::False;
    for (long i = 0; i < k; ++i) {
        Series a = random_point(rng);
        if (c.witness.eval(a.residue()).is_zero()) {
            ++rep.discarded;
            continue;
        }
        if (evaluate(phi, a) == expected) ++rep.agree;
    }
    rep.pass = rep.agree == rep.samples - rep.discarded;
    for (long q = 1; q <= 3; ++q)
        for (long p = -4; p <= 4; ++p) {
            Rational rho(p, q);
            rho.canonicalize();
            if (rho.get_den() != q) continue;
            if (c.witness.degree() > 0 && c.witness.eval(ResidueElem(rho)).is_zero())
                rep.root_probes.emplace_back(rho, evaluate(phi, Series(ResidueElem(rho))));
        }
    return rep;
}

} // namespace valring
