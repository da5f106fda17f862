#pragma once

// Polynomials in the formula variables x1, ..., xm with series coefficients.

#include <map>
#include <string>
#include <vector>

#include "valring/series.hpp"

namespace valring {

class XPoly {
public:
    using Terms = std::map<Monomial, Series, GrlexLess>;

    XPoly() = default;
    XPoly(const Series& c) { add_term(Monomial{}, c); } // NOLINT
    XPoly(long c) : XPoly(Series(c)) {}                 // NOLINT

    /// The variable x_{index+1}.
    static XPoly var(std::size_t index) {
        XPoly p;
        p.terms_.emplace(Monomial::var(index), Series(1));
        return p;
    }

    static XPoly from_kpoly(const KPoly& f) {
        XPoly p;
        for (std::size_t i = 0; i < f.size(); ++i)
            p.add_term(Monomial::var(0, static_cast<std::uint32_t>(i)), f.coeffs()[i]);
        return p;
    }

    const Terms& terms() const { return terms_; }

    /// Number of variables in scope (highest index + 1).
    std::size_t arity() const {
        std::size_t a = 0;
        for (const auto& [m, c] : terms_) a = std::max(a, m.size());
        return a;
    }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    Series constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Series{} : it->second;
    }

    /// True iff all coefficients are exactly zero; throws when undecidable.
    bool is_zero() const {
        for (const auto& [m, c] : terms_) {
            if (c.first_nonzero()) return false;
            if (!c.is_exact()) fail(ErrorKind::PrecisionExhausted, "coefficient " + c.to_string() + " may or may not vanish");
        }
        return true;
    }

    /// Univariate view; requires arity <= 1.
    KPoly to_kpoly() const {
        if (arity() > 1) fail(ErrorKind::ArityMismatch, "polynomial is not univariate");
        std::vector<Series> c;
        for (const auto& [m, s] : terms_) {
            auto d = static_cast<std::size_t>(m[0]);
            if (c.size() <= d) c.resize(d + 1);
            c[d] = s;
        }
        return KPoly(std::move(c));
    }

    XPoly operator-() const {
        XPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    XPoly& operator+=(const XPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    XPoly& operator-=(const XPoly& o) { return *this += -o; }
    friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
    friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
    friend XPoly operator*(const XPoly& a, const XPoly& b) {
        XPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    XPoly& operator*=(const XPoly& o) { return *this = *this * o; }

    XPoly pow(unsigned k) const {
        XPoly r(1), b = *this;
        while (k) {
            if (k & 1u) r *= b;
            k >>= 1u;
            if (k) b *= b;
        }
        return r;
    }

    Series eval(const std::vector<Series>& point) const {
        if (point.size() < arity())
            fail(ErrorKind::ArityMismatch, "point has " + std::to_string(point.size()) + " coordinates, polynomial needs " +
                                               std::to_string(arity()));
        Series r;
        for (const auto& [m, c] : terms_) {
            Series t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i]) t *= point[i].pow(m[i]);
            r += t;
        }
        return r;
    }

    /// Composition x_i -> images[i].
    XPoly compose(const std::vector<XPoly>& images) const {
        if (images.size() < arity()) fail(ErrorKind::ArityMismatch, "substitution does not cover every variable");
        XPoly r;
        for (const auto& [m, c] : terms_) {
            XPoly t(c);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i]) t *= images[i].pow(m[i]);
            r += t;
        }
        return r;
    }

    /// Highest 1-based tower variable mentioned by any coefficient.
    std::size_t max_tower_var() const {
        std::size_t v = 0;
        for (const auto& [m, c] : terms_) v = std::max(v, c.max_tower_var());
        return v;
    }

    bool uses_tower_var(std::size_t k) const {
        for (const auto& [m, c] : terms_)
            for (const auto& e : c.stored())
                if (e.uses_var(k)) return true;
        return false;
    }

    bool operator==(const XPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const XPoly& o) const { return !(*this == o); }

    /// Prints in the formula grammar; `indexed` selects x1, x2, ... over plain x.
    std::string to_string(bool indexed = false) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            std::string mono = monomial_string(m, indexed);
            std::string cs = c.to_string();
            bool single = c.is_exact() && c.stored().size() == 1;
            std::string term;
            if (mono.empty()) term = single ? cs : "(" + cs + ")";
            else if (cs == "1") term = mono;
            else if (cs == "-1") term = "-" + mono;
            else term = (single ? cs : "(" + cs + ")") + "*" + mono;
            if (s.empty()) s = term;
            else if (term[0] == '-') s += " - " + term.substr(1);
            else s += " + " + term;
        }
        return s;
    }

    static std::string monomial_string(const Monomial& m, bool indexed) {
        std::string s;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (!s.empty()) s += "*";
            s += indexed ? "x" + std::to_string(i + 1) : "x";
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s;
    }

private:
    void add_term(const Monomial& m, const Series& c) {
        if (c.is_exact_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_exact_zero()) terms_.erase(it);
        }
    }

    Terms terms_;
};

} // namespace valring
