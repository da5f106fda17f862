#pragma once

// Sparse multivariate polynomials over the rationals, with exact division and
// a recursive primitive-PRS gcd. Variables are identified by index; the
// printed name of index i is u{i+1}.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "valring/errors.hpp"

namespace valring {

using Rational = mpq_class;

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

/// Exponent vector with trailing zeros trimmed, so that a monomial keeps the
/// same representation when more variables are appended.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }

    static Monomial var(std::size_t index, std::uint32_t power = 1) {
        std::vector<std::uint32_t> e(index + 1, 0);
        e[index] = power;
        return Monomial(std::move(e));
    }

    std::uint32_t operator[](std::size_t i) const { return i < exps_.size() ? exps_[i] : 0; }
    std::size_t size() const { return exps_.size(); }
    bool is_one() const { return exps_.empty(); }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (auto e : exps_) d += e;
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        std::vector<std::uint32_t> e(std::max(size(), o.size()), 0);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = (*this)[i] + o[i];
        return Monomial(std::move(e));
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (exps_[i] > o[i]) return false;
        return true;
    }

    /// Requires divides(o) on the divisor side: returns o / *this.
    Monomial quotient_of(const Monomial& o) const {
        std::vector<std::uint32_t> e(o.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = o[i] - (*this)[i];
        return Monomial(std::move(e));
    }

    Monomial without(std::size_t index) const {
        if (index >= size()) return *this;
        auto e = exps_;
        e[index] = 0;
        return Monomial(std::move(e));
    }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

    const std::vector<std::uint32_t>& exponents() const { return exps_; }

private:
    void trim() {
        while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
    }
    std::vector<std::uint32_t> exps_;
};

/// Graded lexicographic order with u1 > u2 > ... .
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        std::size_t n = std::max(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

class MPoly {
public:
    using Terms = std::map<Monomial, Rational, GrlexLess>;

    MPoly() = default;
    MPoly(const Rational& c) { // NOLINT: implicit constant embedding
        if (c != 0) terms_.emplace(Monomial{}, c);
    }
    MPoly(long c) : MPoly(Rational(c)) {} // NOLINT

    static MPoly var(std::size_t index) {
        MPoly p;
        p.terms_.emplace(Monomial::var(index), Rational(1));
        return p;
    }
    static MPoly term(const Monomial& m, const Rational& c) {
        MPoly p;
        if (c != 0) p.terms_.emplace(m, c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    Rational constant_value() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const Rational& leading_coeff() const { return terms_.rbegin()->second; }

    /// Highest variable index occurring, or -1 for constants.
    long max_var() const {
        long m = -1;
        for (const auto& [mono, c] : terms_) m = std::max(m, static_cast<long>(mono.size()) - 1);
        return m;
    }

    bool uses_var(std::size_t index) const {
        for (const auto& [mono, c] : terms_)
            if (mono[index] != 0) return true;
        return false;
    }

    std::uint32_t degree_in(std::size_t index) const {
        std::uint32_t d = 0;
        for (const auto& [mono, c] : terms_) d = std::max(d, mono[index]);
        return d;
    }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    MPoly& operator+=(const MPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly scaled(const Rational& c) const {
        if (c == 0) return {};
        MPoly r = *this;
        for (auto& [m, v] : r.terms_) v *= c;
        return r;
    }

    MPoly times_monomial(const Monomial& mono) const {
        MPoly r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m * mono, c);
        return r;
    }

    MPoly pow(unsigned k) const {
        MPoly r(1), b = *this;
        while (k) {
            if (k & 1u) r *= b;
            k >>= 1u;
            if (k) b *= b;
        }
        return r;
    }

    /// Exact quotient; throws if `d` does not divide `*this`.
    MPoly divide_exact(const MPoly& d) const {
        if (d.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
        if (d.is_constant()) return scaled(1 / d.constant_value());
        MPoly q, r = *this;
        const auto& lm = d.leading_monomial();
        const auto& lc = d.leading_coeff();
        while (!r.is_zero()) {
            const auto& rm = r.leading_monomial();
            if (!lm.divides(rm)) fail(ErrorKind::InvalidArgument, "inexact polynomial division");
            MPoly t = term(lm.quotient_of(rm), r.leading_coeff() / lc);
            q += t;
            r -= t * d;
        }
        return q;
    }

    /// Scale so the graded-lex leading coefficient is 1 (zero stays zero).
    MPoly monic() const {
        if (is_zero()) return {};
        return scaled(1 / leading_coeff());
    }

    bool operator==(const MPoly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [m, c] : terms_) {
            if (!(m == it->first) || c != it->second) return false;
            ++it;
        }
        return true;
    }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    /// Coefficients in variable `index`: result[k] is the coefficient of u^k.
    std::vector<MPoly> coefficients_in(std::size_t index) const {
        std::vector<MPoly> out(degree_in(index) + 1);
        for (const auto& [m, c] : terms_) out[m[index]].add_term(m.without(index), c);
        return out;
    }

    static MPoly from_coefficients(const std::vector<MPoly>& cs, std::size_t index) {
        MPoly r;
        for (std::size_t k = 0; k < cs.size(); ++k)
            r += cs[k].times_monomial(Monomial::var(index, static_cast<std::uint32_t>(k)));
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rational a = abs(c);
            if (first) {
                if (c < 0) s += "-";
            } else {
                s += c < 0 ? "-" : "+";
            }
            first = false;
            std::string mono = monomial_string(m);
            if (mono.empty()) {
                s += a.get_str();
            } else if (a == 1) {
                s += mono;
            } else {
                s += a.get_str() + "*" + mono;
            }
        }
        return s;
    }

    static std::string monomial_string(const Monomial& m) {
        std::string s;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += "u" + std::to_string(i + 1);
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s;
    }

private:
    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Terms terms_;
};

namespace detail {

inline std::uint32_t degree_of(const std::vector<MPoly>& p) { return static_cast<std::uint32_t>(p.size() - 1); }

inline void trim(std::vector<MPoly>& p) {
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
}

// Pseudo-remainder of a by b as univariate polynomials over a polynomial ring.
inline std::vector<MPoly> pseudo_remainder(std::vector<MPoly> a, const std::vector<MPoly>& b) {
    const MPoly& lb = b.back();
    trim(a);
    while (!(a.size() == 1 && a[0].is_zero()) && a.size() >= b.size()) {
        MPoly la = a.back();
        std::size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lb;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
        a.pop_back();
        if (a.empty()) a.push_back(MPoly{});
        trim(a);
    }
    return a;
}

} // namespace detail

inline MPoly gcd(const MPoly& a, const MPoly& b);

namespace detail {

inline MPoly content_in(const std::vector<MPoly>& cs) {
    MPoly g;
    for (const auto& c : cs) {
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero()) return MPoly(1);
    }
    return g;
}

inline std::vector<MPoly> primitive_part(const std::vector<MPoly>& cs) {
    MPoly c = content_in(cs);
    std::vector<MPoly> out;
    out.reserve(cs.size());
    for (const auto& x : cs) out.push_back(x.divide_exact(c));
    // normalize the rational scale so the PRS stays small
    Rational lead = out.back().leading_coeff();
    for (auto& x : out) x = x.scaled(1 / lead);
    return out;
}

// gcd when one side is a single term: the common monomial factor.
inline MPoly gcd_with_monomial(const MPoly& a, const MPoly& b) {
    const MPoly& m = a.terms().size() == 1 ? a : b;
    const MPoly& p = a.terms().size() == 1 ? b : a;
    std::vector<std::uint32_t> e;
    const Monomial& mm = m.terms().begin()->first;
    for (std::size_t i = 0; i < mm.size(); ++i) e.push_back(mm[i]);
    for (const auto& [t, c] : p.terms())
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], t[i]);
    return MPoly::term(Monomial(std::move(e)), 1);
}

inline bool only_var(const MPoly& p, std::size_t idx) {
    for (const auto& [t, c] : p.terms())
        for (std::size_t i = 0; i < t.size(); ++i)
            if (i != idx && t[i] != 0) return false;
    return true;
}

// Univariate primitive PRS over Z.
inline MPoly gcd_univariate(const MPoly& a, const MPoly& b, std::size_t idx) {
    using Int = mpz_class;
    auto primitive = [](std::vector<Int>& v) {
        Int g = 0;
        for (const auto& c : v) g = ::gcd(g, c);
        if (g != 0 && g != 1)
            for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    };
    auto dense = [&](const MPoly& p) {
        Int l = 1;
        for (const auto& [t, c] : p.terms()) l = lcm(l, Int(c.get_den()));
        std::vector<Int> v(p.degree_in(idx) + 1, Int(0));
        for (const auto& [t, c] : p.terms()) v[t[idx]] = c.get_num() * (l / c.get_den());
        primitive(v);
        return v;
    };
    auto is_zero = [](const std::vector<Int>& v) { return v.size() == 1 && v[0] == 0; };
    std::vector<Int> x = dense(a), y = dense(b);
    if (x.size() < y.size()) std::swap(x, y);
    while (!is_zero(y)) {
        const Int ly = y.back();
        while (x.size() >= y.size() && !is_zero(x)) {
            Int lx = x.back();
            std::size_t shift = x.size() - y.size();
            if (ly != 1)
                for (auto& c : x) c *= ly;
            for (std::size_t i = 0; i < y.size(); ++i) x[i + shift] -= lx * y[i];
            x.pop_back();
            while (x.size() > 1 && x.back() == 0) x.pop_back();
            if (x.empty()) x.push_back(0);
        }
        primitive(x);
        std::swap(x, y);
    }
    MPoly g;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) g += MPoly::term(Monomial::var(idx, static_cast<std::uint32_t>(i)), Rational(x[i]));
    return g.monic();
}

} // namespace detail

/// Greatest common divisor over Q, normalized to graded-lex leading coefficient 1.
inline MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return MPoly(1);
    if (a == b) return a.monic();

    if (a.terms().size() == 1 || b.terms().size() == 1) return detail::gcd_with_monomial(a, b);

    long k = std::max(a.max_var(), b.max_var());
    auto idx = static_cast<std::size_t>(k);
    if (detail::only_var(a, idx) && detail::only_var(b, idx)) return detail::gcd_univariate(a, b, idx);
    bool in_a = a.uses_var(idx), in_b = b.uses_var(idx);
    if (!in_a) return gcd(a, detail::content_in(b.coefficients_in(idx)));
    if (!in_b) return gcd(detail::content_in(a.coefficients_in(idx)), b);

    auto ca = a.coefficients_in(idx);
    auto cb = b.coefficients_in(idx);
    MPoly cont = gcd(detail::content_in(ca), detail::content_in(cb));
    auto pa = detail::primitive_part(ca);
    auto pb = detail::primitive_part(cb);
    if (pa.size() < pb.size()) std::swap(pa, pb);

    std::vector<MPoly> g;
    for (;;) {
        auto r = detail::pseudo_remainder(pa, pb);
        if (r.size() == 1 && r[0].is_zero()) {
            g = pb;
            break;
        }
        if (r.size() == 1) {
            g = {MPoly(1)};
            break;
        }
        pa = std::move(pb);
        pb = detail::primitive_part(r);
    }
    g = detail::primitive_part(g);
    return (cont * MPoly::from_coefficients(g, idx)).monic();
}

} // namespace valring
