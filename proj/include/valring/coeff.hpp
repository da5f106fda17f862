#pragma once

// The residue field model: rational functions over Q in transcendental
// variables u1, u2, ... (a tower Q(u1, ..., um)), and univariate polynomials
// over it.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "valring/errors.hpp"
#include "valring/mpoly.hpp"

namespace valring {

/// Ordered list of transcendental names. Extension only appends; a value is
/// never mutated in place by the library.
class Tower {
public:
    Tower() = default;

    std::size_t size() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }

    /// Returns the extended tower and the 1-based index of the new variable.
    std::pair<Tower, std::size_t> fresh() const {
        Tower t = *this;
        t.vars_.push_back("u" + std::to_string(vars_.size() + 1));
        return {std::move(t), t.vars_.size()};
    }

    bool operator==(const Tower& o) const { return vars_ == o.vars_; }

private:
    std::vector<std::string> vars_;
};

inline std::pair<Tower, std::size_t> tower_fresh(const Tower& t) { return t.fresh(); }

/// Element of Q(u1, ..., um) kept in normal form: gcd(num, den) = 1 and the
/// graded-lex leading coefficient of den equal to 1.
class ResidueElem {
public:
    ResidueElem() : den_(1) {}
    ResidueElem(const Rational& c) : num_(c), den_(1) {} // NOLINT
    ResidueElem(long c) : ResidueElem(Rational(c)) {}     // NOLINT
    ResidueElem(MPoly num) : num_(std::move(num)), den_(1) {} // NOLINT
    ResidueElem(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    /// The transcendental u_k, 1-based.
    static ResidueElem u(std::size_t k) { return ResidueElem(MPoly::var(k - 1)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_ == MPoly(1); }
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    Rational rational_value() const { return num_.constant_value() / den_.constant_value(); }

    /// Highest 1-based tower index mentioned, 0 for rationals.
    std::size_t max_var() const {
        return static_cast<std::size_t>(std::max(num_.max_var(), den_.max_var()) + 1);
    }
    bool uses_var(std::size_t k) const { return num_.uses_var(k - 1) || den_.uses_var(k - 1); }

    ResidueElem operator-() const {
        ResidueElem r = *this;
        r.num_ = -r.num_;
        return r;
    }

    // Sums and products reduce with gcds of the smaller pieces only.
    friend ResidueElem operator+(const ResidueElem& a, const ResidueElem& b) {
        if (a.den_.is_constant() && b.den_.is_constant()) return ResidueElem(a.num_ + b.num_, MPoly(1), true);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        MPoly g = gcd(a.den_, b.den_);
        if (g.is_constant()) return ResidueElem(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, true);
        MPoly ad = a.den_.divide_exact(g), bd = b.den_.divide_exact(g);
        MPoly num = a.num_ * bd + b.num_ * ad;
        MPoly den = ad * b.den_;
        MPoly h = gcd(num, g);
        if (!h.is_constant()) {
            num = num.divide_exact(h);
            den = den.divide_exact(h);
        }
        return ResidueElem(std::move(num), std::move(den), true);
    }
    friend ResidueElem operator-(const ResidueElem& a, const ResidueElem& b) { return a + (-b); }
    friend ResidueElem operator*(const ResidueElem& a, const ResidueElem& b) {
        if (a.den_.is_constant() && b.den_.is_constant())
            return ResidueElem(a.num_ * b.num_, MPoly(1), true);
        if (a.is_zero() || b.is_zero()) return ResidueElem();
        MPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        return ResidueElem(a.num_.divide_exact(g1) * b.num_.divide_exact(g2),
                           a.den_.divide_exact(g2) * b.den_.divide_exact(g1), true);
    }
    friend ResidueElem operator/(const ResidueElem& a, const ResidueElem& b) {
        if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero in residue field");
        return ResidueElem(a.num_ * b.den_, a.den_ * b.num_);
    }
    ResidueElem& operator+=(const ResidueElem& o) { return *this = *this + o; }
    ResidueElem& operator-=(const ResidueElem& o) { return *this = *this - o; }
    ResidueElem& operator*=(const ResidueElem& o) { return *this = *this * o; }
    ResidueElem& operator/=(const ResidueElem& o) { return *this = *this / o; }

    ResidueElem inverse() const { return ResidueElem(1) / *this; }

    ResidueElem pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        ResidueElem r(1), b = *this;
        auto e = static_cast<unsigned long>(k);
        while (e) {
            if (e & 1ul) r *= b;
            e >>= 1ul;
            if (e) b *= b;
        }
        return r;
    }

    bool operator==(const ResidueElem& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ResidueElem& o) const { return !(*this == o); }

    /// True when the printed form is a single signed product, so it can be
    /// used as a factor without parentheses.
    bool is_atomic_print() const { return den_ == MPoly(1) && num_.terms().size() <= 1; }

    std::string to_string() const {
        if (den_ == MPoly(1)) return num_.to_string();
        std::string n = num_.terms().size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
        bool simple_den = den_.terms().size() == 1 && den_.leading_coeff() == 1 &&
                          std::count_if(den_.leading_monomial().exponents().begin(),
                                        den_.leading_monomial().exponents().end(),
                                        [](auto e) { return e != 0; }) == 1;
        std::string d = simple_den ? den_.to_string() : "(" + den_.to_string() + ")";
        return n + "/" + d;
    }

private:
    ResidueElem(MPoly num, MPoly den, bool /*den already normal*/) : num_(std::move(num)), den_(std::move(den)) {
        if (num_.is_zero()) den_ = MPoly(1);
        else if (den_.is_constant() && den_ != MPoly(1)) normalize();
    }

    void normalize() {
        if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
        if (num_.is_zero()) {
            den_ = MPoly(1);
            return;
        }
        if (!den_.is_constant() && !num_.is_constant()) {
            MPoly g = gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = num_.divide_exact(g);
                den_ = den_.divide_exact(g);
            }
        }
        Rational lc = den_.leading_coeff();
        if (lc != 1) {
            num_ = num_.scaled(1 / lc);
            den_ = den_.scaled(1 / lc);
        }
    }

    MPoly num_;
    MPoly den_;
};

/// Univariate polynomial over the residue field in the distinguished variable y.
class ResiduePoly {
public:
    ResiduePoly() = default;
    explicit ResiduePoly(std::vector<ResidueElem> coeffs) : c_(std::move(coeffs)) { trim(); }
    ResiduePoly(const ResidueElem& c) : c_{c} { trim(); } // NOLINT

    static ResiduePoly y() { return ResiduePoly(std::vector<ResidueElem>{0, 1}); }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<ResidueElem>& coeffs() const { return c_; }
    ResidueElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ResidueElem(0); }
    const ResidueElem& leading() const { return c_.back(); }

    friend ResiduePoly operator+(const ResiduePoly& a, const ResiduePoly& b) {
        std::vector<ResidueElem> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return ResiduePoly(std::move(r));
    }
    ResiduePoly operator-() const {
        ResiduePoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend ResiduePoly operator-(const ResiduePoly& a, const ResiduePoly& b) { return a + (-b); }
    friend ResiduePoly operator*(const ResiduePoly& a, const ResiduePoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<ResidueElem> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return ResiduePoly(std::move(r));
    }

    /// Quotient and remainder over the field.
    std::pair<ResiduePoly, ResiduePoly> divmod(const ResiduePoly& d) const {
        if (d.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
        std::vector<ResidueElem> rem = c_;
        if (degree() < d.degree()) return {ResiduePoly{}, *this};
        std::vector<ResidueElem> q(c_.size() - d.c_.size() + 1);
        ResidueElem lc_inv = d.leading().inverse();
        for (long k = degree() - d.degree(); k >= 0; --k) {
            auto top = static_cast<std::size_t>(k) + d.c_.size() - 1;
            ResidueElem f = rem[top] * lc_inv;
            q[static_cast<std::size_t>(k)] = f;
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < d.c_.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= f * d.c_[j];
        }
        rem.resize(d.c_.size() - 1);
        return {ResiduePoly(std::move(q)), ResiduePoly(std::move(rem))};
    }

    ResiduePoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<ResidueElem> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * ResidueElem(static_cast<long>(i));
        return ResiduePoly(std::move(r));
    }

    ResiduePoly monic() const {
        if (is_zero()) return {};
        ResidueElem inv = leading().inverse();
        std::vector<ResidueElem> r = c_;
        for (auto& x : r) x *= inv;
        return ResiduePoly(std::move(r));
    }

    ResidueElem eval(const ResidueElem& a) const {
        ResidueElem r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * a + *it;
        return r;
    }

    bool operator==(const ResiduePoly& o) const { return c_ == o.c_; }
    bool operator!=(const ResiduePoly& o) const { return !(*this == o); }

    std::string to_string(const std::string& var = "y") const {
        if (is_zero()) return "0";
        std::string s;
        for (long k = degree(); k >= 0; --k) {
            const ResidueElem& c = c_[static_cast<std::size_t>(k)];
            if (c.is_zero()) continue;
            std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
            std::string cs = c.to_string();
            bool neg = c.is_atomic_print() && !cs.empty() && cs[0] == '-';
            if (neg) cs = cs.substr(1);
            bool wrap = !c.is_atomic_print();
            if (!s.empty()) s += neg ? "-" : "+";
            else if (neg) s += "-";
            if (mono.empty()) {
                s += wrap ? "(" + cs + ")" : cs;
            } else if (cs == "1") {
                s += mono;
            } else {
                s += (wrap ? "(" + cs + ")" : cs) + "*" + mono;
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<ResidueElem> c_;
};

/// Monic gcd over the residue field; gcd(0, 0) = 0.
inline ResiduePoly rpoly_gcd(ResiduePoly a, ResiduePoly b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

inline ResidueElem rpoly_eval(const ResiduePoly& h, const ResidueElem& a) { return h.eval(a); }

/// Squarefree part h / gcd(h, h'), normalized monic. Same zero set as h in any
/// extension field, with every root simple.
inline ResiduePoly rpoly_squarefree(const ResiduePoly& h) {
    if (h.is_zero()) fail(ErrorKind::ZeroPolynomial, "squarefree part of the zero polynomial");
    if (h.degree() == 0) return ResiduePoly(ResidueElem(1));
    ResiduePoly g = rpoly_gcd(h, h.derivative());
    return h.divmod(g).first.monic();
}

inline bool relem_is_zero(const ResidueElem& a) { return a.is_zero(); }

} // namespace valring
