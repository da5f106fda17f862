#pragma once

// Truncated Laurent series over the residue field: the computational model of
// C((t)). A series either stores a Laurent polynomial exactly, or stores the
// coefficients below a precision bound N and says nothing beyond O(t^N).

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valring/coeff.hpp"
#include "valring/errors.hpp"

namespace valring {

/// Element of Z ∪ {∞}.
class Valuation {
public:
    constexpr Valuation(long v) : v_(v), inf_(false) {} // NOLINT
    static constexpr Valuation infinity() { return Valuation(); }

    constexpr bool is_infinite() const { return inf_; }
    long value() const {
        if (inf_) fail(ErrorKind::InvalidArgument, "infinite valuation has no integer value");
        return v_;
    }

    friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend constexpr bool operator<(const Valuation& a, const Valuation& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
    friend constexpr bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend constexpr bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }

    std::string to_string() const { return inf_ ? "inf" : std::to_string(v_); }

private:
    constexpr Valuation() : v_(0), inf_(true) {}
    long v_;
    bool inf_;
};

class Series {
public:
    /// The exact zero.
    Series() = default;
    Series(const ResidueElem& c) { // NOLINT: constants embed as exact series
        if (!c.is_zero()) c_.push_back(c);
    }
    Series(long c) : Series(ResidueElem(c)) {} // NOLINT

    static Series monomial(const ResidueElem& c, long k) {
        Series s(c);
        if (!s.c_.empty()) s.offset_ = k;
        return s;
    }

    /// O(t^n): nothing known beyond the fact that all coefficients below n vanish.
    static Series big_o(long n) {
        Series s;
        s.offset_ = n;
        s.prec_ = n;
        return s;
    }

    /// Builds a series from exponent -> coefficient; prec = nullopt means exact.
    static Series make(const std::map<long, ResidueElem>& coeffs, std::optional<long> prec = std::nullopt) {
        for (const auto& [k, c] : coeffs)
            if (prec && k >= *prec && !c.is_zero())
                fail(ErrorKind::InvalidArgument, "coefficient at t^" + std::to_string(k) + " is beyond precision");
        Series s;
        s.prec_ = prec;
        long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
        for (const auto& [k, c] : coeffs) {
            if (c.is_zero()) continue;
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
        if (prec) {
            if (lo > *prec) lo = *prec;
            hi = *prec - 1;
        } else if (lo > hi) {
            return s;
        }
        s.offset_ = lo;
        s.c_.assign(static_cast<std::size_t>(std::max(0L, hi - lo + 1)), ResidueElem(0));
        for (const auto& [k, c] : coeffs)
            if (k >= lo && k <= hi) s.c_[static_cast<std::size_t>(k - lo)] = c;
        s.normalize();
        return s;
    }

    bool is_exact() const { return !prec_.has_value(); }
    std::optional<long> prec() const { return prec_; }
    long offset() const { return offset_; }
    const std::vector<ResidueElem>& stored() const { return c_; }

    /// Exponent below which coefficients are known (max long for exact series).
    long known_below() const { return prec_ ? *prec_ : std::numeric_limits<long>::max(); }

    bool is_exact_zero() const { return is_exact() && c_.empty(); }

    /// Coefficient of t^k; throws PrecisionExhausted if k is beyond the known range.
    ResidueElem coeff(long k) const {
        if (k >= known_below()) fail(ErrorKind::PrecisionExhausted, "coefficient of t^" + std::to_string(k) + " is unknown");
        if (k < offset_ || k >= offset_ + static_cast<long>(c_.size())) return ResidueElem(0);
        return c_[static_cast<std::size_t>(k - offset_)];
    }

    /// First exponent with a stored nonzero coefficient, if any.
    std::optional<long> first_nonzero() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return offset_ + static_cast<long>(i);
        return std::nullopt;
    }

    /// A lower bound for the valuation: exact when a nonzero coefficient is
    /// stored, the precision bound otherwise, ∞ for the exact zero.
    Valuation valuation_lower_bound() const {
        if (auto f = first_nonzero()) return *f;
        if (prec_) return *prec_;
        return Valuation::infinity();
    }

    Valuation valuation() const {
        if (auto f = first_nonzero()) return *f;
        if (prec_) fail(ErrorKind::PrecisionExhausted, "valuation is at least " + std::to_string(*prec_) + " but unknown");
        return Valuation::infinity();
    }

    /// True when v >= n is decided from the stored data.
    bool vanishes_below(long n) const {
        if (n > known_below()) return false;
        auto f = first_nonzero();
        return !f || *f >= n;
    }

    /// Decides membership in the valuation ring.
    bool in_valuation_ring() const {
        if (auto f = first_nonzero()) return *f >= 0;
        if (prec_ && *prec_ < 0) fail(ErrorKind::PrecisionExhausted, "membership in O is undecidable");
        return true;
    }

    ResidueElem residue() const {
        if (!in_valuation_ring()) fail(ErrorKind::NotInValuationRing, "series " + to_string() + " has negative valuation");
        if (known_below() <= 0) fail(ErrorKind::PrecisionExhausted, "constant coefficient unknown");
        return coeff(0);
    }

    /// Truncation to O(t^n) (never raises the precision).
    Series truncate(long n) const {
        long p = std::min(n, known_below());
        std::map<long, ResidueElem> m;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            long k = offset_ + static_cast<long>(i);
            if (k < p && !c_[i].is_zero()) m.emplace(k, c_[i]);
        }
        return make(m, p);
    }

    /// The stored coefficients read as an exact Laurent polynomial.
    Series known_part() const {
        Series s = *this;
        s.prec_.reset();
        s.normalize();
        return s;
    }

    Series shifted(long k) const {
        Series s = *this;
        if (!s.c_.empty() || s.prec_) s.offset_ += k;
        if (s.prec_) *s.prec_ += k;
        return s;
    }

    Series operator-() const {
        Series s = *this;
        for (auto& c : s.c_) c = -c;
        return s;
    }

    friend Series operator+(const Series& a, const Series& b) {
        long p = std::min(a.known_below(), b.known_below());
        std::map<long, ResidueElem> m;
        auto accumulate = [&](const Series& s) {
            for (std::size_t i = 0; i < s.c_.size(); ++i) {
                long k = s.offset_ + static_cast<long>(i);
                if (k >= p || s.c_[i].is_zero()) continue;
                auto [it, inserted] = m.emplace(k, s.c_[i]);
                if (!inserted) it->second += s.c_[i];
            }
        };
        accumulate(a);
        accumulate(b);
        return make(m, p == std::numeric_limits<long>::max() ? std::nullopt : std::optional<long>(p));
    }
    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

    friend Series operator*(const Series& a, const Series& b) {
        if (a.is_exact_zero() || b.is_exact_zero()) return Series{};
        std::optional<long> p;
        auto bound = [](const Series& s) { return s.valuation_lower_bound().value(); };
        if (a.prec_) p = *a.prec_ + bound(b);
        if (b.prec_) p = std::min(p.value_or(std::numeric_limits<long>::max()), *b.prec_ + bound(a));
        long limit = p.value_or(std::numeric_limits<long>::max());
        std::map<long, ResidueElem> m;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            long ka = a.offset_ + static_cast<long>(i);
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                long k = ka + b.offset_ + static_cast<long>(j);
                if (k >= limit) break;
                if (b.c_[j].is_zero()) continue;
                auto prod = a.c_[i] * b.c_[j];
                auto [it, inserted] = m.emplace(k, prod);
                if (!inserted) it->second += prod;
            }
        }
        return make(m, p);
    }

    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series pow(unsigned k) const {
        Series r(1), b = *this;
        while (k) {
            if (k & 1u) r *= b;
            k >>= 1u;
            if (k) b *= b;
        }
        return r;
    }

    /// Exact monomial c*t^k with c != 0.
    bool is_exact_monomial() const {
        if (!is_exact() || c_.empty()) return false;
        return c_.size() == 1;
    }

    /// Highest 1-based tower variable occurring in a stored coefficient.
    std::size_t max_tower_var() const {
        std::size_t m = 0;
        for (const auto& c : c_) m = std::max(m, c.max_var());
        return m;
    }

    bool operator==(const Series& o) const { return offset_ == o.offset_ && prec_ == o.prec_ && c_ == o.c_; }
    bool operator!=(const Series& o) const { return !(*this == o); }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const auto& c = c_[i];
            if (c.is_zero()) continue;
            long k = offset_ + static_cast<long>(i);
            std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
            std::string cs = c.to_string();
            bool atomic = c.is_atomic_print();
            bool neg = atomic && cs[0] == '-';
            if (neg) cs = cs.substr(1);
            if (!atomic) cs = "(" + cs + ")";
            if (s.empty()) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            if (mono.empty()) s += cs;
            else if (cs == "1") s += mono;
            else s += cs + "*" + mono;
        }
        if (prec_) {
            std::string o = "O(t^" + std::to_string(*prec_) + ")";
            s += s.empty() ? o : " + " + o;
        }
        return s.empty() ? "0" : s;
    }

private:
    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead].is_zero()) ++lead;
        if (prec_) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            offset_ += static_cast<long>(lead);
            return;
        }
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (lead >= c_.size()) {
            c_.clear();
            offset_ = 0;
            return;
        }
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
        offset_ += static_cast<long>(lead);
    }

    long offset_ = 0;
    std::vector<ResidueElem> c_;
    std::optional<long> prec_;
};

inline Series s_make(const std::map<long, ResidueElem>& coeffs, std::optional<long> prec = std::nullopt) {
    return Series::make(coeffs, prec);
}

inline Valuation s_valuation(const Series& a) { return a.valuation(); }
inline ResidueElem s_residue(const Series& a) { return a.residue(); }

/// r with a*r ≡ 1 mod t^prec and v(r) = -v(a). Exact when a is an exact monomial.
inline Series s_inv(const Series& a, long prec) {
    Valuation va = a.valuation();
    if (va.is_infinite()) fail(ErrorKind::DivisionByZero, "inverse of zero series");
    long v = va.value();
    const ResidueElem lead = a.coeff(v);
    if (a.is_exact_monomial()) return Series::monomial(lead.inverse(), -v);
    if (a.known_below() < v + prec)
        fail(ErrorKind::PrecisionExhausted, "series known only below t^" + std::to_string(a.known_below()) +
                                                 ", inverse needs t^" + std::to_string(v + prec));
    const ResidueElem lead_inv = lead.inverse();
    std::vector<ResidueElem> unit(static_cast<std::size_t>(std::max(0L, prec)));
    for (long k = 0; k < prec; ++k) unit[static_cast<std::size_t>(k)] = a.coeff(v + k);
    std::map<long, ResidueElem> r;
    std::vector<ResidueElem> inv(unit.size());
    for (std::size_t k = 0; k < unit.size(); ++k) {
        ResidueElem acc = k == 0 ? ResidueElem(1) : ResidueElem(0);
        for (std::size_t j = 1; j <= k; ++j)
            if (!unit[j].is_zero()) acc -= unit[j] * inv[k - j];
        inv[k] = acc * lead_inv;
        r.emplace(static_cast<long>(k) - v, inv[k]);
    }
    return Series::make(r, prec - v);
}

inline bool is_nth_power(const Series& a, long n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "n must be positive");
    Valuation v = a.valuation();
    if (v.is_infinite()) fail(ErrorKind::InvalidArgument, "zero is not in the multiplicative group");
    long r = v.value() % n;
    return r == 0;
}

/// Polynomial in one variable x with series coefficients; degree is syntactic.
class KPoly {
public:
    KPoly() = default;
    explicit KPoly(std::vector<Series> coeffs) : c_(std::move(coeffs)) {}

    static KPoly x() { return KPoly({Series(0), Series(1)}); }

    const std::vector<Series>& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }
    Series coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Series{}; }

    /// True iff every coefficient is the exact zero. Throws when undecidable.
    bool is_zero() const {
        for (const auto& c : c_) {
            if (c.is_exact_zero()) continue;
            if (c.first_nonzero()) return false;
            fail(ErrorKind::PrecisionExhausted, "coefficient " + c.to_string() + " may or may not vanish");
        }
        return true;
    }

    KPoly derivative() const {
        std::vector<Series> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * Series(static_cast<long>(i)));
        return KPoly(std::move(r));
    }

    Series eval(const Series& a) const {
        Series r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * a + *it;
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_exact_zero()) continue;
            if (!s.empty()) s += " + ";
            std::string cs = "(" + c_[i].to_string() + ")";
            if (i == 0) s += cs;
            else s += cs + "*x" + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return s.empty() ? "0" : s;
    }

private:
    std::vector<Series> c_;
};

inline Series kpoly_eval(const KPoly& f, const Series& a) { return f.eval(a); }

/// Newton iteration from the constant residue of alpha, doubling the working
/// precision 1, 2, 4, ... up to prec. Returns an exact root when one is hit.
inline Series hensel_lift(const KPoly& f, const Series& alpha, long prec) {
    if (prec < 1) fail(ErrorKind::InvalidArgument, "precision must be at least 1");
    for (const auto& c : f.coeffs())
        if (!c.in_valuation_ring())
            fail(ErrorKind::HenselPreconditionFailed, "coefficient " + c.to_string() + " is not in O");
    if (!alpha.in_valuation_ring()) fail(ErrorKind::HenselPreconditionFailed, "alpha is not in O");
    const KPoly df = f.derivative();
    const ResidueElem rho = alpha.residue();
    if (!f.eval(alpha).residue().is_zero()) fail(ErrorKind::HenselPreconditionFailed, "f(alpha) is not in m");
    if (df.eval(alpha).residue().is_zero()) fail(ErrorKind::HenselPreconditionFailed, "f'(alpha) is in m");

    // r is an exact polynomial; f is evaluated at r + O(t^p) so work stays
    // bounded, and exactly only when an iteration leaves r unchanged.
    Series r(rho);
    if (f.eval(r).is_exact_zero()) return r;
    long p = 1;
    while (p < prec) {
        p = std::min(2 * p, prec);
        Series fr = f.eval(r.truncate(p));
        if (fr.known_below() < p) fail(ErrorKind::PrecisionExhausted, "f(r) known only below t^" + std::to_string(fr.known_below()));
        Series delta = (fr * s_inv(df.eval(r.truncate(p)), p)).truncate(p);
        Series next = (r - delta).truncate(p).known_part();
        bool stable = next == r;
        r = std::move(next);
        if (stable && f.eval(r).is_exact_zero()) return r;
    }
    Series fr = f.eval(r.truncate(prec));
    if (!fr.vanishes_below(prec)) fail(ErrorKind::PrecisionExhausted, "cannot certify f(r) = 0 mod t^" + std::to_string(prec));
    Series out = r.truncate(prec);
    if (out.residue() != rho) fail(ErrorKind::HenselPreconditionFailed, "lift changed the residue");
    return out;
}

inline Series nth_root(const Series& a, long n, const ResidueElem& rho, long prec) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "n must be positive");
    Valuation v = a.valuation();
    if (v != Valuation(0)) fail(ErrorKind::NotAUnit, "valuation " + v.to_string() + " is not 0");
    if (rho.pow(n) != a.residue())
        fail(ErrorKind::ResidueRootInvalid, "(" + rho.to_string() + ")^" + std::to_string(n) + " != " + a.residue().to_string());
    std::vector<Series> c(static_cast<std::size_t>(n) + 1, Series{});
    c[0] = -a;
    c[static_cast<std::size_t>(n)] = Series(1);
    return hensel_lift(KPoly(std::move(c)), Series(rho), prec);
}

} // namespace valring
