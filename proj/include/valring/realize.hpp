#pragma once

// Exact realizations of generic types: a point whose residue is a fresh
// transcendental realizes p_trans over the base tower, and a matrix of n^2
// fresh transcendentals realizes the generic type of GL(n, O). Also matrix
// arithmetic over O and the residue homomorphism GL(n, O) -> GL(n, k).

#include <string>
#include <utility>
#include <vector>

#include "valring/classify.hpp"

namespace valring {

namespace detail {

template <typename T>
T cofactor_det(const std::vector<T>& m, std::size_t n) {
    if (n == 0) return T(1);
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    T acc(0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<T> minor;
        minor.reserve((n - 1) * (n - 1));
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) minor.push_back(m[r * n + c]);
        T term = m[j] * cofactor_det(minor, n - 1);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

template <typename T>
std::vector<T> adjugate(const std::vector<T>& m, std::size_t n) {
    std::vector<T> adj(n * n, T(0));
    if (n == 1) {
        adj[0] = T(1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<T> minor;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (r != i && c != j) minor.push_back(m[r * n + c]);
            T d = cofactor_det(minor, n - 1);
            adj[j * n + i] = ((i + j) % 2 == 0) ? d : T(0) - d;
        }
    return adj;
}

} // namespace detail

/// n x n matrix over the residue field.
class ResidueMatrix {
public:
    ResidueMatrix(std::size_t n, std::vector<ResidueElem> entries) : n_(n), e_(std::move(entries)) {
        if (e_.size() != n * n) fail(ErrorKind::DimensionMismatch, "expected " + std::to_string(n * n) + " entries");
    }
    static ResidueMatrix identity(std::size_t n) {
        std::vector<ResidueElem> e(n * n, ResidueElem(0));
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = ResidueElem(1);
        return ResidueMatrix(n, std::move(e));
    }

    std::size_t n() const { return n_; }
    const ResidueElem& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    const std::vector<ResidueElem>& entries() const { return e_; }

    ResidueElem det() const { return detail::cofactor_det(e_, n_); }

    friend ResidueMatrix operator*(const ResidueMatrix& a, const ResidueMatrix& b) {
        if (a.n_ != b.n_) fail(ErrorKind::DimensionMismatch, "matrix sizes differ");
        std::size_t n = a.n_;
        std::vector<ResidueElem> r(n * n, ResidueElem(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < n; ++j) r[i * n + j] += a.at(i, k) * b.at(k, j);
            }
        return ResidueMatrix(n, std::move(r));
    }

    ResidueMatrix inverse() const {
        ResidueElem d = det();
        if (d.is_zero()) fail(ErrorKind::SingularResidueMatrix, "determinant vanishes");
        ResidueElem dinv = d.inverse();
        auto adj = detail::adjugate(e_, n_);
        for (auto& x : adj) x *= dinv;
        return ResidueMatrix(n_, std::move(adj));
    }

    bool operator==(const ResidueMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }
    bool operator!=(const ResidueMatrix& o) const { return !(*this == o); }

private:
    std::size_t n_;
    std::vector<ResidueElem> e_;
};

/// n x n matrix with entries in the valuation ring O.
class OMatrix {
public:
    OMatrix(std::size_t n, std::vector<Series> entries) : n_(n), e_(std::move(entries)) {
        if (e_.size() != n * n) fail(ErrorKind::DimensionMismatch, "expected " + std::to_string(n * n) + " entries");
        for (const auto& x : e_)
            if (!x.in_valuation_ring()) fail(ErrorKind::NotInValuationRing, "entry " + x.to_string() + " is not in O");
    }
    static OMatrix identity(std::size_t n) {
        std::vector<Series> e(n * n, Series{});
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = Series(1);
        return OMatrix(n, std::move(e));
    }

    std::size_t n() const { return n_; }
    const Series& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    const std::vector<Series>& entries() const { return e_; }

    bool is_exact() const {
        return std::all_of(e_.begin(), e_.end(), [](const Series& s) { return s.is_exact(); });
    }

    bool operator==(const OMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }
    bool operator!=(const OMatrix& o) const { return !(*this == o); }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < n_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < n_; ++j) s += (j ? ", " : "") + at(i, j).to_string();
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t n_;
    std::vector<Series> e_;
};

inline OMatrix mat_mul(const OMatrix& a, const OMatrix& b) {
    if (a.n() != b.n()) fail(ErrorKind::DimensionMismatch, "matrix sizes differ");
    std::size_t n = a.n();
    std::vector<Series> r(n * n, Series{});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) r[i * n + j] += a.at(i, k) * b.at(k, j);
    return OMatrix(n, std::move(r));
}

inline Series mat_det(const OMatrix& a) { return detail::cofactor_det(a.entries(), a.n()); }

inline bool in_gl(const OMatrix& a) { return mat_det(a).valuation() == Valuation(0); }

/// Inverse in GL(n, O). Exact when det is an exact constant (adjugate / det);
/// otherwise Gauss-Jordan with unit pivots, correct modulo t^prec.
inline OMatrix mat_inv(const OMatrix& a, long prec = 32) {
    const std::size_t n = a.n();
    Series d = mat_det(a);
    if (d.valuation() != Valuation(0)) fail(ErrorKind::NotInvertibleInGL, "v(det) = " + d.valuation().to_string());
    if (d.is_exact_monomial()) {
        Series dinv = s_inv(d, 1);
        auto adj = detail::adjugate(a.entries(), n);
        for (auto& x : adj) x *= dinv;
        return OMatrix(n, std::move(adj));
    }
    std::vector<Series> m = a.entries();
    std::vector<Series> inv = OMatrix::identity(n).entries();
    auto at = [n](std::vector<Series>& v, std::size_t i, std::size_t j) -> Series& { return v[i * n + j]; };
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && at(m, piv, col).residue().is_zero()) ++piv;
        if (piv == n) fail(ErrorKind::NotInvertibleInGL, "no unit pivot");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(at(m, piv, j), at(m, col, j));
                std::swap(at(inv, piv, j), at(inv, col, j));
            }
        Series pinv = s_inv(at(m, col, col), prec);
        for (std::size_t j = 0; j < n; ++j) {
            at(m, col, j) = (at(m, col, j) * pinv).truncate(prec);
            at(inv, col, j) = (at(inv, col, j) * pinv).truncate(prec);
        }
        at(m, col, col) = Series(1);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Series f = at(m, r, col);
            if (f.is_exact_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                at(m, r, j) = at(m, r, j) - f * at(m, col, j);
                at(inv, r, j) = at(inv, r, j) - f * at(inv, col, j);
            }
            at(m, r, col) = Series{};
        }
    }
    return OMatrix(n, std::move(inv));
}

inline ResidueMatrix res_mat(const OMatrix& a) {
    std::vector<ResidueElem> r;
    r.reserve(a.entries().size());
    for (const auto& x : a.entries()) r.push_back(x.residue());
    return ResidueMatrix(a.n(), std::move(r));
}

/// Constant-series section of the residue map.
inline OMatrix lift_mat(const ResidueMatrix& r) {
    if (r.det().is_zero()) fail(ErrorKind::SingularResidueMatrix, "residue matrix is singular");
    std::vector<Series> e;
    for (const auto& x : r.entries()) e.emplace_back(x);
    return OMatrix(r.n(), std::move(e));
}

// ---------------------------------------------------------------------------
// Realizations

/// A constant series whose residue is transcendental over the given tower.
inline std::pair<Tower, Series> fresh_point(const Tower& tower) {
    auto [t, k] = tower.fresh();
    return {std::move(t), Series(ResidueElem::u(k))};
}

struct GenericTuple {
    Tower tower;            ///< extended tower
    std::size_t base_size;  ///< size of the tower before extension
    OMatrix g_star;         ///< entries u_{base+1}, ..., u_{base+n^2}, row-major

    std::size_t n() const { return g_star.n(); }
    bool is_fresh_var(std::size_t k) const { return k > base_size && k <= base_size + n() * n(); }
};

inline GenericTuple generic_gl(std::size_t n, const Tower& tower) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "dimension must be at least 1");
    Tower t = tower;
    std::vector<Series> e;
    for (std::size_t i = 0; i < n * n; ++i) {
        auto [next, k] = t.fresh();
        t = std::move(next);
        e.emplace_back(ResidueElem::u(k));
    }
    GenericTuple gt{std::move(t), tower.size(), OMatrix(n, std::move(e))};
    if (res_mat(gt.g_star).det().is_zero())
        throw std::logic_error("generic determinant vanished");
    return gt;
}

inline void check_no_leak(const Formula& phi, const GenericTuple& gt) {
    phi.for_each_atom([&](const Atomic& a) {
        for (std::size_t k = gt.base_size + 1; k <= gt.base_size + gt.n() * gt.n(); ++k)
            if (a.f.uses_tower_var(k) || a.g.uses_tower_var(k))
                fail(ErrorKind::VariableLeak, "formula mentions u" + std::to_string(k) + " of the generic tuple");
    });
}

/// Membership in the generic type of GL(n, O) by evaluation at g*.
inline bool in_p_G(const Formula& phi, const GenericTuple& gt) {
    check_no_leak(phi, gt);
    if (phi.arity() > gt.n() * gt.n()) fail(ErrorKind::ArityMismatch, "formula has more than n^2 variables");
    return evaluate(phi, gt.g_star.entries()) == Truth::True;
}

/// h . phi = phi(h^{-1} x), with x read as an n x n matrix in row-major order.
inline Formula left_translate(const Formula& phi, const OMatrix& h) {
    const std::size_t n = h.n();
    if (phi.arity() > n * n) fail(ErrorKind::ArityMismatch, "formula has more than n^2 variables");
    if (!h.is_exact()) fail(ErrorKind::PrecisionExhausted, "translation needs exact entries");
    Series d = mat_det(h);
    if (d.valuation() != Valuation(0)) fail(ErrorKind::NotInvertibleInGL, "v(det) = " + d.valuation().to_string());
    if (!d.is_exact_monomial()) fail(ErrorKind::PrecisionExhausted, "inverse is not a polynomial matrix");
    OMatrix hinv = mat_inv(h);
    std::vector<XPoly> images(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            XPoly img;
            for (std::size_t k = 0; k < n; ++k) img += XPoly(hinv.at(i, k)) * XPoly::var(k * n + j);
            images[i * n + j] = std::move(img);
        }
    return substitute(phi, images);
}

/// Another lift of res(g*): g* + m with v(m_ij) >= 1.
inline OMatrix perturb(const GenericTuple& gt, const OMatrix& m) {
    if (m.n() != gt.n()) fail(ErrorKind::DimensionMismatch, "perturbation has the wrong size");
    std::vector<Series> e;
    for (std::size_t i = 0; i < m.entries().size(); ++i) {
        const Series& x = m.entries()[i];
        if (!x.is_exact()) fail(ErrorKind::InvalidArgument, "perturbation entries must be exact");
        if (x.valuation() < Valuation(1)) fail(ErrorKind::ResidueChanged, "entry " + x.to_string() + " has valuation < 1");
        e.push_back(gt.g_star.entries()[i] + x);
    }
    return OMatrix(gt.n(), std::move(e));
}

} // namespace valring
