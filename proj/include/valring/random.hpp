#pragma once

#include <cstdint>
#include <random>

#include "valring/coeff.hpp"

namespace valring {

/// Seeded generator with platform-independent draws (std distributions are
/// implementation-defined, which would break byte-identical reports).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return x % n;
    }

    /// Uniform in [lo, hi].
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    /// Small rational p/q with |p| <= max_num, 1 <= q <= max_den.
    Rational small_rational(long max_num = 9, long max_den = 4) {
        Rational q(range(-max_num, max_num), range(1, max_den));
        q.canonicalize();
        return q;
    }

    Rational small_nonzero_rational(long max_num = 9, long max_den = 4) {
        for (;;) {
            Rational q = small_rational(max_num, max_den);
            if (q != 0) return q;
        }
    }

    /// Derives an independent stream, so sub-suites do not shift each other.
    Rng fork(std::uint64_t salt) { return Rng(engine_() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

private:
    std::mt19937_64 engine_;
};

} // namespace valring
