#pragma once

// Test-only exact arithmetic over dyadic rationals (big mantissa * 2^exp).
// Doubles are dyadic, so polynomial expressions in double inputs are exactly
// representable; this gives an oracle for the sign of a Wagner gap that is
// independent of the floating-point evaluation path under test.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ergraph/genpoly.hpp"

namespace ergtest {

class BigInt {
  public:
    int sign = 0;                     // -1, 0, +1
    std::vector<std::uint32_t> mag;   // little-endian base 2^32

    static BigInt from_u64(std::uint64_t v, int sign_) {
        BigInt b;
        if (v == 0) return b;
        b.sign = sign_;
        b.mag.push_back(static_cast<std::uint32_t>(v));
        if (v >> 32) b.mag.push_back(static_cast<std::uint32_t>(v >> 32));
        return b;
    }

    static int cmp_mag(const BigInt& a, const BigInt& b) {
        if (a.mag.size() != b.mag.size()) return a.mag.size() < b.mag.size() ? -1 : 1;
        for (std::size_t i = a.mag.size(); i-- > 0;)
            if (a.mag[i] != b.mag[i]) return a.mag[i] < b.mag[i] ? -1 : 1;
        return 0;
    }

    static BigInt add_mag(const BigInt& a, const BigInt& b) {
        BigInt out;
        out.mag.resize(std::max(a.mag.size(), b.mag.size()) + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < out.mag.size(); ++i) {
            std::uint64_t s = carry;
            if (i < a.mag.size()) s += a.mag[i];
            if (i < b.mag.size()) s += b.mag[i];
            out.mag[i] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        out.trim();
        return out;
    }

    // requires |a| >= |b|
    static BigInt sub_mag(const BigInt& a, const BigInt& b) {
        BigInt out;
        out.mag.resize(a.mag.size(), 0);
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.mag.size(); ++i) {
            std::int64_t s = static_cast<std::int64_t>(a.mag[i]) - borrow - (i < b.mag.size() ? b.mag[i] : 0);
            borrow = s < 0;
            if (s < 0) s += (std::int64_t(1) << 32);
            out.mag[i] = static_cast<std::uint32_t>(s);
        }
        out.trim();
        return out;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        if (a.sign == b.sign) {
            BigInt out = add_mag(a, b);
            out.sign = a.sign;
            return out;
        }
        int c = cmp_mag(a, b);
        if (c == 0) return BigInt{};
        BigInt out = c > 0 ? sub_mag(a, b) : sub_mag(b, a);
        out.sign = c > 0 ? a.sign : b.sign;
        return out;
    }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt out;
        if (a.sign == 0 || b.sign == 0) return out;
        out.mag.assign(a.mag.size() + b.mag.size(), 0);
        for (std::size_t i = 0; i < a.mag.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.mag.size(); ++j) {
                std::uint64_t cur = out.mag[i + j] + std::uint64_t(a.mag[i]) * b.mag[j] + carry;
                out.mag[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            out.mag[i + b.mag.size()] += static_cast<std::uint32_t>(carry);
        }
        out.sign = a.sign * b.sign;
        out.trim();
        return out;
    }

    BigInt shifted_left(int bits) const {
        if (sign == 0 || bits == 0) return *this;
        BigInt out;
        out.sign = sign;
        int words = bits / 32, rem = bits % 32;
        out.mag.assign(mag.size() + static_cast<std::size_t>(words) + 1, 0);
        for (std::size_t i = 0; i < mag.size(); ++i) {
            std::uint64_t v = std::uint64_t(mag[i]) << rem;
            out.mag[i + static_cast<std::size_t>(words)] |= static_cast<std::uint32_t>(v);
            out.mag[i + static_cast<std::size_t>(words) + 1] |= static_cast<std::uint32_t>(v >> 32);
        }
        out.trim();
        return out;
    }

  private:
    void trim() {
        while (!mag.empty() && mag.back() == 0) mag.pop_back();
        if (mag.empty()) sign = 0;
    }
};

struct Dyadic {
    BigInt mant;
    int exp2 = 0;

    static Dyadic from_double(double v) {
        Dyadic d;
        if (v == 0.0) return d;
        int e = 0;
        double m = std::frexp(v, &e);   // v = m * 2^e, |m| in [0.5, 1)
        auto mant_bits = static_cast<std::int64_t>(std::ldexp(m, 53));
        d.mant = BigInt::from_u64(static_cast<std::uint64_t>(mant_bits < 0 ? -mant_bits : mant_bits),
                                  mant_bits < 0 ? -1 : 1);
        d.exp2 = e - 53;
        return d;
    }

    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        return {a.mant * b.mant, a.exp2 + b.exp2};
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.mant.sign == 0) return b;
        if (b.mant.sign == 0) return a;
        int e = std::min(a.exp2, b.exp2);
        BigInt am = a.mant.shifted_left(a.exp2 - e);
        BigInt bm = b.mant.shifted_left(b.exp2 - e);
        return {am + bm, e};
    }

    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
        Dyadic neg = b;
        neg.mant.sign = -neg.mant.sign;
        return a + neg;
    }

    int sign() const { return mant.sign; }
};

// Exact evaluation of d^{|drop|} g / d x_drop at a double point: sum over
// masks containing every index in drop of coeff * prod_{b in mask\drop} x_b.
// Derivatives are taken combinatorially here, independent of the library's
// partial().
inline Dyadic evaluate_partial_exact(const ergraph::MultiAffinePoly& g, std::span<const double> x,
                                     std::uint64_t drop_mask) {
    Dyadic total;
    for (std::uint64_t mask = 0; mask < g.coeff.size(); ++mask) {
        if ((mask & drop_mask) != drop_mask) continue;
        if (g.coeff[mask] == 0.0) continue;
        Dyadic term = Dyadic::from_double(g.coeff[mask]);
        for (int v = 0; v < g.nvars; ++v)
            if (((mask >> v) & 1u) && !((drop_mask >> v) & 1u))
                term = term * Dyadic::from_double(x[static_cast<std::size_t>(v)]);
        total = total + term;
    }
    return total;
}

inline Dyadic evaluate_exact(const ergraph::MultiAffinePoly& g, std::span<const double> x) {
    return evaluate_partial_exact(g, x, 0);
}

// Exact sign of the Wagner gap di*dj - dij*g at x.
inline int wagner_gap_sign_exact(const ergraph::MultiAffinePoly& g, std::span<const double> x, int i, int j) {
    std::uint64_t bi = std::uint64_t(1) << i;
    std::uint64_t bj = std::uint64_t(1) << j;
    Dyadic gap = evaluate_partial_exact(g, x, bi) * evaluate_partial_exact(g, x, bj) -
                 evaluate_partial_exact(g, x, bi | bj) * evaluate_exact(g, x);
    return gap.sign();
}

} // namespace ergtest
