#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ergraph {

namespace detail {

inline std::int64_t checked_narrow(__int128 v, const char* op) {
    if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
        throw std::overflow_error(std::string("integer overflow in ") + op);
    return static_cast<std::int64_t>(v);
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    return checked_narrow(__int128(a) + __int128(b), "addition");
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    return checked_narrow(__int128(a) * __int128(b), "multiplication");
}

// a^k with overflow detection, k >= 0
inline std::int64_t checked_pow(std::int64_t a, int k) {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r = checked_mul(r, a);
    return r;
}

} // namespace detail

// Exact rational on 64-bit numerator/denominator, normalized (gcd 1, den > 0).
// All arithmetic is overflow-checked through 128-bit intermediates and throws
// std::overflow_error rather than wrapping.
class Rational {
  public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return make_raw(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = __int128(a.num_) * b.den_ + __int128(b.num_) * a.den_;
        __int128 d = __int128(a.den_) * b.den_;
        return from_wide(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::invalid_argument("Rational: division by zero");
        return from_wide(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    void normalize() {
        if (den_ < 0) { num_ = detail::checked_narrow(-__int128(num_), "negation"); den_ = detail::checked_narrow(-__int128(den_), "negation"); }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    static Rational make_raw(std::int64_t n, std::int64_t d) {
        Rational r; r.num_ = n; r.den_ = d; return r;
    }

    static Rational from_wide(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd_wide(an, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = detail::checked_narrow(n, "rational arithmetic");
        r.den_ = detail::checked_narrow(d, "rational arithmetic");
        if (r.num_ == 0) r.den_ = 1;
        return r;
    }

    static __int128 gcd_wide(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }
};

} // namespace ergraph
