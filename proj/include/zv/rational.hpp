#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace zv {

/// Small exact rational used for arguments, points and exponents.
class Q {
public:
    constexpr Q() = default;
    constexpr Q(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Q(std::int64_t n, std::int64_t d) { set(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    friend Q operator+(const Q& a, const Q& b) {
        return from_wide((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_, (__int128)a.den_ * b.den_);
    }
    friend Q operator-(const Q& a, const Q& b) {
        return from_wide((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_, (__int128)a.den_ * b.den_);
    }
    friend Q operator*(const Q& a, const Q& b) {
        return from_wide((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Q operator/(const Q& a, const Q& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from_wide((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Q operator-() const { Q r; r.num_ = -num_; r.den_ = den_; return r; }
    Q& operator+=(const Q& o) { return *this = *this + o; }
    Q& operator-=(const Q& o) { return *this = *this - o; }
    Q& operator*=(const Q& o) { return *this = *this * o; }
    Q& operator/=(const Q& o) { return *this = *this / o; }

    friend bool operator==(const Q& a, const Q& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Q& a, const Q& b) {
        __int128 l = (__int128)a.num_ * b.den_, r = (__int128)b.num_ * a.den_;
        return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// floor of the value
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    mpq_class to_mpq() const { return mpq_class(mpz_class(std::to_string(num_)), mpz_class(std::to_string(den_))); }
    double to_double() const { return double(num_) / double(den_); }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void set(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

    static Q from_wide(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        constexpr __int128 lim = INT64_MAX;
        if (n > lim || n < -lim || d > lim) throw std::overflow_error("rational overflow");
        Q r;
        r.num_ = (std::int64_t)n;
        r.den_ = (std::int64_t)d;
        return r;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::string to_string(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    return c.get_str();
}

inline mpq_class factorial_q(int k) {
    mpz_class f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return mpq_class(f);
}

}  // namespace zv
