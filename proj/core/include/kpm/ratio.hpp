#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kpm {

// Exact nonnegative rational used for threshold constants.  Every predicate
// of the form "count >= c * n^e" is decided by integer cross multiplication;
// no floating point enters any decision.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Ratio() = default;
    Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    // Accepts "3", "1/4" and decimal literals like "0.25".
    static Ratio parse(const std::string& text);

    void normalize() {
        if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        if (std::int64_t g = std::gcd(num < 0 ? -num : num, den); g > 1) { num /= g; den /= g; }
    }

    bool is_zero() const { return num == 0; }
    double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    Ratio operator+(const Ratio& o) const { return Ratio(num * o.den + o.num * den, den * o.den); }
    Ratio operator-(const Ratio& o) const { return Ratio(num * o.den - o.num * den, den * o.den); }
    Ratio operator*(const Ratio& o) const { return Ratio(num * o.num, den * o.den); }
    Ratio operator*(std::int64_t s) const { return Ratio(num * s, den); }
    Ratio operator/(std::int64_t s) const { return Ratio(num, den * s); }
    bool operator==(const Ratio& o) const { return num == o.num && den == o.den; }
    bool operator<(const Ratio& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Ratio& o) const { return !(o < *this); }

    // value >= this * scale
    bool le_scaled(std::int64_t value, std::int64_t scale) const {
        return static_cast<__int128>(num) * scale <= static_cast<__int128>(value) * den;
    }
    // value > this * scale
    bool lt_scaled(std::int64_t value, std::int64_t scale) const {
        return static_cast<__int128>(num) * scale < static_cast<__int128>(value) * den;
    }
    // smallest integer >= this * scale
    std::int64_t ceil_scaled(std::int64_t scale) const {
        __int128 p = static_cast<__int128>(num) * scale;
        __int128 q = (p >= 0) ? (p + den - 1) / den : p / den;
        return static_cast<std::int64_t>(q);
    }
    std::int64_t floor_scaled(std::int64_t scale) const {
        __int128 p = static_cast<__int128>(num) * scale;
        __int128 q = (p >= 0) ? p / den : -((-p + den - 1) / den);
        return static_cast<std::int64_t>(q);
    }
};

// Threshold constant of the form (num/den)^(1/root).  Comparisons are exact:
// value >= c*scale  <=>  value^root * den >= num * scale^root  (value >= 0).
struct RootRatio {
    Ratio base;
    int root = 1;

    RootRatio() = default;
    RootRatio(Ratio b, int r = 1) : base(b), root(r) {
        if (r < 1) throw std::invalid_argument("RootRatio: root must be positive");
    }
    // (base^(1/root))^(1/r) = base^(1/(root*r))
    RootRatio nth_root(int r) const { return RootRatio(base, root * r); }

    bool ge_scaled(std::int64_t value, std::int64_t scale) const;   // value >= c*scale
    bool gt_scaled(std::int64_t value, std::int64_t scale) const;   // value >  c*scale
    bool lt_scaled(std::int64_t value, std::int64_t scale) const { return !ge_scaled(value, scale); }
    bool le_scaled(std::int64_t value, std::int64_t scale) const { return !gt_scaled(value, scale); }
    std::int64_t ceil_scaled(std::int64_t scale) const;             // smallest int >= c*scale
};

std::int64_t ipow(std::int64_t base, int exp);

// Smallest multiple of 1/64 whose square is >= x.  Used where an exact
// rational stand-in for sqrt(x) with a one-sided error is needed.
Ratio rational_sqrt_at_least(const Ratio& x);

}  // namespace kpm
