#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "pebbling/error.hpp"

namespace pebbling {

/// Nonnegative dyadic rational numerator / 2^exponent, kept canonical
/// (numerator odd or zero whenever exponent > 0). All arithmetic is exact;
/// any operation that would overflow the 64-bit numerator throws.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(std::int64_t numerator, int exponent) : num_(numerator), exp_(exponent) {
        if (numerator < 0)
            throw Error("dyadic: negative numerator");
        if (exponent < 0 || exponent > 62)
            throw Error("dyadic: exponent out of range");
        canonicalize();
    }
    static Dyadic from_integer(std::int64_t n) { return Dyadic(n, 0); }

    std::int64_t numerator() const { return num_; }
    int exponent() const { return exp_; }
    std::int64_t denominator() const { return std::int64_t{1} << exp_; }
    bool is_zero() const { return num_ == 0; }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
        return Dyadic(checked_add(shifted(a.num_, e - a.exp_), shifted(b.num_, e - b.exp_)), e);
    }
    Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }

    /// a - b, defined only when a >= b (weights never go negative).
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
        if (a < b)
            throw Error("dyadic: negative difference");
        int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
        return Dyadic(shifted(a.num_, e - a.exp_) - shifted(b.num_, e - b.exp_), e);
    }

    Dyadic doubled() const { return Dyadic(checked_mul2(num_), exp_); }
    Dyadic halved() const {
        if (num_ == 0)
            return Dyadic();
        if (num_ % 2 == 0)
            return Dyadic(num_ / 2, exp_);
        return Dyadic(num_, exp_ + 1);
    }
    Dyadic times(std::int64_t k) const {
        if (k < 0)
            throw Error("dyadic: negative scale");
        if (num_ != 0 && k > std::numeric_limits<std::int64_t>::max() / num_)
            throw Error("dyadic: overflow in times()");
        return Dyadic(num_ * k, exp_);
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.num_ == b.num_ && a.exp_ == b.exp_;
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
        return (__int128)a.num_ << (e - a.exp_) < (__int128)b.num_ << (e - b.exp_);
    }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

    /// Exact floor(a / b) for b > 0.
    static std::int64_t floor_div(const Dyadic& a, const Dyadic& b) {
        if (b.is_zero())
            throw Error("dyadic: division by zero");
        __int128 lhs = (__int128)a.num_ << b.exp_;
        __int128 rhs = (__int128)b.num_ << a.exp_;
        __int128 q = lhs / rhs;
        if (q > std::numeric_limits<std::int64_t>::max())
            throw Error("dyadic: floor_div overflow");
        return (std::int64_t)q;
    }

    double to_double() const { return std::ldexp((double)num_, -exp_); }

    /// Canonical "numerator/denominator" rendering, e.g. "11/8", "32/1".
    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(denominator());
    }

private:
    void canonicalize() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        while (exp_ > 0 && num_ % 2 == 0) {
            num_ /= 2;
            --exp_;
        }
    }
    static std::int64_t shifted(std::int64_t v, int by) {
        if (v != 0 && by >= 63 - bit_width_i64(v))
            throw Error("dyadic: overflow in shift");
        return v << by;
    }
    static int bit_width_i64(std::int64_t v) {
        int w = 0;
        while (v > 0) {
            ++w;
            v >>= 1;
        }
        return w;
    }
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r))
            throw Error("dyadic: overflow in add");
        return r;
    }
    static std::int64_t checked_mul2(std::int64_t a) {
        std::int64_t r;
        if (__builtin_add_overflow(a, a, &r))
            throw Error("dyadic: overflow in double");
        return r;
    }

    std::int64_t num_ = 0;
    int exp_ = 0;
};

/// Parses an exact weight token: "a/b" with b a power of two, or a bare
/// nonnegative integer. Decimal tokens are rejected here; they go through
/// rationalize() instead.
inline Dyadic parse_dyadic(const std::string& token) {
    auto slash = token.find('/');
    auto parse_int = [&](const std::string& s) -> std::int64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("not an exact dyadic token: '" + token + "'");
        if (s.size() > 18)
            throw ParseError("integer too large: '" + s + "'");
        return std::stoll(s);
    };
    if (slash == std::string::npos)
        return Dyadic(parse_int(token), 0);
    std::int64_t num = parse_int(token.substr(0, slash));
    std::int64_t den = parse_int(token.substr(slash + 1));
    if (den <= 0 || (den & (den - 1)) != 0)
        throw ParseError("denominator must be a power of two: '" + token + "'");
    int e = 0;
    while ((std::int64_t{1} << e) != den)
        ++e;
    return Dyadic(num, e);
}

/// Nearest dyadic with exponent <= max_exponent; ties round to the even
/// numerator. Input is a nonnegative decimal string such as "1.37".
inline Dyadic rationalize(const std::string& decimal, int max_exponent) {
    if (max_exponent < 0 || max_exponent > 40)
        throw Error("rationalize: max_exponent out of range");
    std::string s = decimal;
    if (!s.empty() && s[0] == '+')
        s = s.substr(1);
    if (!s.empty() && s[0] == '-')
        throw Error("rationalize: negative input '" + decimal + "'");
    auto dot = s.find('.');
    std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : s.substr(dot + 1);
    if (ip.empty() && fp.empty())
        throw ParseError("rationalize: empty number '" + decimal + "'");
    if ((!ip.empty() && ip.find_first_not_of("0123456789") != std::string::npos) ||
        (!fp.empty() && fp.find_first_not_of("0123456789") != std::string::npos))
        throw ParseError("rationalize: malformed decimal '" + decimal + "'");
    while (fp.size() > 1 && fp.back() == '0')
        fp.pop_back();
    if (ip.size() + fp.size() > 18)
        throw ParseError("rationalize: too many digits '" + decimal + "'");
    // value = digits / 10^k; nearest n / 2^e via one exact division
    __int128 digits = 0;
    for (char c : ip)
        digits = digits * 10 + (c - '0');
    for (char c : fp)
        digits = digits * 10 + (c - '0');
    __int128 den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i)
        den *= 10;
    __int128 scaled_num = digits << max_exponent;
    __int128 q = scaled_num / den;
    __int128 r = scaled_num % den;
    if (2 * r > den || (2 * r == den && (q % 2) != 0))
        ++q;
    if (q > std::numeric_limits<std::int64_t>::max())
        throw Error("rationalize: overflow");
    return Dyadic((std::int64_t)q, max_exponent);
}

/// Float overload: doubles are dyadic already, so this is exact scaling plus
/// half-even rounding.
inline Dyadic rationalize(double x, int max_exponent) {
    if (std::isnan(x) || std::isinf(x))
        throw Error("rationalize: non-finite input");
    if (x < 0)
        throw Error("rationalize: negative input");
    double scaled = std::ldexp(x, max_exponent);
    if (scaled > 9.0e18)
        throw Error("rationalize: overflow");
    double rounded = std::nearbyint(scaled); // default mode: ties to even
    return Dyadic((std::int64_t)rounded, max_exponent);
}

} // namespace pebbling
