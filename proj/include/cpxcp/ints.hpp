#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace cpxcp {

// All exponent arithmetic is exact; intermediate Smith-form coefficients can
// outgrow machine words, so everything group-theoretic runs on cpp_int.
using Int = boost::multiprecision::cpp_int;

// Remainder in [0, m) for m > 0, for any sign of a.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    Int g = gcd(a, b);
    Int r = (a / g) * b;
    return r < 0 ? -r : r;
}

// g = gcd(a,b) and x,y with a*x + b*y = g.
inline Int egcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

// Inverse of a mod m (m >= 2); throws if gcd(a, m) != 1.
inline Int inv_mod(const Int& a, const Int& m) {
    Int x, y;
    Int g = egcd(mod_floor(a, m), m, x, y);
    if (g != 1) throw std::domain_error("inv_mod: element not invertible");
    return mod_floor(x, m);
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (Int d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline Int pow_int(Int base, Int exp) {
    if (exp < 0) throw std::domain_error("pow_int: negative exponent");
    Int r = 1;
    while (exp > 0) {
        if ((exp & 1) != 0) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

// Largest e with p^e | n, plus the cofactor n / p^e.
inline int p_valuation(Int n, const Int& p, Int& cofactor) {
    if (n == 0) throw std::domain_error("p_valuation: zero");
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    cofactor = n;
    return e;
}

inline std::string to_string(const Int& v) { return v.str(); }

inline std::int64_t to_i64(const Int& v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer too large for this interface");
    return static_cast<std::int64_t>(v);
}

}  // namespace cpxcp
