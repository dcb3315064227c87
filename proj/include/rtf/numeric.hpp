#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace rtf {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline long lgcd(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { long t = a % b; a = b; b = t; }
    return a;
}

inline long llcm(long a, long b) { return a / lgcd(a, b) * b; }

inline Int ipow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline long powmod(long b, long e, long m) {
    long r = 1 % m;
    b %= m; if (b < 0) b += m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

// Trial division; fine for the operand sizes used here.
inline std::map<long, int> factorize(long n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    if (n < 0) n = -n;
    std::map<long, int> f;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
        while (n % p == 0) { f[p]++; n /= p; }
    if (n > 1) f[n]++;
    return f;
}

// n = s^2 * d with d squarefree; returns {s, d}.
inline std::pair<long, long> squarefree_decompose(long n) {
    if (n <= 0) throw std::invalid_argument("squarefree_decompose needs n > 0");
    long s = 1, d = 1;
    for (auto [p, e] : factorize(n)) {
        for (int i = 0; i + 1 < e; i += 2) s *= p;
        if (e & 1) d *= p;
    }
    return {s, d};
}

// Kronecker symbol (a|n), n may be negative or even.
inline int kronecker(long a, long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    int v = 0;
    while (n % 2 == 0) { n /= 2; v++; }
    if (v) {
        long am = ((a % 8) + 8) % 8;
        if (am % 2 == 0) return 0;
        if ((v & 1) && (am == 3 || am == 5)) sign = -sign;
    }
    a %= n; if (a < 0) a += n;
    while (a) {
        int w = 0;
        while (a % 2 == 0) { a /= 2; w++; }
        if (w & 1) {
            long nm = n % 8;
            if (nm == 3 || nm == 5) sign = -sign;
        }
        if (a % 4 == 3 && n % 4 == 3) sign = -sign;
        long t = n % a;
        n = a;
        a = t;
    }
    return n == 1 ? sign : 0;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; p++)
        if (n % p == 0) return false;
    return true;
}

inline bool is_squarefree(long n) {
    if (n == 0) return false;
    return squarefree_decompose(n < 0 ? -n : n).first == 1;
}

}  // namespace rtf
