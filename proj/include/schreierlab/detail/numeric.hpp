#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

namespace schreierlab::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Inverse mod a prime p (p > value > 0).
inline u64 inv_mod_prime(u64 value, u64 p) {
    return powmod(value % p, p - 2, p);
}

inline std::optional<u64> checked_mul(u64 a, u64 b) {
    if (a != 0 && b > UINT64_MAX / a) return std::nullopt;
    return a * b;
}

// n! when it fits 64 bits, otherwise nullopt.
inline std::optional<u64> factorial_exact(u64 n) {
    u64 acc = 1;
    for (u64 i = 2; i <= n; ++i) {
        auto next = checked_mul(acc, i);
        if (!next) return std::nullopt;
        acc = *next;
    }
    return acc;
}

inline double log_factorial(u64 n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

// n0 * (n0-1) * ... * (n0-r+1)
inline std::optional<u64> falling_factorial(u64 n0, u64 r) {
    u64 acc = 1;
    for (u64 i = 0; i < r; ++i) {
        auto next = checked_mul(acc, n0 - i);
        if (!next) return std::nullopt;
        acc = *next;
    }
    return acc;
}

inline std::optional<u64> checked_pow(u64 base, u64 exp) {
    u64 acc = 1;
    for (u64 i = 0; i < exp; ++i) {
        auto next = checked_mul(acc, base);
        if (!next) return std::nullopt;
        acc = *next;
    }
    return acc;
}

} // namespace schreierlab::detail
