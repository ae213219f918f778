#pragma once

#include <cstdint>

namespace kummerlab {

// Machine-word modular arithmetic used by the scanners (moduli < 2^62).

inline uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline uint64_t powmod64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t result = 1 % m;
    uint64_t b = base % m;
    while (exp) {
        if (exp & 1)
            result = mulmod64(result, b, m);
        b = mulmod64(b, b, m);
        exp >>= 1;
    }
    return result;
}

inline uint64_t invmod64(uint64_t a, uint64_t m) {
    // extended Euclid; gcd(a, m) = 1 assumed
    int64_t t = 0, new_t = 1;
    int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(a % m);
    while (new_r != 0) {
        int64_t q = r / new_r;
        int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0)
        t += static_cast<int64_t>(m);
    return static_cast<uint64_t>(t);
}

} // namespace kummerlab
