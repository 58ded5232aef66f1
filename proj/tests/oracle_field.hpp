#pragma once

#include <cstdint>

// Deliberately slow reference arithmetic for the tests: bit-serial
// shift-and-add multiplication with long-division reduction, and
// irreducibility by trial division. Shares nothing with src/.
namespace oracle_field {

inline int deg(std::uint64_t p) {
    int d = -1;
    for (int i = 0; i < 64; ++i)
        if ((p >> i) & 1) d = i;
    return d;
}

inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    const int dm = deg(m);
    for (int d = deg(a); d >= dm; d = deg(a)) a ^= m << (d - dm);
    return a;
}

inline std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    for (int i = 0; i < 32; ++i)
        if ((b >> i) & 1) r ^= a << i;
    return r;
}

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus) {
    return static_cast<std::uint32_t>(poly_mod(poly_mul(a, b), modulus));
}

inline std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t modulus) {
    std::uint32_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a, modulus);
    return r;
}

// Any factor of a reducible degree-n polynomial has degree <= n/2.
inline bool irreducible_by_trial_division(std::uint64_t f) {
    const int n = deg(f);
    if (n < 1) return false;
    for (std::uint64_t g = 2; deg(g) <= n / 2; ++g)
        if (poly_mod(f, g) == 0) return false;
    return true;
}

}  // namespace oracle_field
