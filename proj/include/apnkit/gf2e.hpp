#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apnkit/error.hpp"

namespace apnkit {

// An element of GF(2^n) in the polynomial basis {1, x, ..., x^(n-1)}:
// bit i is the coefficient of x^i. Addition needs no field context.
struct Elem {
    std::uint32_t bits = 0;

    constexpr Elem() = default;
    constexpr explicit Elem(std::uint32_t b) : bits(b) {}

    constexpr bool is_zero() const { return bits == 0; }
    friend constexpr Elem operator+(Elem a, Elem b) { return Elem{a.bits ^ b.bits}; }
    constexpr Elem& operator+=(Elem b) {
        bits ^= b.bits;
        return *this;
    }
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

inline constexpr Elem kZero{0};
inline constexpr Elem kOne{1};

inline constexpr int kMinDegree = 2;
inline constexpr int kMaxDegree = 24;
inline constexpr int kMaxLogTableDegree = 20;
inline constexpr int kEagerLogTableDegree = 16;

// Discrete logarithm tables with respect to the field generator.
struct LogTable {
    std::vector<std::uint32_t> exp;  // exp[i] = g^i, i < 2^n - 1
    std::vector<std::uint32_t> log;  // log[a] for a != 0; log[0] unused
};

// GF(2^n) for 2 <= n <= 24. Immutable after construction and cheap to copy:
// copies share the same tables. Safe to use from concurrent threads.
class Field {
public:
    // Uses the irreducible of degree n with the smallest integer encoding when
    // `modulus` is absent. Throws DegreeOutOfRange or NotIrreducible.
    explicit Field(int n, std::optional<std::uint32_t> modulus = std::nullopt);

    int degree() const { return n_; }
    std::uint32_t modulus() const { return modulus_; }
    std::uint32_t size() const { return std::uint32_t{1} << n_; }
    std::uint32_t group_order() const { return size() - 1; }
    // (2^n - 1)/3 for even n.
    std::optional<std::uint32_t> cube_index() const;
    Elem generator() const { return generator_; }

    bool contains(Elem a) const { return a.bits < size(); }

    Elem add(Elem a, Elem b) const { return a + b; }
    Elem mul(Elem a, Elem b) const;
    Elem sqr(Elem a) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    // Exponent taken mod 2^n - 1 for nonzero base. pow(0, 0) = 1.
    Elem pow(Elem a, std::int64_t e) const;

    // a^(2^(i mod n)); negative i gives the inverse automorphism.
    Elem frobenius(Elem a, int i) const;

    bool is_cube(Elem a) const;
    Elem order3_element() const;
    // Some z with z^e = y. Throws NotAnEthPower when no such z exists.
    Elem power_root(Elem y, std::uint64_t e) const;
    bool in_subfield(Elem a, int k) const;
    int abs_trace(Elem a) const;

    // Mask m with Tr(lambda * y) = parity(y & m) for every y.
    std::uint32_t trace_form_mask(Elem lambda) const;

    bool has_log_table() const;
    // Built on first call for 17 <= n <= 20; nullptr for n > 20.
    const LogTable* log_table() const;

    std::string to_hex(Elem a) const;
    Elem from_hex(std::string_view text) const;
    int hex_width() const { return (n_ + 3) / 4; }

private:
    struct Shared;

    Elem mul_raw(std::uint32_t a, std::uint32_t b) const;

    int n_ = 0;
    std::uint32_t modulus_ = 0;
    Elem generator_{};
    std::uint32_t trace_mask_ = 0;
    std::shared_ptr<Shared> shared_;
};

// Helpers exposed for tests and for the irreducible search.
namespace poly2 {

int degree(std::uint64_t p);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t f);
std::uint64_t mod(std::uint64_t a, std::uint64_t f);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
// Rabin's test: x^(2^n) = x mod f and gcd(x^(2^(n/p)) - x, f) = 1 for each
// prime p | n.
bool is_irreducible(std::uint64_t f);
std::uint32_t smallest_irreducible(int n);

}  // namespace poly2

std::string hex_string(std::uint64_t value, int width = 0);
std::uint64_t parse_hex(std::string_view text);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

}  // namespace apnkit
