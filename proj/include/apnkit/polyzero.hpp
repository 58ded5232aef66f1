#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "apnkit/gf2e.hpp"

// Zeros of P_a(x) = x^(2^s+1) + x + a over GF(2^n), the no-zero coefficient
// map A(b), the cubic irreducibility criterion and normalization of general
// x^(2^s+1) + alpha x^(2^s) + beta x + gamma to P_a form.
namespace apnkit::polyzero {

Elem eval_pa(const Field& field, int s, Elem a, Elem x);

// Exhaustive count. Throws ZeroInput for a = 0 and InvariantViolation when
// gcd(s, n) = 1 and the count is not 0, 1 or 3.
int count_zeros_pa(const Field& field, int s, Elem a);

struct ZeroCounts {
    std::uint64_t m0 = 0;
    std::uint64_t m1 = 0;
    std::uint64_t m3 = 0;
    friend bool operator==(const ZeroCounts&, const ZeroCounts&) = default;
};

// Closed forms: even n -> ((2^n-1)/3, 2^(n-1), (2^(n-1)-2)/3),
// odd n -> ((2^n+1)/3, 2^(n-1)-1, (2^(n-1)-1)/3).
ZeroCounts expected_distribution(int n);

struct ZeroDistribution {
    int n = 0;
    int s = 0;
    ZeroCounts counts;
    ZeroCounts expected;
    // Number of a with a zero count outside {0, 1, 3}.
    std::uint64_t other = 0;
    bool matches_closed_form = false;
    double elapsed_ms = 0;
};

// zero_counts[a] = #{x : P_a(x) = 0} for every a, from one pass over x.
std::vector<std::uint32_t> zero_count_table(const Field& field, int s, int jobs = 1);

// Requires gcd(s, n) = 1. A mismatch with the closed forms is reported in the
// result, not thrown.
ZeroDistribution zero_distribution(const Field& field, int s, int jobs = 1);

// Rows "n,s,a_hex,zero_count" for every a != 0, with a header line.
void write_zero_csv(const Field& field, int s, const std::vector<std::uint32_t>& counts, std::ostream& out);

// A(b) = b (b+1)^(2^s + 2^-s) / (b + b^(2^-s))^(2^s+1) for a non-cube b.
Elem a_map(const Field& field, int s, Elem b);

struct ImageWitness {
    std::string kind;  // "preimage_count", "not_inverse_pair", "image_has_zero", "zero_free_outside_image"
    Elem a;
    std::vector<Elem> preimages;
};

struct ImageReport {
    int n = 0;
    int s = 0;
    bool k_even = false;  // n/2 even; the converse is only expected here
    std::uint64_t noncube_count = 0;
    std::uint64_t image_size = 0;
    std::uint64_t expected_image_size = 0;
    bool two_to_one = false;
    bool all_zero_free = false;
    bool converse_holds = false;
    std::vector<ImageWitness> witnesses;
    double elapsed_ms = 0;

    bool image_claim_holds() const {
        return image_size == expected_image_size && two_to_one && converse_holds;
    }
};

// Requires even n and gcd(s, n) = 1. Failures of the converse are
// data: they come back as witnesses.
ImageReport image_stats(const Field& field, int s, int jobs = 1);

Elem cubic_from_d(const Field& field, Elem d);
// x^3 + x + a has no root in the field (equivalently, is irreducible).
bool is_irreducible_cubic(const Field& field, Elem a);

struct CubicReport {
    int n = 0;
    std::vector<Elem> rootless;          // {a : x^3 + x + a has no root}, ascending
    std::vector<Elem> from_noncubes;     // {d + 1/d : d non-cube}, ascending
    bool sets_equal = false;
};

CubicReport cubic_table(const Field& field);

// x -> x + shift, then x -> scale * x, then divide by scale^(2^s+1).
struct Normalization {
    Elem a;
    Elem shift;
    Elem scale;
};

// For x^(2^s+1) + alpha x^(2^s) + beta x + gamma with beta != alpha^(2^s).
// Throws DegenerateLinearPart otherwise. For n <= 12 the zero counts of the
// input and P_a are compared and InvariantViolation is thrown on mismatch.
Normalization normalize_to_pa(const Field& field, int s, Elem alpha, Elem beta, Elem gamma);

// Zeros of x^(2^s+1) + alpha x^(2^s) + beta x + gamma.
int count_zeros_general(const Field& field, int s, Elem alpha, Elem beta, Elem gamma);

struct GZeroCount {
    std::uint64_t total = 0;
    std::uint64_t unit_circle = 0;
};

// G(y) = y^(2^s+1) + c y^(2^s) + c^(2^k) y + 1 over GF(2^2k); unit circle is
// {y : y^(2^k+1) = 1}.
GZeroCount eval_g_count(const Field& field, int s, int k, Elem c, int jobs = 1);

Elem eval_g(const Field& field, int s, int k, Elem c, Elem y);

}  // namespace apnkit::polyzero
