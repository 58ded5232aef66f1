#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "apnkit/gf2e.hpp"
#include "apnkit/vector_function.hpp"

// The five-term quadratic APN family over GF(2^2k), k even and 3 not dividing k:
//
//   F(x) = x^(2^s+1) + x^(2^(k+s)+2^k) + c1 x^(2^(k+s)+1) + c2 x^(2^k+2^s) + delta x^(2^k+1)
//
// with c1 = omega beta^(2^s+2^k) + gamma^(2^s+2^k),
//      c2 = omega beta^(2^(k+s)+1) + gamma^(2^(k+s)+1) = c1^(2^k),
// where gamma^(2^s+1) + omega beta^(2^s+1) + 1 = 0, gamma^(2^k-1) != beta^(2^k-1),
// omega has order 3 and delta lies outside GF(2^k).
namespace apnkit::apnfam {

struct Coefficients {
    Elem omega;
    Elem beta;
    Elem gamma;
};

struct FamilyParams {
    int k = 0;
    int s = 0;
    Elem omega;
    Elem beta;
    Elem gamma;
    Elem delta;
    Elem c1;
    Elem c2;

    friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

// Throws PreconditionViolated unless n = 2k, k even, 3 does not divide k and
// gcd(s, 2k) = 1.
void check_family_shape(const Field& field, int k, int s);

// Scans beta = 1, 2, 3, ... (ascending encoding) and returns the first beta
// for which 1 + omega beta^(2^s+1) is a nonzero cube whose (2^s+1)-th root
// gamma satisfies gamma^(2^k-1) != beta^(2^k-1). The scan order is part of the
// output contract. Throws SearchExhausted if no beta qualifies.
Coefficients find_beta_gamma(const Field& field, int k, int s);

// gamma^(2^s+1) + omega beta^(2^s+1) + 1
Elem norm_residual(const Field& field, int s, Elem omega, Elem beta, Elem gamma);
bool norm_condition(const Field& field, int k, Elem beta, Elem gamma);

// Smallest-encoding element outside GF(2^k).
Elem default_delta(const Field& field, int k);

// Throws IdentityViolated, NormConditionViolated or DeltaInSubfield.
FamilyParams make_params(const Field& field, int k, int s, Elem beta, Elem gamma, Elem omega,
                         std::optional<Elem> delta = std::nullopt);

Elem eval_f(const Field& field, const FamilyParams& p, Elem x);
VectorFunction build_f(const Field& field, const FamilyParams& p);

// Experimental hexanomial
//   F1(x) = x (x^(2^s) + e x^(2^k) + c x^(2^(k+s))) + x^(2^s) (c^(2^k) x^(2^k) + delta x^(2^(k+s)))
//           + x^(2^(k+s)+2^k)
// with e = 1 (Hexanomial) or e = c (AsPrinted). The AsPrinted variant is not
// APN on the fields we have checked.
enum class F1Form { Hexanomial, AsPrinted };

VectorFunction build_f1(const Field& field, int k, int s, Elem c, Elem delta, F1Form form = F1Form::Hexanomial);

// x -> x^3 + Tr(x^9)
VectorFunction comparison_gold_trace(const Field& field);

VectorFunction gold_function(const Field& field, int s);

// sum of `terms` random c x^(2^i+2^j) with i < j, plus a random linear term
// c x^(2^i) and a random constant. Deterministic in the seed.
VectorFunction random_quadratic(const Field& field, std::uint64_t seed, int terms = 4);

struct CheckResult {
    bool passed = false;
    double elapsed_ms = 0;
};

struct ApnCertificate {
    int n = 0;
    std::uint32_t modulus = 0;
    FamilyParams params;
    CheckResult lemma_identity;
    CheckResult norm_condition;
    CheckResult g_total_zero_free;
    CheckResult g_unit_circle_zero_free;
    CheckResult differential_uniformity_is_2;
    std::uint64_t g_total_zeros = 0;
    std::uint64_t g_unit_circle_zeros = 0;
    std::uint64_t differential_uniformity = 0;
    std::string differential_method;

    bool valid() const {
        return lemma_identity.passed && norm_condition.passed && g_total_zero_free.passed &&
               g_unit_circle_zero_free.passed && differential_uniformity_is_2.passed;
    }
};

// Runs every check and records the outcome; never throws for a failed check.
// The differential check uses the kernel-rank method (the family is quadratic).
ApnCertificate certify(const Field& field, const FamilyParams& p, int jobs = 1);

// Same checks, with the differential check run on `f` instead of a freshly
// tabulated F (e.g. a table read back from a file).
ApnCertificate certify_function(const Field& field, const FamilyParams& p, const VectorFunction& f, int jobs = 1);

// find_beta_gamma + make_params with the default (or given) delta.
FamilyParams construct(const Field& field, int k, int s, std::optional<Elem> delta = std::nullopt);

}  // namespace apnkit::apnfam
