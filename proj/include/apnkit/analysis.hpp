#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "apnkit/gf2e.hpp"
#include "apnkit/vector_function.hpp"

namespace apnkit::analysis {

inline constexpr int kMaxGenericDifferentialDegree = 14;
inline constexpr int kMaxWalshDegree = 16;
inline constexpr int kMaxGammaRankDegree = 8;
inline constexpr int kFullQuadraticCheckDegree = 10;

enum class DifferentialMethod { Generic, Quadratic };

struct DifferentialReport {
    int n = 0;
    std::uint64_t uniformity = 0;
    // Smallest a != 0 attaining the uniformity.
    std::uint32_t worst_a = 0;
    // Kernel dimension of x -> F(x)+F(x+a)+F(a)+F(0) -> number of a. Quadratic path only.
    std::map<int, std::uint64_t> kernel_dims;
    DifferentialMethod method = DifferentialMethod::Generic;
    double elapsed_ms = 0;

    bool is_apn() const { return uniformity == 2; }
};

std::string method_name(DifferentialMethod m);

// Exact count over all a != 0 and b; cost 2^(2n). Throws TooLarge for n > 14.
DifferentialReport differential_uniformity_generic(const VectorFunction& f, int jobs = 1);

// True when every derivative x -> F(x)+F(x+a)+F(a)+F(0) is additive. All a
// are checked for n <= 10; larger n checks the basis vectors and a fixed
// pseudo-random sample of 64 directions, each over every x.
bool is_quadratic(const VectorFunction& f, int jobs = 1);

// Kernel-rank method for quadratic functions. Throws NotQuadratic when the
// derivative additivity check fails.
DifferentialReport differential_uniformity_quadratic(const VectorFunction& f, int jobs = 1);

// Number of x with F(x+a)+F(x) = b.
std::uint64_t differential_count(const VectorFunction& f, std::uint32_t a, std::uint32_t b);

// W(lambda, mu) = sum_x (-1)^(Tr(lambda F(x)) + Tr(mu x)), lambda != 0.
struct SpectrumReport {
    int n = 0;
    std::map<std::int64_t, std::uint64_t> value_counts;
    bool parseval_holds = false;
    // Only defined for even n: value set within {0, +-2^(n/2), +-2^((n+2)/2)}.
    std::optional<bool> is_gold_like;
    double elapsed_ms = 0;

    std::vector<std::int64_t> value_set() const;
    std::vector<std::int64_t> magnitude_set() const;  // distinct |W|, ascending
};

// Throws TooLarge for n > 16.
SpectrumReport walsh_spectrum(const VectorFunction& f, int jobs = 1);

// One row per (lambda, mu) in ascending order: lambda_hex,mu_hex,walsh_value.
void write_walsh_csv(const VectorFunction& f, const Field& field, std::ostream& out);

// Single Walsh coefficient by direct summation.
std::int64_t walsh_coefficient(const VectorFunction& f, const Field& field, Elem lambda, Elem mu);

// Every nonzero value is +-2^e with 2e >= n.
bool walsh_values_are_quadratic_shaped(const SpectrumReport& r);

void fwht(std::vector<std::int32_t>& v);

// Graph: D = {(x, F(x))}. WithoutOrigin drops the point at x = 0, the
// alternate convention reported when the graph value disagrees with a
// reference number.
enum class GammaConvention { Graph, WithoutOrigin };

std::string convention_name(GammaConvention c);

struct GammaRankOptions {
    int jobs = 1;
    GammaConvention convention = GammaConvention::Graph;
    // Memory cap for the bit matrix; when absent APNKIT_GAMMA_MEM_MIB is
    // consulted, defaulting to 1024 MiB.
    std::optional<std::uint64_t> memory_limit_mib = std::nullopt;
};

// GF(2)-rank of the 2^(2n) x 2^(2n) matrix M[u][v] = [u + v in D].
// Throws TooLarge for n > 8 or when the bit matrix exceeds the memory cap.
std::uint64_t gamma_rank(const VectorFunction& f, const GammaRankOptions& opts = {});

std::uint64_t gamma_matrix_bytes(int n);

// Random invertible linear map on GF(2)^n, stored as images of the basis.
struct LinearMap {
    std::vector<std::uint32_t> columns;
    std::uint32_t apply(std::uint32_t x) const;
};

LinearMap random_invertible_map(int n, std::uint64_t seed);

// x -> F(L(x)) + c with L a random invertible linear map and c a random shift.
VectorFunction affine_substitute(const VectorFunction& f, std::uint64_t seed);

std::uint64_t probe_uniformity(const VectorFunction& f, std::uint64_t seed);
// An output shift can negate W(lambda, .), so only magnitudes are compared.
std::vector<std::int64_t> probe_spectrum_magnitudes(const VectorFunction& f, std::uint64_t seed);
std::uint64_t probe_gamma_rank(const VectorFunction& f, std::uint64_t seed);

}  // namespace apnkit::analysis
