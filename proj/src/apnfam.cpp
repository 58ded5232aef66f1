#include "apnkit/apnfam.hpp"

#include <chrono>
#include <numeric>
#include <random>
#include <vector>

#include "apnkit/analysis.hpp"
#include "apnkit/polyzero.hpp"

namespace apnkit::apnfam {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// x^(2^i + 2^j)
Elem frob_product(const Field& f, Elem x, int i, int j) { return f.mul(f.frobenius(x, i), f.frobenius(x, j)); }

Elem coefficient_c1(const Field& f, int k, int s, Elem omega, Elem beta, Elem gamma) {
    return f.mul(omega, frob_product(f, beta, s, k)) + frob_product(f, gamma, s, k);
}

Elem coefficient_c2(const Field& f, int k, int s, Elem omega, Elem beta, Elem gamma) {
    return f.mul(omega, frob_product(f, beta, k + s, 0)) + frob_product(f, gamma, k + s, 0);
}

}  // namespace

void check_family_shape(const Field& field, int k, int s) {
    const int n = field.degree();
    if (n != 2 * k) throw Error(ErrorCode::PreconditionViolated, "family needs n = 2k");
    if (k % 2 != 0) throw Error(ErrorCode::PreconditionViolated, "family needs k even");
    if (k % 3 == 0) throw Error(ErrorCode::PreconditionViolated, "family needs 3 not dividing k");
    if (s < 1 || std::gcd(s, n) != 1) throw Error(ErrorCode::PreconditionViolated, "family needs gcd(s, 2k) = 1");
}

Elem norm_residual(const Field& field, int s, Elem omega, Elem beta, Elem gamma) {
    return frob_product(field, gamma, s, 0) + field.mul(omega, frob_product(field, beta, s, 0)) + kOne;
}

bool norm_condition(const Field& field, int k, Elem beta, Elem gamma) {
    const std::int64_t e = (std::int64_t{1} << k) - 1;
    return field.pow(gamma, e) != field.pow(beta, e);
}

Coefficients find_beta_gamma(const Field& field, int k, int s) {
    check_family_shape(field, k, s);
    const Elem omega = field.order3_element();
    const std::uint64_t e = (std::uint64_t{1} << s) + 1;
    const std::uint32_t cube_index = *field.cube_index();
    for (std::uint32_t b = 1; b < field.size(); ++b) {
        const Elem beta{b};
        const Elem y = kOne + field.mul(omega, frob_product(field, beta, s, 0));
        if (y.is_zero() || field.pow(y, cube_index) != kOne) continue;
        const Elem gamma = field.power_root(y, e);
        if (norm_condition(field, k, beta, gamma)) return {omega, beta, gamma};
    }
    throw Error(ErrorCode::SearchExhausted,
                "no (beta, gamma) found for k=" + std::to_string(k) + ", s=" + std::to_string(s));
}

Elem default_delta(const Field& field, int k) {
    for (std::uint32_t d = 0; d < field.size(); ++d)
        if (!field.in_subfield(Elem{d}, k)) return Elem{d};
    throw Error(ErrorCode::InvariantViolation, "GF(2^k) is the whole field");
}

FamilyParams make_params(const Field& field, int k, int s, Elem beta, Elem gamma, Elem omega,
                         std::optional<Elem> delta) {
    check_family_shape(field, k, s);
    if (beta.is_zero() || gamma.is_zero()) throw Error(ErrorCode::ZeroInput, "beta and gamma must be nonzero");
    if (omega == kOne || field.mul(field.sqr(omega), omega) != kOne)
        throw Error(ErrorCode::IdentityViolated, "omega does not have order 3");
    if (!norm_residual(field, s, omega, beta, gamma).is_zero())
        throw Error(ErrorCode::IdentityViolated, "gamma^(2^s+1) + omega beta^(2^s+1) + 1 != 0");
    if (!norm_condition(field, k, beta, gamma))
        throw Error(ErrorCode::NormConditionViolated, "gamma^(2^k-1) = beta^(2^k-1)");
    const Elem d = delta ? *delta : default_delta(field, k);
    if (field.in_subfield(d, k))
        throw Error(ErrorCode::DeltaInSubfield, "delta " + field.to_hex(d) + " lies in GF(2^k)");

    FamilyParams p{k, s, omega, beta, gamma, d, {}, {}};
    p.c1 = coefficient_c1(field, k, s, omega, beta, gamma);
    p.c2 = coefficient_c2(field, k, s, omega, beta, gamma);
    if (p.c2 != field.frobenius(p.c1, k))
        throw Error(ErrorCode::InvariantViolation, "c2 != c1^(2^k)");
    return p;
}

FamilyParams construct(const Field& field, int k, int s, std::optional<Elem> delta) {
    const auto c = find_beta_gamma(field, k, s);
    return make_params(field, k, s, c.beta, c.gamma, c.omega, delta);
}

Elem eval_f(const Field& field, const FamilyParams& p, Elem x) {
    const int k = p.k, s = p.s;
    const Elem xs = field.frobenius(x, s);
    const Elem xk = field.frobenius(x, k);
    const Elem xks = field.frobenius(x, k + s);
    return field.mul(xs, x) + field.mul(xks, xk) + field.mul(p.c1, field.mul(xks, x)) +
           field.mul(p.c2, field.mul(xk, xs)) + field.mul(p.delta, field.mul(xk, x));
}

VectorFunction build_f(const Field& field, const FamilyParams& p) {
    return VectorFunction::tabulate(
        field, [&](Elem x) { return eval_f(field, p, x); },
        "F k=" + std::to_string(p.k) + " s=" + std::to_string(p.s));
}

VectorFunction build_f1(const Field& field, int k, int s, Elem c, Elem delta, F1Form form) {
    if (field.degree() != 2 * k) throw Error(ErrorCode::PreconditionViolated, "F1 needs n = 2k");
    const Elem ck = field.frobenius(c, k);
    const Elem e = form == F1Form::Hexanomial ? kOne : c;
    return VectorFunction::tabulate(
        field,
        [&](Elem x) {
            const Elem xs = field.frobenius(x, s);
            const Elem xk = field.frobenius(x, k);
            const Elem xks = field.frobenius(x, k + s);
            const Elem left = field.mul(x, xs + field.mul(e, xk) + field.mul(c, xks));
            const Elem right = field.mul(xs, field.mul(ck, xk) + field.mul(delta, xks));
            return left + right + field.mul(xks, xk);
        },
        "F1 k=" + std::to_string(k) + " s=" + std::to_string(s));
}

VectorFunction comparison_gold_trace(const Field& field) {
    return VectorFunction::tabulate(
        field,
        [&](Elem x) {
            const Elem x3 = field.mul(field.sqr(x), x);
            return x3 + Elem{static_cast<std::uint32_t>(field.abs_trace(field.pow(x, 9)))};
        },
        "x^3+Tr(x^9)");
}

VectorFunction gold_function(const Field& field, int s) {
    return VectorFunction::tabulate(
        field, [&](Elem x) { return field.mul(field.frobenius(x, s), x); },
        "x^(2^" + std::to_string(s) + "+1)");
}

VectorFunction random_quadratic(const Field& field, std::uint64_t seed, int terms) {
    const int n = field.degree();
    std::mt19937_64 rng(seed);
    auto elem = [&] { return Elem{static_cast<std::uint32_t>(rng()) & (field.size() - 1)}; };
    struct Term {
        Elem c;
        int i, j;
    };
    std::vector<Term> quad;
    for (int t = 0; t < terms; ++t) {
        const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        int j = static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
        if (j >= i) ++j;
        quad.push_back({elem(), std::min(i, j), std::max(i, j)});
    }
    const Elem lin_c = elem();
    const int lin_i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const Elem constant = elem();
    return VectorFunction::tabulate(
        field,
        [&](Elem x) {
            Elem y = constant + field.mul(lin_c, field.frobenius(x, lin_i));
            for (const auto& t : quad) y += field.mul(t.c, frob_product(field, x, t.i, t.j));
            return y;
        },
        "random quadratic seed=" + std::to_string(seed));
}

ApnCertificate certify(const Field& field, const FamilyParams& p, int jobs) {
    return certify_function(field, p, build_f(field, p), jobs);
}

ApnCertificate certify_function(const Field& field, const FamilyParams& p, const VectorFunction& f, int jobs) {
    if (f.degree() != field.degree())
        throw Error(ErrorCode::PreconditionViolated, "function degree does not match the field");
    ApnCertificate cert;
    cert.n = field.degree();
    cert.modulus = field.modulus();
    cert.params = p;

    auto t0 = Clock::now();
    const bool omega_ok = p.omega != kOne && field.mul(field.sqr(p.omega), p.omega) == kOne;
    const bool coeffs_ok = p.c1 == coefficient_c1(field, p.k, p.s, p.omega, p.beta, p.gamma) &&
                           p.c2 == coefficient_c2(field, p.k, p.s, p.omega, p.beta, p.gamma);
    cert.lemma_identity = {omega_ok && coeffs_ok && norm_residual(field, p.s, p.omega, p.beta, p.gamma).is_zero(),
                           ms_since(t0)};

    t0 = Clock::now();
    cert.norm_condition = {norm_condition(field, p.k, p.beta, p.gamma), ms_since(t0)};

    t0 = Clock::now();
    const auto g = polyzero::eval_g_count(field, p.s, p.k, p.c1, jobs);
    const double g_ms = ms_since(t0);
    cert.g_total_zeros = g.total;
    cert.g_unit_circle_zeros = g.unit_circle;
    cert.g_total_zero_free = {g.total == 0, g_ms};
    cert.g_unit_circle_zero_free = {g.unit_circle == 0, g_ms};

    t0 = Clock::now();
    try {
        const auto d = analysis::differential_uniformity_quadratic(f, jobs);
        cert.differential_uniformity = d.uniformity;
        cert.differential_method = analysis::method_name(d.method);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotQuadratic) throw;
        if (f.degree() <= analysis::kMaxGenericDifferentialDegree) {
            const auto d = analysis::differential_uniformity_generic(f, jobs);
            cert.differential_uniformity = d.uniformity;
            cert.differential_method = analysis::method_name(d.method);
        } else {
            cert.differential_method = "not-quadratic";
        }
    }
    cert.differential_uniformity_is_2 = {cert.differential_uniformity == 2, ms_since(t0)};
    return cert;
}

}  // namespace apnkit::apnfam
