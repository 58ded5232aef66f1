#include "apnkit/polyzero.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "apnkit/parallel.hpp"

namespace apnkit::polyzero {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxWitnesses = 64;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_exponent(const Field& field, int s) {
    if (s < 1 || s >= field.degree())
        throw Error(ErrorCode::PreconditionViolated,
                    "exponent parameter s=" + std::to_string(s) + " outside [1, n)");
}

void require_coprime(const Field& field, int s) {
    require_exponent(field, s);
    if (std::gcd(s, field.degree()) != 1)
        throw Error(ErrorCode::PreconditionViolated,
                    "gcd(s, n) = gcd(" + std::to_string(s) + ", " + std::to_string(field.degree()) + ") != 1");
}

void require_even(const Field& field) {
    if (field.degree() % 2 != 0) throw Error(ErrorCode::OddDegreeField, "operation needs an even-degree field");
}

// x^(2^s+1)
Elem gold_power(const Field& field, int s, Elem x) { return field.mul(field.frobenius(x, s), x); }

}  // namespace

Elem eval_pa(const Field& field, int s, Elem a, Elem x) {
    require_exponent(field, s);
    return gold_power(field, s, x) + x + a;
}

int count_zeros_pa(const Field& field, int s, Elem a) {
    require_exponent(field, s);
    if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "P_a requires a != 0");
    int count = 0;
    for (std::uint32_t x = 0; x < field.size(); ++x)
        if ((gold_power(field, s, Elem{x}) + Elem{x} + a).is_zero()) ++count;
    if (std::gcd(s, field.degree()) == 1 && count != 0 && count != 1 && count != 3)
        throw Error(ErrorCode::InvariantViolation,
                    "P_a with a=" + field.to_hex(a) + " has " + std::to_string(count) + " zeros");
    return count;
}

ZeroCounts expected_distribution(int n) {
    const std::uint64_t q = std::uint64_t{1} << n;
    const std::uint64_t half = q / 2;
    if (n % 2 == 0) return {(q - 1) / 3, half, (half - 2) / 3};
    return {(q + 1) / 3, half - 1, (half - 1) / 3};
}

std::vector<std::uint32_t> zero_count_table(const Field& field, int s, int jobs) {
    require_exponent(field, s);
    const std::uint32_t size = field.size();
    const int workers = worker_count(jobs, size);
    std::vector<std::vector<std::uint32_t>> partial(static_cast<std::size_t>(workers));
    // P_a(x) = 0 iff x^(2^s+1) + x = a, so one pass over x counts every a.
    parallel_ranges(workers, 0, size, [&](int w, std::uint64_t lo, std::uint64_t hi) {
        auto& h = partial[static_cast<std::size_t>(w)];
        h.assign(size, 0);
        for (auto x = static_cast<std::uint32_t>(lo); x < hi; ++x)
            ++h[(gold_power(field, s, Elem{x}) + Elem{x}).bits];
    });
    std::vector<std::uint32_t> total = std::move(partial[0]);
    for (std::size_t w = 1; w < partial.size(); ++w)
        for (std::uint32_t a = 0; a < size; ++a) total[a] += partial[w][a];
    return total;
}

ZeroDistribution zero_distribution(const Field& field, int s, int jobs) {
    require_coprime(field, s);
    const auto t0 = Clock::now();
    const auto table = zero_count_table(field, s, jobs);
    ZeroDistribution d;
    d.n = field.degree();
    d.s = s;
    for (std::uint32_t a = 1; a < field.size(); ++a) {
        switch (table[a]) {
            case 0: ++d.counts.m0; break;
            case 1: ++d.counts.m1; break;
            case 3: ++d.counts.m3; break;
            default: ++d.other; break;
        }
    }
    d.expected = expected_distribution(d.n);
    d.matches_closed_form = d.other == 0 && d.counts == d.expected;
    d.elapsed_ms = ms_since(t0);
    return d;
}

void write_zero_csv(const Field& field, int s, const std::vector<std::uint32_t>& counts, std::ostream& out) {
    out << "n,s,a_hex,zero_count\n";
    for (std::uint32_t a = 1; a < field.size(); ++a)
        out << field.degree() << ',' << s << ',' << field.to_hex(Elem{a}) << ',' << counts[a] << '\n';
}

Elem a_map(const Field& field, int s, Elem b) {
    require_even(field);
    require_coprime(field, s);
    if (field.is_cube(b)) throw Error(ErrorCode::CubeInput, "A(b) needs a non-cube b, got " + field.to_hex(b));
    const Elem b1 = b + kOne;
    const Elem num = field.mul(b, field.mul(field.frobenius(b1, s), field.frobenius(b1, -s)));
    const Elem den = gold_power(field, s, b + field.frobenius(b, -s));
    return field.div(num, den);
}

ImageReport image_stats(const Field& field, int s, int jobs) {
    require_even(field);
    require_coprime(field, s);
    const auto t0 = Clock::now();
    const std::uint32_t size = field.size();
    // image[b] = A(b) + 1 for non-cubes, 0 for cubes and b = 0 (A(b) may be any value).
    std::vector<std::uint32_t> image(size, 0);
    parallel_ranges(jobs, 1, size, [&](int, std::uint64_t lo, std::uint64_t hi) {
        for (auto b = static_cast<std::uint32_t>(lo); b < hi; ++b)
            if (!field.is_cube(Elem{b})) image[b] = a_map(field, s, Elem{b}).bits + 1;
    });
    const auto zeros = zero_count_table(field, s, jobs);

    ImageReport r;
    r.n = field.degree();
    r.s = s;
    r.k_even = (r.n / 2) % 2 == 0;
    r.expected_image_size = (size - 1) / 3;
    std::vector<std::vector<Elem>> preimages(size);
    for (std::uint32_t b = 1; b < size; ++b) {
        if (!image[b]) continue;
        ++r.noncube_count;
        preimages[image[b] - 1].push_back(Elem{b});
    }
    r.two_to_one = true;
    r.all_zero_free = true;
    r.converse_holds = true;
    auto witness = [&](std::string kind, Elem a, std::vector<Elem> pre) {
        if (r.witnesses.size() < kMaxWitnesses) r.witnesses.push_back({std::move(kind), a, std::move(pre)});
    };
    for (std::uint32_t a = 0; a < size; ++a) {
        const auto& pre = preimages[a];
        if (pre.empty()) {
            if (a != 0 && zeros[a] == 0) {
                r.converse_holds = false;
                witness("zero_free_outside_image", Elem{a}, {});
            }
            continue;
        }
        ++r.image_size;
        if (pre.size() != 2) {
            r.two_to_one = false;
            witness("preimage_count", Elem{a}, pre);
        } else if (field.mul(pre[0], pre[1]) != kOne) {
            r.two_to_one = false;
            witness("not_inverse_pair", Elem{a}, pre);
        }
        if (a == 0 || zeros[a] != 0) {
            r.all_zero_free = false;
            witness("image_has_zero", Elem{a}, pre);
        }
    }
    r.elapsed_ms = ms_since(t0);
    return r;
}

Elem cubic_from_d(const Field& field, Elem d) {
    require_even(field);
    if (d.is_zero()) throw Error(ErrorCode::ZeroInput, "d + 1/d needs d != 0");
    return d + field.inv(d);
}

bool is_irreducible_cubic(const Field& field, Elem a) {
    require_even(field);
    for (std::uint32_t x = 0; x < field.size(); ++x)
        if ((field.mul(field.sqr(Elem{x}), Elem{x}) + Elem{x} + a).is_zero()) return false;
    return true;
}

CubicReport cubic_table(const Field& field) {
    require_even(field);
    const std::uint32_t size = field.size();
    std::vector<char> has_root(size, 0);
    for (std::uint32_t x = 0; x < size; ++x) has_root[(field.mul(field.sqr(Elem{x}), Elem{x}) + Elem{x}).bits] = 1;
    std::vector<char> hit(size, 0);
    for (std::uint32_t d = 1; d < size; ++d)
        if (!field.is_cube(Elem{d})) hit[cubic_from_d(field, Elem{d}).bits] = 1;
    CubicReport r;
    r.n = field.degree();
    for (std::uint32_t a = 0; a < size; ++a) {
        if (!has_root[a]) r.rootless.push_back(Elem{a});
        if (hit[a]) r.from_noncubes.push_back(Elem{a});
    }
    r.sets_equal = r.rootless == r.from_noncubes;
    return r;
}

int count_zeros_general(const Field& field, int s, Elem alpha, Elem beta, Elem gamma) {
    require_exponent(field, s);
    int count = 0;
    for (std::uint32_t v = 0; v < field.size(); ++v) {
        const Elem x{v};
        const Elem xs = field.frobenius(x, s);
        if ((field.mul(xs, x) + field.mul(alpha, xs) + field.mul(beta, x) + gamma).is_zero()) ++count;
    }
    return count;
}

Normalization normalize_to_pa(const Field& field, int s, Elem alpha, Elem beta, Elem gamma) {
    require_exponent(field, s);
    // Shifting x -> x + alpha gives x^(2^s+1) + lin x + con.
    const Elem lin = field.frobenius(alpha, s) + beta;
    const Elem con = field.mul(alpha, beta) + gamma;
    if (lin.is_zero())
        throw Error(ErrorCode::DegenerateLinearPart, "beta = alpha^(2^s): the shifted polynomial has no x term");
    // Scaling x -> lambda x with lambda^(2^s) = lin makes the x coefficient 1.
    const Elem lambda = field.frobenius(lin, -s);
    Normalization out{field.div(con, field.mul(lin, lambda)), alpha, lambda};
    if (field.degree() <= 12) {
        const int before = count_zeros_general(field, s, alpha, beta, gamma);
        const int after = count_zeros_general(field, s, kZero, kOne, out.a);
        if (before != after)
            throw Error(ErrorCode::InvariantViolation, "normalization changed the zero count");
    }
    return out;
}

Elem eval_g(const Field& field, int s, int k, Elem c, Elem y) {
    const Elem ys = field.frobenius(y, s);
    return field.mul(ys, y) + field.mul(c, ys) + field.mul(field.frobenius(c, k), y) + kOne;
}

GZeroCount eval_g_count(const Field& field, int s, int k, Elem c, int jobs) {
    if (field.degree() != 2 * k)
        throw Error(ErrorCode::PreconditionViolated, "G needs n = 2k");
    if (s < 1 || std::gcd(s, k) != 1)
        throw Error(ErrorCode::PreconditionViolated, "G needs gcd(s, k) = 1");
    const std::uint32_t size = field.size();
    const int workers = worker_count(jobs, size);
    std::vector<GZeroCount> partial(static_cast<std::size_t>(workers));
    const Elem ck = field.frobenius(c, k);
    parallel_ranges(workers, 0, size, [&](int w, std::uint64_t lo, std::uint64_t hi) {
        GZeroCount g;
        for (auto v = static_cast<std::uint32_t>(lo); v < hi; ++v) {
            const Elem y{v};
            const Elem ys = field.frobenius(y, s);
            if (!(field.mul(ys, y) + field.mul(c, ys) + field.mul(ck, y) + kOne).is_zero()) continue;
            ++g.total;
            if (field.mul(field.frobenius(y, k), y) == kOne) ++g.unit_circle;
        }
        partial[static_cast<std::size_t>(w)] = g;
    });
    GZeroCount out;
    for (const auto& g : partial) {
        out.total += g.total;
        out.unit_circle += g.unit_circle;
    }
    return out;
}

}  // namespace apnkit::polyzero
