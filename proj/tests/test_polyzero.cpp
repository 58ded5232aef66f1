#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "apnkit/polyzero.hpp"
#include "oracle_field.hpp"

using namespace apnkit;
using namespace apnkit::polyzero;

namespace {

bool throws_code(auto&& fn, ErrorCode code) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

// Zero count of x^(2^s+1) + x + a using only the schoolbook oracle.
int oracle_zero_count(const Field& f, int s, std::uint32_t a) {
    int count = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        const std::uint32_t xs = oracle_field::pow(x, std::uint64_t{1} << s, f.modulus());
        if ((oracle_field::mul(xs, x, f.modulus()) ^ x ^ a) == 0) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("P_a over GF(4)") {
    const Field f(2);
    const Elem w{0x2}, w2{0x3};
    CHECK(eval_pa(f, 1, kOne, kZero) == kOne);
    CHECK(eval_pa(f, 1, w, kZero) == w);
    CHECK(eval_pa(f, 1, kOne, w) == w);
    CHECK(eval_pa(f, 1, w, w2) == kZero);
    CHECK(count_zeros_pa(f, 1, kOne) == 0);
    CHECK(count_zeros_pa(f, 1, w) == 1);
    CHECK(throws_code([&] { (void)count_zeros_pa(f, 1, kZero); }, ErrorCode::ZeroInput));
    CHECK(throws_code([&] { (void)eval_pa(f, 2, kOne, kOne); }, ErrorCode::PreconditionViolated));
}

TEST_CASE("zero counts agree with the schoolbook oracle") {
    for (int n : {3, 4, 5, 6}) {
        const Field f(n);
        for (int s = 1; s < n; ++s) {
            const auto table = zero_count_table(f, s, 3);
            for (std::uint32_t a = 1; a < f.size(); ++a) {
                const int want = oracle_zero_count(f, s, a);
                REQUIRE(static_cast<int>(table[a]) == want);
                if (std::gcd(s, n) == 1) REQUIRE(count_zeros_pa(f, s, Elem{a}) == want);
            }
        }
    }
}

TEST_CASE("zero distribution closed forms") {
    CHECK(expected_distribution(4) == ZeroCounts{5, 8, 2});
    CHECK(expected_distribution(6) == ZeroCounts{21, 32, 10});
    CHECK(expected_distribution(2) == ZeroCounts{1, 2, 0});
    CHECK(expected_distribution(5) == ZeroCounts{11, 15, 5});

    const auto d2 = zero_distribution(Field(2), 1);
    CHECK(d2.counts == ZeroCounts{1, 2, 0});

    for (int n = 2; n <= 12; ++n) {
        const Field f(n);
        for (int s = 1; s < n; ++s) {
            if (std::gcd(s, n) != 1) continue;
            const auto d = zero_distribution(f, s);
            CHECK(d.matches_closed_form);
            CHECK(d.other == 0);
            CHECK(d.counts.m0 + d.counts.m1 + d.counts.m3 == f.group_order());
        }
    }
    CHECK(zero_distribution(Field(8), 1).counts.m3 > 0);
    CHECK(throws_code([] { (void)zero_distribution(Field(6), 2); }, ErrorCode::PreconditionViolated));
}

TEST_CASE("zero distribution does not depend on the worker count") {
    const Field f(12);
    const auto a = zero_distribution(f, 5, 1);
    const auto b = zero_distribution(f, 5, 4);
    CHECK(a.counts == b.counts);
    CHECK(zero_count_table(f, 5, 1) == zero_count_table(f, 5, 7));
}

TEST_CASE("A(b) over GF(4)") {
    const Field f(2);
    const Elem w{0x2}, w2{0x3};
    // (w + 1) / w^(2^-1) computed with table arithmetic: w + 1 = w^2, w^(2^-1) = w^2
    CHECK(a_map(f, 1, w) == kOne);
    CHECK(a_map(f, 1, w2) == kOne);
    CHECK(throws_code([&] { (void)a_map(f, 1, kOne); }, ErrorCode::CubeInput));
    CHECK(throws_code([] { (void)a_map(Field(3), 1, Elem{2}); }, ErrorCode::OddDegreeField));
    const auto r = image_stats(f, 1);
    CHECK(r.image_size == 1);
    CHECK(r.two_to_one);
}

TEST_CASE("non-cube coefficients give zero-free P_a") {
    for (int n = 2; n <= 10; n += 2) {
        const Field f(n);
        for (int s = 1; s < n; ++s) {
            if (std::gcd(s, n) != 1) continue;
            for (std::uint32_t b = 1; b < f.size(); ++b) {
                if (f.is_cube(Elem{b})) continue;
                const Elem a = a_map(f, s, Elem{b});
                REQUIRE(count_zeros_pa(f, s, a) == 0);
                REQUIRE(a_map(f, s, f.inv(Elem{b})) == a);
            }
        }
    }
}

TEST_CASE("s = 1 closed form of A") {
    for (int n : {4, 6, 8, 10}) {
        const Field f(n);
        for (std::uint32_t d = 1; d < f.size(); ++d) {
            if (f.is_cube(Elem{d})) continue;
            CHECK(a_map(f, 1, f.sqr(Elem{d})) == Elem{d} + f.inv(Elem{d}));
        }
    }
}

TEST_CASE("image statistics") {
    const auto r8 = image_stats(Field(8), 1);
    CHECK(r8.image_size == 85);
    CHECK(r8.expected_image_size == 85);
    CHECK(r8.noncube_count == 170);
    CHECK(r8.image_claim_holds());
    CHECK(r8.all_zero_free);
    CHECK(r8.witnesses.empty());

    for (int n = 2; n <= 10; n += 2) {
        const Field f(n);
        for (int s = 1; s < n; ++s) {
            if (std::gcd(s, n) != 1) continue;
            const auto r = image_stats(f, s, 2);
            CHECK(r.k_even == ((n / 2) % 2 == 0));
            CHECK(r.all_zero_free);
            CHECK(r.image_claim_holds());
        }
    }
    CHECK(throws_code([] { (void)image_stats(Field(5), 1); }, ErrorCode::OddDegreeField));
}

TEST_CASE("cubic criterion") {
    const Field f(2);
    const Elem w{0x2};
    CHECK(cubic_from_d(f, w) == kOne);
    CHECK(is_irreducible_cubic(f, kOne));
    CHECK_FALSE(is_irreducible_cubic(f, w));
    CHECK(throws_code([&] { (void)cubic_from_d(f, kZero); }, ErrorCode::ZeroInput));

    for (int n = 2; n <= 12; n += 2) {
        const Field fn(n);
        const auto r = cubic_table(fn);
        CHECK(r.sets_equal);
        CHECK(r.rootless.size() == fn.group_order() / 3);
        for (Elem a : r.from_noncubes) CHECK(is_irreducible_cubic(fn, a));
    }
}

TEST_CASE("normalization to P_a form") {
    const Field f16(4);
    const auto id = normalize_to_pa(f16, 1, kZero, kOne, Elem{0x7});
    CHECK(id.a == Elem{0x7});
    CHECK(id.shift == kZero);
    CHECK(id.scale == kOne);

    CHECK(throws_code([] { (void)normalize_to_pa(Field(2), 1, kOne, kOne, kOne); }, ErrorCode::DegenerateLinearPart));

    std::mt19937_64 rng(5);
    for (int n : {4, 5, 8}) {
        const Field f(n);
        for (int t = 0; t < 200; ++t) {
            const Elem al{static_cast<std::uint32_t>(rng()) & (f.size() - 1)};
            const Elem be{static_cast<std::uint32_t>(rng()) & (f.size() - 1)};
            const Elem ga{static_cast<std::uint32_t>(rng()) & (f.size() - 1)};
            const int s = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
            if (f.frobenius(al, s) == be) continue;
            const auto nz = normalize_to_pa(f, s, al, be, ga);
            // explicit substitution: P(x) at x = scale*y + shift equals scale^(2^s+1) * (y^(2^s+1) + y + a)
            const Elem k = f.mul(f.frobenius(nz.scale, s), nz.scale);
            for (std::uint32_t y = 0; y < f.size(); y += 3) {
                const Elem x = f.mul(nz.scale, Elem{y}) + nz.shift;
                const Elem xs = f.frobenius(x, s);
                const Elem lhs = f.mul(xs, x) + f.mul(al, xs) + f.mul(be, x) + ga;
                const Elem ys = f.frobenius(Elem{y}, s);
                REQUIRE(lhs == f.mul(k, f.mul(ys, Elem{y}) + Elem{y} + nz.a));
            }
            REQUIRE(count_zeros_general(f, s, al, be, ga) == count_zeros_general(f, s, kZero, kOne, nz.a));
        }
    }
}

TEST_CASE("G zero counts") {
    const Field f16(4);
    // c = 0: y^3 + 1 has the three cube roots of unity as zeros
    const auto g0 = eval_g_count(f16, 1, 2, kZero);
    CHECK(g0.total == 3);
    std::uint64_t unit = 0;
    for (std::uint32_t y = 1; y < 16; ++y)
        if (f16.pow(Elem{y}, 3) == kOne && f16.pow(Elem{y}, 5) == kOne) ++unit;
    CHECK(g0.unit_circle == unit);

    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        const Elem c{static_cast<std::uint32_t>(rng()) & 0xff};
        const Field f(8);
        const auto g = eval_g_count(f, 3, 4, c, 3);
        CHECK(g.unit_circle <= g.total);
        std::uint64_t total = 0;
        for (std::uint32_t y = 0; y < 256; ++y) total += eval_g(f, 3, 4, c, Elem{y}).is_zero();
        CHECK(g.total == total);
    }
    CHECK(throws_code([] { (void)eval_g_count(Field(8), 2, 4, kOne); }, ErrorCode::PreconditionViolated));
    CHECK(throws_code([] { (void)eval_g_count(Field(8), 1, 3, kOne); }, ErrorCode::PreconditionViolated));
}

TEST_CASE("zero CSV rows") {
    const Field f(4);
    std::ostringstream out;
    write_zero_csv(f, 1, zero_count_table(f, 1), out);
    const std::string text = out.str();
    CHECK(text.rfind("n,s,a_hex,zero_count\n4,1,1,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 16);
}
