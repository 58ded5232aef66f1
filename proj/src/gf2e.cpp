#include "apnkit/gf2e.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <mutex>
#include <numeric>
#include <tuple>
#include <utility>

namespace apnkit {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
        case ErrorCode::NotIrreducible: return "NotIrreducible";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::OddDegreeField: return "OddDegreeField";
        case ErrorCode::ZeroInput: return "ZeroInput";
        case ErrorCode::NotAnEthPower: return "NotAnEthPower";
        case ErrorCode::NotASubfieldDegree: return "NotASubfieldDegree";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::CubeInput: return "CubeInput";
        case ErrorCode::DegenerateLinearPart: return "DegenerateLinearPart";
        case ErrorCode::SearchExhausted: return "SearchExhausted";
        case ErrorCode::IdentityViolated: return "IdentityViolated";
        case ErrorCode::NormConditionViolated: return "NormConditionViolated";
        case ErrorCode::DeltaInSubfield: return "DeltaInSubfield";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotQuadratic: return "NotQuadratic";
        case ErrorCode::LengthNotPowerOfTwo: return "LengthNotPowerOfTwo";
        case ErrorCode::MalformedHex: return "MalformedHex";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= v; ++p) {
        if (v % p == 0) {
            out.push_back(p);
            while (v % p == 0) v /= p;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

std::string hex_string(std::uint64_t value, int width) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    do {
        out.insert(out.begin(), digits[value & 0xf]);
        value >>= 4;
    } while (value != 0);
    while (static_cast<int>(out.size()) < width) out.insert(out.begin(), '0');
    return out;
}

std::uint64_t parse_hex(std::string_view text) {
    if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
        text.remove_prefix(2);
    if (text.empty() || text.size() > 16)
        throw Error(ErrorCode::MalformedHex, "malformed hex value '" + std::string(text) + "'");
    std::uint64_t v = 0;
    for (char ch : text) {
        int d;
        if (ch >= '0' && ch <= '9') d = ch - '0';
        else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
        else throw Error(ErrorCode::MalformedHex, "malformed hex value '" + std::string(text) + "'");
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return v;
}

namespace poly2 {

int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t mod(std::uint64_t a, std::uint64_t f) {
    const int df = degree(f);
    for (int d = degree(a); d >= df; d = degree(a)) a ^= f << (d - df);
    return a;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t f) {
    // Operands stay below 2^32, so the 64-bit product cannot overflow.
    a = mod(a, f);
    b = mod(b, f);
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a = mod(a << 1, f);
    }
    return r;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = mod(a, b);
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(std::uint64_t f) {
    const int n = degree(f);
    if (n < 1) return false;
    if (n == 1) return true;
    // x^(2^i) mod f for i = 0..n
    std::vector<std::uint64_t> frob(static_cast<std::size_t>(n) + 1);
    frob[0] = mod(2, f);
    for (int i = 1; i <= n; ++i) frob[i] = mul_mod(frob[i - 1], frob[i - 1], f);
    if (frob[n] != mod(2, f)) return false;
    for (std::uint64_t p : prime_factors(static_cast<std::uint64_t>(n))) {
        const std::uint64_t h = frob[n / p] ^ 2;
        if (gcd(f, h) != 1) return false;
    }
    return true;
}

std::uint32_t smallest_irreducible(int n) {
    for (std::uint64_t f = std::uint64_t{1} << n; f < (std::uint64_t{1} << (n + 1)); ++f)
        if (is_irreducible(f)) return static_cast<std::uint32_t>(f);
    throw Error(ErrorCode::InvariantViolation, "no irreducible polynomial found");
}

}  // namespace poly2

struct Field::Shared {
    // sq[j][v] = ((v << 8j))^2 mod f, squaring is GF(2)-linear.
    std::array<std::array<std::uint32_t, 256>, 3> sq{};
    // Reduction of bits n..n+7 of a product, applied a byte at a time.
    std::array<std::uint32_t, 256> red{};
    mutable std::once_flag log_once;
    mutable std::unique_ptr<LogTable> logs;
};

namespace {

std::uint64_t clmul(std::uint32_t a, std::uint32_t b) {
    std::uint64_t r = 0;
    std::uint64_t wide = a;
    while (b) {
        r ^= wide & (0 - static_cast<std::uint64_t>(b & 1));
        wide <<= 1;
        b >>= 1;
    }
    return r;
}

}  // namespace

Field::Field(int n, std::optional<std::uint32_t> modulus) : n_(n) {
    if (n < kMinDegree || n > kMaxDegree)
        throw Error(ErrorCode::DegreeOutOfRange,
                    "field degree " + std::to_string(n) + " outside [2, 24]");
    if (modulus) {
        if (poly2::degree(*modulus) != n)
            throw Error(ErrorCode::DegreeOutOfRange,
                        "modulus " + hex_string(*modulus) + " does not have degree " + std::to_string(n));
        if (!poly2::is_irreducible(*modulus))
            throw Error(ErrorCode::NotIrreducible, "modulus " + hex_string(*modulus) + " is reducible");
        modulus_ = *modulus;
    } else {
        modulus_ = poly2::smallest_irreducible(n);
    }

    shared_ = std::make_shared<Shared>();
    for (std::uint32_t t = 0; t < 256; ++t) {
        // t * x^n mod f, for t of degree < 8
        std::uint64_t v = static_cast<std::uint64_t>(t) << n_;
        shared_->red[t] = static_cast<std::uint32_t>(poly2::mod(v, modulus_));
    }
    for (int j = 0; j < 3; ++j) {
        for (std::uint32_t v = 0; v < 256; ++v) {
            const std::uint64_t a = static_cast<std::uint64_t>(v) << (8 * j);
            if (a >= size()) continue;
            shared_->sq[j][v] = mul_raw(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a)).bits;
        }
    }

    const std::uint32_t N = group_order();
    const auto factors = prime_factors(N);
    for (std::uint32_t g = 2; g < size(); ++g) {
        bool primitive = true;
        for (auto p : factors) {
            if (pow(Elem{g}, static_cast<std::int64_t>(N / p)) == kOne) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            generator_ = Elem{g};
            break;
        }
    }
    if (generator_.is_zero()) throw Error(ErrorCode::InvariantViolation, "no primitive element found");

    for (int i = 0; i < n_; ++i)
        if (abs_trace(Elem{std::uint32_t{1} << i}) != 0) trace_mask_ |= std::uint32_t{1} << i;

    if (n_ <= kEagerLogTableDegree) (void)log_table();
}

std::optional<std::uint32_t> Field::cube_index() const {
    if (n_ % 2 != 0) return std::nullopt;
    return group_order() / 3;
}

Elem Field::mul_raw(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t p = clmul(a, b);
    // Clear up to 8 high bits per step using red[t] = t * x^n mod f.
    for (int d = poly2::degree(p); d >= n_; d = poly2::degree(p)) {
        const int shift = std::max(n_, d - 7);
        const std::uint64_t chunk = p >> shift;
        p ^= chunk << shift;
        p ^= static_cast<std::uint64_t>(shared_->red[chunk]) << (shift - n_);
    }
    return Elem{static_cast<std::uint32_t>(p)};
}

Elem Field::mul(Elem a, Elem b) const { return mul_raw(a.bits, b.bits); }

Elem Field::sqr(Elem a) const {
    const auto& sq = shared_->sq;
    return Elem{sq[0][a.bits & 0xff] ^ sq[1][(a.bits >> 8) & 0xff] ^ sq[2][(a.bits >> 16) & 0xff]};
}

Elem Field::pow(Elem a, std::int64_t e) const {
    if (a.is_zero()) {
        if (e < 0) throw Error(ErrorCode::DivisionByZero, "zero raised to a negative power");
        return e == 0 ? kOne : kZero;
    }
    const auto N = static_cast<std::int64_t>(group_order());
    std::int64_t r = e % N;
    if (r < 0) r += N;
    Elem acc = kOne;
    Elem base = a;
    auto u = static_cast<std::uint64_t>(r);
    while (u) {
        if (u & 1) acc = mul(acc, base);
        base = sqr(base);
        u >>= 1;
    }
    return acc;
}

Elem Field::inv(Elem a) const {
    if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return pow(a, static_cast<std::int64_t>(group_order()) - 1);
}

Elem Field::frobenius(Elem a, int i) const {
    int j = i % n_;
    if (j < 0) j += n_;
    for (int t = 0; t < j; ++t) a = sqr(a);
    return a;
}

bool Field::is_cube(Elem a) const {
    if (n_ % 2 != 0) throw Error(ErrorCode::OddDegreeField, "cube test needs an even-degree field");
    if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "cube test of zero");
    return pow(a, group_order() / 3) == kOne;
}

Elem Field::order3_element() const {
    if (n_ % 2 != 0) throw Error(ErrorCode::OddDegreeField, "no element of order 3 when n is odd");
    return pow(generator_, group_order() / 3);
}

namespace {

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r0 = ((a % m) + m) % m, r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    }
    return ((s0 % m) + m) % m;
}

}  // namespace

Elem Field::power_root(Elem y, std::uint64_t e) const {
    if (e == 0) {
        if (y == kOne) return kOne;
        throw Error(ErrorCode::NotAnEthPower, "only 1 is a 0-th power");
    }
    if (y.is_zero()) return kZero;
    const std::uint64_t N = group_order();
    const std::uint64_t g = std::gcd(e, N);
    const std::uint64_t m = N / g;
    if (pow(y, static_cast<std::int64_t>(m)) != kOne)
        throw Error(ErrorCode::NotAnEthPower,
                    to_hex(y) + " is not a " + std::to_string(e) + "-th power");
    if (m == 1) return kOne;
    if (std::gcd(g, m) == 1) {
        // y lies in the order-m subgroup, where x -> x^e is a bijection.
        const auto u = inverse_mod(static_cast<std::int64_t>(e % m), static_cast<std::int64_t>(m));
        return pow(y, u);
    }
    if (const LogTable* lt = log_table()) {
        const std::uint64_t L = lt->log[y.bits];
        const auto u = inverse_mod(static_cast<std::int64_t>((e / g) % m), static_cast<std::int64_t>(m));
        const std::uint64_t j = ((L / g) % m) * static_cast<std::uint64_t>(u) % m;
        return Elem{lt->exp[j]};
    }
    for (std::uint32_t z = 1; z < size(); ++z)
        if (pow(Elem{z}, static_cast<std::int64_t>(e % N)) == y) return Elem{z};
    throw Error(ErrorCode::InvariantViolation, "power_root: exhaustive scan found no root");
}

bool Field::in_subfield(Elem a, int k) const {
    if (k < 1 || n_ % k != 0)
        throw Error(ErrorCode::NotASubfieldDegree,
                    std::to_string(k) + " does not divide " + std::to_string(n_));
    return frobenius(a, k) == a;
}

int Field::abs_trace(Elem a) const {
    Elem t = a;
    Elem cur = a;
    for (int i = 1; i < n_; ++i) {
        cur = sqr(cur);
        t += cur;
    }
    return static_cast<int>(t.bits);
}

std::uint32_t Field::trace_form_mask(Elem lambda) const {
    std::uint32_t m = 0;
    for (int i = 0; i < n_; ++i) {
        const Elem prod = mul(lambda, Elem{std::uint32_t{1} << i});
        if (std::popcount(prod.bits & trace_mask_) & 1) m |= std::uint32_t{1} << i;
    }
    return m;
}

bool Field::has_log_table() const { return n_ <= kMaxLogTableDegree; }

const LogTable* Field::log_table() const {
    if (n_ > kMaxLogTableDegree) return nullptr;
    std::call_once(shared_->log_once, [this] {
        auto lt = std::make_unique<LogTable>();
        const std::uint32_t N = group_order();
        lt->exp.resize(N);
        lt->log.assign(size(), 0);
        Elem cur = kOne;
        for (std::uint32_t i = 0; i < N; ++i) {
            lt->exp[i] = cur.bits;
            lt->log[cur.bits] = i;
            cur = mul(cur, generator_);
        }
        shared_->logs = std::move(lt);
    });
    return shared_->logs.get();
}

std::string Field::to_hex(Elem a) const { return hex_string(a.bits, hex_width()); }

Elem Field::from_hex(std::string_view text) const {
    const std::uint64_t v = parse_hex(text);
    if (v >= size())
        throw Error(ErrorCode::MalformedHex,
                    "value " + std::string(text) + " is not an element of GF(2^" + std::to_string(n_) + ")");
    return Elem{static_cast<std::uint32_t>(v)};
}

}  // namespace apnkit
