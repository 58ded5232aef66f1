#include "apnkit/analysis.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <random>
#include <set>

#include "apnkit/parallel.hpp"

namespace apnkit::analysis {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Rank of up to 32 vectors of width <= 32 bits.
int small_rank(std::vector<std::uint32_t> rows) {
    int rank = 0;
    for (int bit = 31; bit >= 0; --bit) {
        const std::uint32_t mask = std::uint32_t{1} << bit;
        auto it = std::find_if(rows.begin() + rank, rows.end(), [&](std::uint32_t r) { return r & mask; });
        if (it == rows.end()) continue;
        std::iter_swap(rows.begin() + rank, it);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (static_cast<int>(i) != rank && (rows[i] & mask)) rows[i] ^= rows[static_cast<std::size_t>(rank)];
        ++rank;
    }
    return rank;
}

std::uint32_t derivative_at(const VectorFunction& f, std::uint32_t a, std::uint32_t x) {
    return f.at(x) ^ f.at(x ^ a) ^ f.at(a) ^ f.at(0);
}

std::vector<std::uint32_t> derivative_basis_images(const VectorFunction& f, std::uint32_t a) {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(f.degree()));
    for (int i = 0; i < f.degree(); ++i) v[static_cast<std::size_t>(i)] = derivative_at(f, a, std::uint32_t{1} << i);
    return v;
}

bool derivative_is_additive(const VectorFunction& f, std::uint32_t a) {
    const auto images = derivative_basis_images(f, a);
    // Walk x in Gray-code order so the linear extension costs one XOR per step.
    std::uint32_t lin = 0;
    std::uint32_t x = 0;
    if (derivative_at(f, a, 0) != 0) return false;
    for (std::uint32_t i = 1; i < f.size(); ++i) {
        const int bit = std::countr_zero(i);
        x ^= std::uint32_t{1} << bit;
        lin ^= images[static_cast<std::size_t>(bit)];
        if (derivative_at(f, a, x) != lin) return false;
    }
    return true;
}

std::vector<std::uint32_t> quadratic_check_directions(int n) {
    std::vector<std::uint32_t> dirs;
    const std::uint32_t size = std::uint32_t{1} << n;
    if (n <= kFullQuadraticCheckDegree) {
        for (std::uint32_t a = 1; a < size; ++a) dirs.push_back(a);
        return dirs;
    }
    for (int i = 0; i < n; ++i) dirs.push_back(std::uint32_t{1} << i);
    std::mt19937_64 rng(0x5eed'0001ULL + static_cast<std::uint64_t>(n));
    while (dirs.size() < static_cast<std::size_t>(n) + 64) {
        const auto a = static_cast<std::uint32_t>(rng() & (size - 1));
        if (a != 0) dirs.push_back(a);
    }
    return dirs;
}

}  // namespace

std::string method_name(DifferentialMethod m) {
    return m == DifferentialMethod::Generic ? "generic" : "quadratic";
}

std::uint64_t differential_count(const VectorFunction& f, std::uint32_t a, std::uint32_t b) {
    std::uint64_t c = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x)
        if ((f.at(x) ^ f.at(x ^ a)) == b) ++c;
    return c;
}

DifferentialReport differential_uniformity_generic(const VectorFunction& f, int jobs) {
    if (f.degree() > kMaxGenericDifferentialDegree)
        throw Error(ErrorCode::TooLarge, "generic differential check limited to n <= 14");
    const auto t0 = Clock::now();
    const std::uint32_t size = f.size();
    const int workers = worker_count(jobs, size - 1);
    struct Partial {
        std::uint64_t best = 0;
        std::uint32_t best_a = 0;
    };
    std::vector<Partial> partial(static_cast<std::size_t>(workers));
    parallel_ranges(workers, 1, size, [&](int w, std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint32_t> counts(size);
        Partial p;
        for (auto a = static_cast<std::uint32_t>(lo); a < hi; ++a) {
            std::fill(counts.begin(), counts.end(), 0);
            std::uint32_t local = 0;
            for (std::uint32_t x = 0; x < size; ++x) local = std::max(local, ++counts[f.at(x) ^ f.at(x ^ a)]);
            if (local > p.best) {
                p.best = local;
                p.best_a = a;
            }
        }
        partial[static_cast<std::size_t>(w)] = p;
    });
    DifferentialReport r;
    r.n = f.degree();
    r.method = DifferentialMethod::Generic;
    for (const auto& p : partial) {
        if (p.best > r.uniformity) {
            r.uniformity = p.best;
            r.worst_a = p.best_a;
        }
    }
    r.elapsed_ms = ms_since(t0);
    return r;
}

bool is_quadratic(const VectorFunction& f, int jobs) {
    const auto dirs = quadratic_check_directions(f.degree());
    const int workers = worker_count(jobs, dirs.size());
    std::vector<char> ok(static_cast<std::size_t>(workers), 1);
    parallel_ranges(workers, 0, dirs.size(), [&](int w, std::uint64_t lo, std::uint64_t hi) {
        for (auto i = lo; i < hi; ++i) {
            if (!derivative_is_additive(f, dirs[i])) {
                ok[static_cast<std::size_t>(w)] = 0;
                return;
            }
        }
    });
    return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

DifferentialReport differential_uniformity_quadratic(const VectorFunction& f, int jobs) {
    const auto t0 = Clock::now();
    if (!is_quadratic(f, jobs))
        throw Error(ErrorCode::NotQuadratic, "derivatives of '" + f.label() + "' are not additive");
    const std::uint32_t size = f.size();
    const int n = f.degree();
    const int workers = worker_count(jobs, size - 1);
    struct Partial {
        std::vector<std::uint64_t> hist;
        int best = -1;
        std::uint32_t best_a = 0;
    };
    std::vector<Partial> partial(static_cast<std::size_t>(workers));
    parallel_ranges(workers, 1, size, [&](int w, std::uint64_t lo, std::uint64_t hi) {
        Partial p;
        p.hist.assign(static_cast<std::size_t>(n) + 1, 0);
        for (auto a = static_cast<std::uint32_t>(lo); a < hi; ++a) {
            const int d = n - small_rank(derivative_basis_images(f, a));
            ++p.hist[static_cast<std::size_t>(d)];
            if (d > p.best) {
                p.best = d;
                p.best_a = a;
            }
        }
        partial[static_cast<std::size_t>(w)] = std::move(p);
    });
    DifferentialReport r;
    r.n = n;
    r.method = DifferentialMethod::Quadratic;
    int best = -1;
    for (const auto& p : partial) {
        for (int d = 0; d <= n; ++d)
            if (p.hist[static_cast<std::size_t>(d)]) r.kernel_dims[d] += p.hist[static_cast<std::size_t>(d)];
        if (p.best > best) {
            best = p.best;
            r.worst_a = p.best_a;
        }
    }
    r.uniformity = best < 0 ? 0 : std::uint64_t{1} << best;
    r.elapsed_ms = ms_since(t0);
    return r;
}

void fwht(std::vector<std::int32_t>& v) {
    const std::size_t len = v.size();
    for (std::size_t h = 1; h < len; h <<= 1) {
        for (std::size_t i = 0; i < len; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const std::int32_t x = v[j];
                const std::int32_t y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
    }
}

std::vector<std::int64_t> SpectrumReport::value_set() const {
    std::vector<std::int64_t> out;
    for (const auto& [v, c] : value_counts)
        if (c) out.push_back(v);
    return out;
}

std::vector<std::int64_t> SpectrumReport::magnitude_set() const {
    std::set<std::int64_t> m;
    for (const auto& [v, c] : value_counts)
        if (c) m.insert(v < 0 ? -v : v);
    return {m.begin(), m.end()};
}

SpectrumReport walsh_spectrum(const VectorFunction& f, int jobs) {
    const int n = f.degree();
    if (n > kMaxWalshDegree) throw Error(ErrorCode::TooLarge, "Walsh spectrum limited to n <= 16");
    const auto t0 = Clock::now();
    const std::uint32_t size = f.size();
    const std::int64_t offset = size;
    const std::uint64_t parseval = std::uint64_t{1} << (2 * n);
    const int workers = worker_count(jobs, size - 1);
    struct Partial {
        std::vector<std::uint64_t> hist;
        bool parseval = true;
    };
    std::vector<Partial> partial(static_cast<std::size_t>(workers));
    // Components are enumerated by their linear mask; lambda -> Tr(lambda .)
    // is a bijection onto the nonzero masks, so the multiset is unchanged.
    parallel_ranges(workers, 1, size, [&](int w, std::uint64_t lo, std::uint64_t hi) {
        Partial p;
        p.hist.assign(2 * static_cast<std::size_t>(size) + 1, 0);
        std::vector<std::int32_t> v(size);
        for (auto mask = static_cast<std::uint32_t>(lo); mask < hi; ++mask) {
            for (std::uint32_t x = 0; x < size; ++x) v[x] = (std::popcount(f.at(x) & mask) & 1) ? -1 : 1;
            fwht(v);
            std::uint64_t sum_sq = 0;
            for (std::uint32_t u = 0; u < size; ++u) {
                ++p.hist[static_cast<std::size_t>(v[u] + offset)];
                sum_sq += static_cast<std::uint64_t>(static_cast<std::int64_t>(v[u]) * v[u]);
            }
            if (sum_sq != parseval) p.parseval = false;
        }
        partial[static_cast<std::size_t>(w)] = std::move(p);
    });
    SpectrumReport r;
    r.n = n;
    r.parseval_holds = true;
    std::vector<std::uint64_t> hist(2 * static_cast<std::size_t>(size) + 1, 0);
    for (const auto& p : partial) {
        for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += p.hist[i];
        r.parseval_holds = r.parseval_holds && p.parseval;
    }
    for (std::size_t i = 0; i < hist.size(); ++i)
        if (hist[i]) r.value_counts[static_cast<std::int64_t>(i) - offset] = hist[i];
    if (n % 2 == 0) {
        const std::int64_t a = std::int64_t{1} << (n / 2);
        const std::int64_t b = std::int64_t{1} << ((n + 2) / 2);
        bool gold = true;
        for (const auto& [val, c] : r.value_counts)
            if (val != 0 && val != a && val != -a && val != b && val != -b) gold = false;
        r.is_gold_like = gold;
    }
    r.elapsed_ms = ms_since(t0);
    return r;
}

void write_walsh_csv(const VectorFunction& f, const Field& field, std::ostream& out) {
    if (f.degree() != field.degree())
        throw Error(ErrorCode::PreconditionViolated, "function and field degrees differ");
    if (f.degree() > kMaxWalshDegree) throw Error(ErrorCode::TooLarge, "Walsh spectrum limited to n <= 16");
    const std::uint32_t size = f.size();
    std::vector<std::uint32_t> mu_mask(size);
    for (std::uint32_t mu = 0; mu < size; ++mu) mu_mask[mu] = field.trace_form_mask(Elem{mu});
    std::vector<std::int32_t> v(size);
    out << "lambda_hex,mu_hex,walsh_value\n";
    for (std::uint32_t lambda = 1; lambda < size; ++lambda) {
        const std::uint32_t mask = field.trace_form_mask(Elem{lambda});
        for (std::uint32_t x = 0; x < size; ++x) v[x] = (std::popcount(f.at(x) & mask) & 1) ? -1 : 1;
        fwht(v);
        for (std::uint32_t mu = 0; mu < size; ++mu)
            out << field.to_hex(Elem{lambda}) << ',' << field.to_hex(Elem{mu}) << ',' << v[mu_mask[mu]] << '\n';
    }
}

std::int64_t walsh_coefficient(const VectorFunction& f, const Field& field, Elem lambda, Elem mu) {
    std::int64_t sum = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        const int t = field.abs_trace(field.mul(lambda, f(Elem{x}))) ^ field.abs_trace(field.mul(mu, Elem{x}));
        sum += t ? -1 : 1;
    }
    return sum;
}

bool walsh_values_are_quadratic_shaped(const SpectrumReport& r) {
    for (const auto& [val, c] : r.value_counts) {
        if (val == 0) continue;
        const auto mag = static_cast<std::uint64_t>(val < 0 ? -val : val);
        if (!std::has_single_bit(mag)) return false;
        if (2 * std::countr_zero(mag) < r.n) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Gamma-rank
//
// Rows are indexed by u = (a, b) -> a * 2^n + b and carry the translate
// {(x + a, F(x) + b)}. Elimination walks the columns one 64-bit word at a
// time. For each word the active rows are scanned for a spanning set of
// pivots, the pivot rows are brought to reduced form on that word, and the
// remaining rows are cleared through Four-Russians tables of 8 pivots each.
// Pivot rows leave the active set, so columns left of the current word are
// zero in every active row.

std::string convention_name(GammaConvention c) {
    return c == GammaConvention::Graph ? "graph" : "graph_without_origin";
}

std::uint64_t gamma_matrix_bytes(int n) {
    const std::uint64_t dim = std::uint64_t{1} << (2 * n);
    const std::uint64_t words = std::max<std::uint64_t>(1, dim / 64);
    return dim * words * 8;
}

namespace {

std::uint64_t memory_cap_bytes(const GammaRankOptions& opts) {
    std::uint64_t mib = 1024;
    if (opts.memory_limit_mib) {
        mib = *opts.memory_limit_mib;
    } else if (const char* env = std::getenv("APNKIT_GAMMA_MEM_MIB")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) mib = v;
    }
    return mib * 1024 * 1024;
}

class BitMatrix {
public:
    BitMatrix(std::uint64_t rows, std::uint64_t words) : words_(words), data_(rows * words, 0) {}

    std::uint64_t* row(std::uint64_t r) { return data_.data() + r * words_; }
    std::uint64_t words() const { return words_; }

private:
    std::uint64_t words_;
    std::vector<std::uint64_t> data_;
};

inline void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t len) {
    for (std::uint64_t i = 0; i < len; ++i) dst[i] ^= src[i];
}

}  // namespace

std::uint64_t gamma_rank(const VectorFunction& f, const GammaRankOptions& opts) {
    const int n = f.degree();
    if (n > kMaxGammaRankDegree) throw Error(ErrorCode::TooLarge, "Gamma-rank limited to n <= 8");
    const std::uint64_t need = gamma_matrix_bytes(n);
    if (need > memory_cap_bytes(opts))
        throw Error(ErrorCode::TooLarge, "Gamma-rank matrix needs " + std::to_string(need >> 20) +
                                             " MiB, above the configured cap");

    const std::uint64_t size = f.size();
    const std::uint64_t dim = size * size;
    const std::uint64_t W = std::max<std::uint64_t>(1, dim / 64);
    const std::uint64_t first = opts.convention == GammaConvention::WithoutOrigin ? 1 : 0;
    BitMatrix m(dim, W);
    for (std::uint64_t a = 0; a < size; ++a) {
        for (std::uint64_t b = 0; b < size; ++b) {
            std::uint64_t* row = m.row(a * size + b);
            for (std::uint64_t x = first; x < size; ++x) {
                const std::uint64_t col = ((x ^ a) << n) | (f.at(static_cast<std::uint32_t>(x)) ^ b);
                row[col >> 6] |= std::uint64_t{1} << (col & 63);
            }
        }
    }

    std::vector<std::uint32_t> active(dim);
    for (std::uint64_t i = 0; i < dim; ++i) active[i] = static_cast<std::uint32_t>(i);
    std::vector<std::uint64_t> strip;
    std::vector<std::uint64_t> table;
    std::uint64_t rank = 0;

    for (std::uint64_t w = 0; w < W && !active.empty(); ++w) {
        const std::uint64_t len = W - w;

        // Pick a spanning set of pivot rows on this word.
        strip.resize(active.size());
        std::array<std::uint64_t, 64> echelon{};
        std::vector<std::size_t> picked;
        for (std::size_t i = 0; i < active.size(); ++i) {
            std::uint64_t g = m.row(active[i])[w];
            strip[i] = g;
            while (g) {
                const int lead = 63 - std::countl_zero(g);
                if (!echelon[static_cast<std::size_t>(lead)]) {
                    echelon[static_cast<std::size_t>(lead)] = g;
                    picked.push_back(i);
                    break;
                }
                g ^= echelon[static_cast<std::size_t>(lead)];
            }
        }
        if (picked.empty()) continue;

        // Reduced form of the pivot rows on this word.
        std::vector<int> pivot_bit(picked.size());
        for (std::size_t j = 0; j < picked.size(); ++j) {
            std::uint64_t* rj = m.row(active[picked[j]]) + w;
            for (std::size_t t = 0; t < j; ++t)
                if ((rj[0] >> pivot_bit[t]) & 1) xor_into(rj, m.row(active[picked[t]]) + w, len);
            pivot_bit[j] = std::countr_zero(rj[0]);
            for (std::size_t t = 0; t < j; ++t) {
                std::uint64_t* rt = m.row(active[picked[t]]) + w;
                if ((rt[0] >> pivot_bit[j]) & 1) xor_into(rt, rj, len);
            }
        }

        // Clear the word from every other active row, 8 pivots per table.
        std::vector<char> is_pivot(active.size(), 0);
        for (auto i : picked) is_pivot[i] = 1;
        for (std::size_t c0 = 0; c0 < picked.size(); c0 += 8) {
            const std::size_t cn = std::min<std::size_t>(8, picked.size() - c0);
            const std::size_t entries = std::size_t{1} << cn;
            table.assign(entries * len, 0);
            for (std::size_t e = 1; e < entries; ++e) {
                const int low = std::countr_zero(e);
                std::copy_n(table.data() + (e & (e - 1)) * len, len, table.data() + e * len);
                xor_into(table.data() + e * len, m.row(active[picked[c0 + static_cast<std::size_t>(low)]]) + w, len);
            }
            parallel_ranges(opts.jobs, 0, active.size(), [&](int, std::uint64_t lo, std::uint64_t hi) {
                for (auto i = lo; i < hi; ++i) {
                    const std::uint64_t g = strip[i];
                    if (!g || is_pivot[i]) continue;
                    std::size_t idx = 0;
                    for (std::size_t j = 0; j < cn; ++j) idx |= ((g >> pivot_bit[c0 + j]) & 1) << j;
                    if (idx) xor_into(m.row(active[i]) + w, table.data() + idx * len, len);
                }
            });
        }

        rank += picked.size();
        // Drop pivot rows and rows that have become zero.
        std::size_t out = 0;
        for (std::size_t i = 0; i < active.size(); ++i) {
            if (is_pivot[i]) continue;
            if (strip[i]) {
                const std::uint64_t* r = m.row(active[i]) + w;
                bool zero = true;
                for (std::uint64_t t = 0; t < len && zero; ++t) zero = r[t] == 0;
                if (zero) continue;
            }
            active[out++] = active[i];
        }
        active.resize(out);
    }
    return rank;
}

// ---------------------------------------------------------------------------

std::uint32_t LinearMap::apply(std::uint32_t x) const {
    std::uint32_t y = 0;
    for (std::size_t i = 0; x; ++i, x >>= 1)
        if (x & 1) y ^= columns[i];
    return y;
}

LinearMap random_invertible_map(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::uint32_t mask = (std::uint32_t{1} << n) - 1;
    for (;;) {
        LinearMap m;
        m.columns.resize(static_cast<std::size_t>(n));
        for (auto& c : m.columns) c = static_cast<std::uint32_t>(rng()) & mask;
        std::vector<std::uint32_t> rows(m.columns);
        if (small_rank(rows) == n) return m;
    }
}

VectorFunction affine_substitute(const VectorFunction& f, std::uint64_t seed) {
    const int n = f.degree();
    const LinearMap L = random_invertible_map(n, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const auto shift = static_cast<std::uint32_t>(rng()) & (f.size() - 1);
    std::vector<Elem> table(f.size());
    for (std::uint32_t x = 0; x < f.size(); ++x) table[x] = Elem{f.at(L.apply(x)) ^ shift};
    return VectorFunction(n, std::move(table), f.label() + " (affine substitute)");
}

std::uint64_t probe_uniformity(const VectorFunction& f, std::uint64_t seed) {
    return differential_uniformity_generic(affine_substitute(f, seed)).uniformity;
}

std::vector<std::int64_t> probe_spectrum_magnitudes(const VectorFunction& f, std::uint64_t seed) {
    if (f.degree() > 10) throw Error(ErrorCode::TooLarge, "spectrum probes limited to n <= 10");
    return walsh_spectrum(affine_substitute(f, seed)).magnitude_set();
}

std::uint64_t probe_gamma_rank(const VectorFunction& f, std::uint64_t seed) {
    if (f.degree() > 6) throw Error(ErrorCode::TooLarge, "Gamma-rank probes limited to n <= 6");
    return gamma_rank(affine_substitute(f, seed));
}

}  // namespace apnkit::analysis
