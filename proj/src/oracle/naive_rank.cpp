#include "apnkit/oracle.hpp"

#include <set>
#include <utility>

namespace apnkit::oracle {

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c)
    : rows(r), cols(c), data(r, std::vector<std::uint64_t>((c + 63) / 64, 0)) {}

std::uint64_t naive_rank(DenseMatrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
        std::size_t p = rank;
        while (p < m.rows && !m.get(p, c)) ++p;
        if (p == m.rows) continue;
        std::swap(m.data[p], m.data[rank]);
        const auto& pivot = m.data[rank];
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == rank || !m.get(r, c)) continue;
            auto& row = m.data[r];
            for (std::size_t w = 0; w < row.size(); ++w) row[w] ^= pivot[w];
        }
        ++rank;
    }
    return rank;
}

DenseMatrix development_matrix(const VectorFunction& f, bool skip_origin) {
    const std::uint32_t q = f.size();
    std::set<std::pair<std::uint32_t, std::uint32_t>> graph;
    for (std::uint32_t x = skip_origin ? 1 : 0; x < q; ++x) graph.insert({x, f.at(x)});
    const std::size_t dim = std::size_t{q} * q;
    DenseMatrix m(dim, dim);
    for (std::size_t u = 0; u < dim; ++u) {
        const auto u1 = static_cast<std::uint32_t>(u / q), u2 = static_cast<std::uint32_t>(u % q);
        for (std::size_t v = 0; v < dim; ++v) {
            const auto v1 = static_cast<std::uint32_t>(v / q), v2 = static_cast<std::uint32_t>(v % q);
            if (graph.count({u1 ^ v1, u2 ^ v2})) m.set(u, v);
        }
    }
    return m;
}

std::uint64_t naive_gamma_rank(const VectorFunction& f, bool skip_origin) {
    return naive_rank(development_matrix(f, skip_origin));
}

}  // namespace apnkit::oracle
