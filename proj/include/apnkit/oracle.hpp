#pragma once

#include <cstdint>
#include <vector>

#include "apnkit/vector_function.hpp"

// Slow reference computations kept apart from the engines they check. Nothing
// here shares code with analysis.cpp.
namespace apnkit::oracle {

// Dense GF(2) matrix, rows packed 64 columns per word.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::uint64_t>> data;

    DenseMatrix(std::size_t r, std::size_t c);
    bool get(std::size_t r, std::size_t c) const { return (data[r][c / 64] >> (c % 64)) & 1; }
    void set(std::size_t r, std::size_t c) { data[r][c / 64] |= std::uint64_t{1} << (c % 64); }
};

// Textbook Gauss-Jordan elimination, one column at a time, whole-row XORs.
std::uint64_t naive_rank(DenseMatrix m);

// The development matrix of {(x, F(x))} written out entry by entry from
// membership tests: M[u][v] = 1 iff u + v lies in the graph. With
// skip_origin the point x = 0 is left out of the graph.
DenseMatrix development_matrix(const VectorFunction& f, bool skip_origin = false);

// naive_rank(development_matrix(f)); practical up to n = 5, and n = 6 in a
// few seconds.
std::uint64_t naive_gamma_rank(const VectorFunction& f, bool skip_origin = false);

}  // namespace apnkit::oracle
