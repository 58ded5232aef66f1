#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apnkit/gf2e.hpp"

namespace apnkit {

// Dense value table of a map GF(2^n) -> GF(2^n); table[x] = F(x) with x in
// coefficient-vector encoding.
class VectorFunction {
public:
    VectorFunction(int n, std::vector<Elem> table, std::string label = {});

    template <typename Fn>
    static VectorFunction tabulate(const Field& field, Fn&& fn, std::string label = {}) {
        std::vector<Elem> table(field.size());
        for (std::uint32_t x = 0; x < field.size(); ++x) table[x] = fn(Elem{x});
        return VectorFunction(field.degree(), std::move(table), std::move(label));
    }

    int degree() const { return n_; }
    std::uint32_t size() const { return std::uint32_t{1} << n_; }
    Elem operator()(Elem x) const { return table_[x.bits]; }
    std::uint32_t at(std::uint32_t x) const { return table_[x].bits; }
    const std::vector<Elem>& table() const { return table_; }
    const std::string& label() const { return label_; }

    friend bool operator==(const VectorFunction& a, const VectorFunction& b) {
        return a.n_ == b.n_ && a.table_ == b.table_;
    }

private:
    int n_;
    std::vector<Elem> table_;
    std::string label_;
};

}  // namespace apnkit
