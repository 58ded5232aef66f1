#include "apnkit/vector_function.hpp"

namespace apnkit {

VectorFunction::VectorFunction(int n, std::vector<Elem> table, std::string label)
    : n_(n), table_(std::move(table)), label_(std::move(label)) {
    if (n < 1 || n > kMaxDegree)
        throw Error(ErrorCode::DegreeOutOfRange, "function degree " + std::to_string(n) + " outside [1, 24]");
    if (table_.size() != (std::size_t{1} << n))
        throw Error(ErrorCode::LengthNotPowerOfTwo,
                    "table has " + std::to_string(table_.size()) + " entries, expected 2^" + std::to_string(n));
    for (Elem v : table_)
        if (v.bits >= size())
            throw Error(ErrorCode::PreconditionViolated, "table entry exceeds n bits");
}

}  // namespace apnkit
