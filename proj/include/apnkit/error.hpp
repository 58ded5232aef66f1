#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apnkit {

enum class ErrorCode {
    DegreeOutOfRange,
    NotIrreducible,
    DivisionByZero,
    OddDegreeField,
    ZeroInput,
    NotAnEthPower,
    NotASubfieldDegree,
    PreconditionViolated,
    InvariantViolation,
    CubeInput,
    DegenerateLinearPart,
    SearchExhausted,
    IdentityViolated,
    NormConditionViolated,
    DeltaInSubfield,
    TooLarge,
    NotQuadratic,
    LengthNotPowerOfTwo,
    MalformedHex,
    Io,
};

std::string_view error_code_name(ErrorCode code);

// Every library failure is reported through this type; `code()` is stable and
// is what the CLI serializes into its error JSON.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace apnkit
