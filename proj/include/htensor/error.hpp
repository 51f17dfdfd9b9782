#pragma once

#include <stdexcept>
#include <string>

namespace htensor {

enum class Errc {
    InvalidShape,
    IndexOutOfRange,
    DuplicateEntry,
    NonFiniteValue,
    DimensionMismatch,
    NonPositiveScale,
    GammaOutOfRange,
    ComplexDiagonal,
    BadSubset,
    EmptyRegion,
    BadGrid,
    WrongDimension,
    NegativeEntry,
    OrderTooLarge,
    BadIndex,
    NonHermitian,
    TraceNotOne,
    BadAngle,
    WeightMismatch,
    ParseError,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace htensor
