#pragma once

#include <stdexcept>
#include <string>

namespace filtra {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define FILTRA_ERROR_TYPE(NAME)                                          \
    struct NAME : Error {                                                \
        explicit NAME(const std::string& msg) : Error(#NAME ": " + msg) {} \
    }

FILTRA_ERROR_TYPE(DivisionByZero);
FILTRA_ERROR_TYPE(DenominatorVanishesIdentically);
FILTRA_ERROR_TYPE(UnknownCoordinate);
FILTRA_ERROR_TYPE(FrameMismatch);
FILTRA_ERROR_TYPE(InvalidFrame);
FILTRA_ERROR_TYPE(MissingRule);
FILTRA_ERROR_TYPE(MissingTransition);
FILTRA_ERROR_TYPE(SingularLinearPart);
FILTRA_ERROR_TYPE(SingularJacobian);
FILTRA_ERROR_TYPE(NotOverDiffeomorphism);
FILTRA_ERROR_TYPE(DanglingReference);
FILTRA_ERROR_TYPE(DegreeBoundExceeded);
FILTRA_ERROR_TYPE(NotConnected);
FILTRA_ERROR_TYPE(NotNested);
FILTRA_ERROR_TYPE(NotMultiplicative);
FILTRA_ERROR_TYPE(UnsupportedInput);
FILTRA_ERROR_TYPE(InternalInvariantBroken);
FILTRA_ERROR_TYPE(SyntaxError);
FILTRA_ERROR_TYPE(UndeclaredSymbol);
FILTRA_ERROR_TYPE(FiberDenominator);

#undef FILTRA_ERROR_TYPE

} // namespace filtra
