#pragma once

#include <stdexcept>
#include <string>

namespace tgrs {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define TGRS_DEFINE_ERROR(NAME)                         \
    struct NAME : Error {                               \
        using Error::Error;                             \
        NAME() : Error(#NAME) {}                        \
    }

// Field construction and arithmetic.
TGRS_DEFINE_ERROR(NotPrime);
TGRS_DEFINE_ERROR(ReduciblePolynomial);
TGRS_DEFINE_ERROR(DegreeMismatch);
TGRS_DEFINE_ERROR(NoTableEntry);
TGRS_DEFINE_ERROR(FieldMismatch);
TGRS_DEFINE_ERROR(DivisionByZero);
TGRS_DEFINE_ERROR(EOutOfRange);
TGRS_DEFINE_ERROR(SyntaxError);
TGRS_DEFINE_ERROR(ValueOutOfField);

// Linear algebra and codes.
TGRS_DEFINE_ERROR(DimensionMismatch);
TGRS_DEFINE_ERROR(LengthMismatch);
TGRS_DEFINE_ERROR(ZeroMatrix);
TGRS_DEFINE_ERROR(EnumerationCapExceeded);
TGRS_DEFINE_ERROR(DimensionOutOfRange);

// Twisted constructions and searches.
TGRS_DEFINE_ERROR(InvalidSpec);
TGRS_DEFINE_ERROR(DuplicatePoints);
TGRS_DEFINE_ERROR(CombinatorialCapExceeded);
TGRS_DEFINE_ERROR(BudgetExceeded);
TGRS_DEFINE_ERROR(Class2Unavailable);

#undef TGRS_DEFINE_ERROR

} // namespace tgrs
