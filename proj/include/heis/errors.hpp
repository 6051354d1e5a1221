#pragma once

#include <stdexcept>
#include <string>

namespace heis {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define HEIS_ERROR(Name)                                                       \
    struct Name : Error {                                                      \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

HEIS_ERROR(CompositionNotZero);
HEIS_ERROR(ShapeMismatch);
HEIS_ERROR(UnknownBasisIndex);
HEIS_ERROR(SpaceMismatch);
HEIS_ERROR(MixedParity);
HEIS_ERROR(SingularMatrix);
HEIS_ERROR(ParityViolation);
HEIS_ERROR(ActionMismatch);
HEIS_ERROR(InvalidCategory);
HEIS_ERROR(TruncationTooSmall);
HEIS_ERROR(TruncationInsufficient);
HEIS_ERROR(TwistedUnsupported);
HEIS_ERROR(CategoryMismatch);
HEIS_ERROR(BadCosets);
HEIS_ERROR(InvalidDecomposition);
HEIS_ERROR(NotClosed);
HEIS_ERROR(UnsupportedRepresentative);
HEIS_ERROR(DegreeMismatch);
HEIS_ERROR(OutOfRange);
HEIS_ERROR(ParseError);

#undef HEIS_ERROR

}  // namespace heis
