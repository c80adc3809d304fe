#pragma once

#include <stdexcept>
#include <string>

namespace torus_waves {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TORUS_WAVES_DEFINE_ERROR(Name)          \
    class Name : public Error {                 \
    public:                                     \
        using Error::Error;                     \
    }

TORUS_WAVES_DEFINE_ERROR(NotSumOfTwoSquares);
TORUS_WAVES_DEFINE_ERROR(InvalidTarget);
TORUS_WAVES_DEFINE_ERROR(OddIndex);
TORUS_WAVES_DEFINE_ERROR(ResolutionTooLow);
TORUS_WAVES_DEFINE_ERROR(BoundViolation);
TORUS_WAVES_DEFINE_ERROR(UnsupportedTriple);
TORUS_WAVES_DEFINE_ERROR(CircleTooLarge);
TORUS_WAVES_DEFINE_ERROR(EtaOutOfRange);
TORUS_WAVES_DEFINE_ERROR(TooFewSamples);
TORUS_WAVES_DEFINE_ERROR(InvalidArgument);

#undef TORUS_WAVES_DEFINE_ERROR

}  // namespace torus_waves
