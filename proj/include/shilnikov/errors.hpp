#ifndef SHILNIKOV_ERRORS_HPP
#define SHILNIKOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shilnikov {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};
struct RepeatedEigenvalueError : Error {
    using Error::Error;
};
struct DegenerateFixedPointError : Error {
    using Error::Error;
};
struct DegeneratePlaneError : Error {
    using Error::Error;
};
struct WrongSpectralTypeError : Error {
    using Error::Error;
};
struct NotOnBorderError : Error {
    using Error::Error;
};
struct ParallelToBorderError : Error {
    using Error::Error;
};
struct AmbiguousPreimageError : Error {
    using Error::Error;
};
struct UnresolvableSideError : Error {
    using Error::Error;
};
struct OverflowDetectedError : Error {
    using Error::Error;
};
struct DivergentOrbitError : Error {
    using Error::Error;
};

} // namespace shilnikov

#endif
