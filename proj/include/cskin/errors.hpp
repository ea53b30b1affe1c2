#ifndef CSKIN_ERRORS_HPP
#define CSKIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cskin {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct TruncationTooSmall : Error { using Error::Error; };
struct DispersionSingularity : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct BranchLost : Error { using Error::Error; };
struct SeedNotFound : Error { using Error::Error; };
struct InsufficientStencil : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };
struct ZeroState : Error { using Error::Error; };
struct NoPeaks : Error { using Error::Error; };
struct BaseOnCurve : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace cskin

#endif
