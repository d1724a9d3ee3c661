#pragma once

#include <stdexcept>
#include <string>

namespace limitdisc {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input / construction errors.
struct DegenerateMapError : Error { using Error::Error; };
struct PoleDerivativeError : Error { using Error::Error; };
struct PoleInsideDiscError : Error { using Error::Error; };
struct NotInMDError : Error { using Error::Error; };
struct UnknownNameError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Classification errors.
struct NotTangentPairError : Error { using Error::Error; };
struct NotAffineError : Error { using Error::Error; };
struct MissingGammaError : Error { using Error::Error; };
struct NotLimitDiscError : Error { using Error::Error; };
struct SeriesDivergesError : Error { using Error::Error; };
struct EmptyPrefixError : Error { using Error::Error; };

// Dimension errors.
struct NoInteriorMinimumError : Error { using Error::Error; };
struct HypothesisViolatedError : Error { using Error::Error; };
struct GraphNotCompleteError : Error { using Error::Error; };
struct LogBaseDegenerateError : Error { using Error::Error; };
struct ConstructionFailedError : Error { using Error::Error; };

// Numeric failures.
struct NoConvergenceError : Error { using Error::Error; };
struct OrbitUnstableError : Error { using Error::Error; };
struct TraceTooShortError : Error { using Error::Error; };
struct PointOutsideClosedDiscError : Error { using Error::Error; };

} // namespace limitdisc
