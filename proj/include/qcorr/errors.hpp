#pragma once

#include <stdexcept>

namespace qcorr {

/// Base class for all qcorr domain errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NonHermitian : Error { using Error::Error; };
struct NonUnitTrace : Error { using Error::Error; };
struct NegativeEigenvalue : Error { using Error::Error; };
struct EmptyKeepSet : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct SupportViolation : Error { using Error::Error; };
struct InvalidDimension : Error { using Error::Error; };
struct PartitionMismatch : Error { using Error::Error; };
struct ParameterCountMismatch : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };
struct InvalidRank : Error { using Error::Error; };
struct InvalidProbabilities : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct IncompleteKraus : Error { using Error::Error; };
struct UnsupportedMeasure : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace qcorr
