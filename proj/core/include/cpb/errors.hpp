#pragma once

#include <stdexcept>
#include <string>

namespace cpb {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// qubit_model
struct TargetBelowMinimum : Error { using Error::Error; };
struct DimensionOverflow : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };

// spectroscopy
struct DispersiveRegimeViolation : Error { using Error::Error; };
struct NegativeProduct : Error { using Error::Error; };
struct FitDiverged : Error { using Error::Error; };
struct DegenerateData : Error { using Error::Error; };
struct NegativeIntercept : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };

// otto_engine
struct StepSizeTooCoarse : Error { using Error::Error; };

// microwave_filter
struct ShuntShortCircuit : Error { using Error::Error; };
struct SingularNetwork : Error { using Error::Error; };

// cli_io
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct ColumnMissing : Error { using Error::Error; };

}  // namespace cpb
