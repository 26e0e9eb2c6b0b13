#pragma once

#include <stdexcept>
#include <string>

namespace kreinspec {

// Base class for all toolkit failures. Every subclass name is stable API:
// callers (and the CLI exit-code mapping) dispatch on these types.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// numerics
struct SingularMatrix : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct InvalidValue : Error { using Error::Error; };

// eigensystem structure
struct Defective : Error { using Error::Error; };
struct ComplexSpectrum : Error { using Error::Error; };

// metric classification
struct NotHermitian : Error { using Error::Error; };
struct NearSingular : Error { using Error::Error; };

// antilinear operators
struct OddDimension : Error { using Error::Error; };

// doublet / Krein pipeline
struct PreconditionFailed : Error { using Error::Error; };
struct DegenerateChi : Error { using Error::Error; };

// four-level model
struct BrokenPhase : Error { using Error::Error; };
struct SingularNormalization : Error { using Error::Error; };

// file formats
struct ParseError : Error { using Error::Error; };

}  // namespace kreinspec
