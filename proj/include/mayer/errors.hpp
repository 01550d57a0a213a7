#pragma once

#include <stdexcept>
#include <string>

namespace mayer {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- formal series ---
struct ZeroConstantTerm : Error { using Error::Error; };
struct NonzeroInnerConstant : Error { using Error::Error; };
struct ConstantTermNotOne : Error { using Error::Error; };
struct NotInvertibleForm : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

// --- tree combinatorics ---
struct TooLarge : Error { using Error::Error; };
struct LabelCollision : Error { using Error::Error; };
struct InvalidDegreeSequence : Error { using Error::Error; };

// --- potentials ---
struct NotTempered : Error { using Error::Error; };
struct DegenerateSampler : Error { using Error::Error; };

// --- cluster bounds ---
struct OutOfDomain : Error { using Error::Error; };
struct InvalidG2 : Error { using Error::Error; };
struct NoInteriorMax : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct ZeroCoefficient : Error { using Error::Error; };

// --- virial bounds ---
struct InsufficientCoefficients : Error { using Error::Error; };
struct TruncationInsufficient : Error { using Error::Error; };
struct DomainEmpty : Error { using Error::Error; };

// --- configuration / CLI ---
struct ConfigError : Error { using Error::Error; };

}  // namespace mayer
