#pragma once

#include <stdexcept>
#include <string>

namespace kst {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two operands carry different field tags.
struct FieldMismatchError : Error {
    using Error::Error;
};

// Shapes are incompatible with the requested operation.
struct DimensionError : Error {
    using Error::Error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};

// Input fails a structural precondition (not self-adjoint, not an isometry,
// not positive-definite, rank-deficient where injectivity is required, ...).
struct StructureError : Error {
    using Error::Error;
};

// An iterative kernel did not converge within its sweep budget.
struct ConvergenceError : Error {
    using Error::Error;
};

// A rank decision had elimination pivots straddling the threshold; the
// classification is not numerically trustworthy and is refused rather
// than guessed.
struct RankAmbiguityError : Error {
    using Error::Error;
};

// A point lies outside the open domain of an inverse map (1 - g singular).
struct LevelDeficiencyError : Error {
    using Error::Error;
};

// Malformed JSON payloads or values outside the encodable range.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace kst
