#pragma once

#include <stdexcept>
#include <string>

namespace telecode {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operand shapes disagree (vector length vs. matrix columns, etc).
struct DimensionMismatch : Error {
    using Error::Error;
};

/// Row/column/qubit index outside the valid range.
struct IndexError : Error {
    using Error::Error;
};

/// Malformed textual input (matrix literals, lineage strings, registry files).
struct ParseError : Error {
    using Error::Error;
};

/// An enumeration or recursion guard was exceeded.
struct GuardExceeded : Error {
    using Error::Error;
};

/// h1 and h2 are not orthogonal over GF(2).
struct CssViolation : Error {
    using Error::Error;
};

/// A distance is undefined because the codeword set difference is empty (k = 0).
struct EmptyCodeSet : Error {
    using Error::Error;
};

/// A puncture collapsed k or a distance below the supported range.
struct DegenerateResult : Error {
    using Error::Error;
};

/// Numeric argument outside its domain.
struct OutOfRange : Error {
    using Error::Error;
};

/// DEJMPS normalization vanished; the input state is nonphysical.
struct ZeroNormalization : Error {
    using Error::Error;
};

/// No fidelity in the requested range meets the target.
struct NoCrossing : Error {
    using Error::Error;
};

/// Two correctable-weight errors share a syndrome but differ by a logical
/// operator; the claimed distance (or branch convention) is wrong.
struct DistanceContradiction : Error {
    using Error::Error;
};

/// A registry code failed its construction-time self checks.
struct RegistryError : Error {
    using Error::Error;
};

}  // namespace telecode
