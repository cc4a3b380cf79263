#pragma once

#include <stdexcept>
#include <string>

namespace fockjoin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mode counts or matrix sizes that do not line up.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Occupation vectors that are malformed (wrong length, negative entries).
class OccupationError : public Error {
public:
    using Error::Error;
};

/// A term violates the dual-rail encoding expected by a gate or scheme
/// (two photons on a rail pair, |11>, wrong photon count per pair).
class EncodingError : public Error {
public:
    using Error::Error;
};

/// discard_empty_modes was asked to drop a mode that holds a photon.
class NonEmptyModeError : public Error {
public:
    using Error::Error;
};

/// A state that must be normalized is not.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// Input documents (JSON states, unitaries, circuit files) with the wrong
/// shape or content.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace fockjoin
