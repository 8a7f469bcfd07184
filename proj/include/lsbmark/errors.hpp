#pragma once

#include <stdexcept>

namespace lsbmark {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
struct IoError : Error {
    using Error::Error;
};

// Container structure is malformed (bad magic, impossible header fields).
struct FormatError : Error {
    using Error::Error;
};

// Structurally valid file, but a variant this library does not handle.
struct UnsupportedError : Error {
    using Error::Error;
};

// Data ends before the header-promised length.
struct TruncatedError : FormatError {
    using FormatError::FormatError;
};

// Coordinate or index outside its valid range.
struct BoundsError : Error {
    using Error::Error;
};

// Two images that must share dimensions do not.
struct ShapeError : Error {
    using Error::Error;
};

// Invalid argument value.
struct ParamError : Error {
    using Error::Error;
};

// Payload does not fit the image, or the image cannot hold a header.
struct CapacityError : Error {
    using Error::Error;
};

// Embedded length header decodes to an impossible value.
struct HeaderError : Error {
    using Error::Error;
};

// Difference array is inconsistent with the image it is applied to.
struct IntegrityError : Error {
    using Error::Error;
};

}  // namespace lsbmark
