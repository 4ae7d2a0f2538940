#ifndef MAGNET_ERRORS_HPP
#define MAGNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace magnet {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A coordinate, index, or element violates the aspect schema.
class SchemaViolationError : public Error {
public:
    using Error::Error;
};

// A sub-MAG selector is empty for some aspect or names unknown elements.
class InvalidSelectorError : public Error {
public:
    using Error::Error;
};

// A sub-determination mask keeps every aspect or none.
class InvalidMaskError : public Error {
public:
    using Error::Error;
};

// Structurally broken input text (CSV header, bundle container).
class ParseError : public Error {
public:
    using Error::Error;
};

// A requested airline, period, or aspect does not exist.
class NotFoundError : public Error {
public:
    using Error::Error;
};

// No usable records remain after filtering.
class EmptyInputError : public Error {
public:
    using Error::Error;
};

// percent_delta with a zero baseline.
class UndefinedDeltaError : public Error {
public:
    using Error::Error;
};

// An airport code has no registry entry when coordinates are required.
class UnresolvedAirportError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failure while reading or writing artifacts.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace magnet

#endif // MAGNET_ERRORS_HPP
