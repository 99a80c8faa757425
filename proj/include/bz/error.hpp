#pragma once

#include <stdexcept>
#include <string>

namespace bz {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad ids, non-positive lengths, schema violations.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class UnknownId : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class DisconnectedGraph : public Error {
public:
    using Error::Error;
};

// A numerical procedure failed to meet its own accuracy contract.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace bz
