#pragma once

#include <stdexcept>
#include <string>

namespace wulff {

/// Base of every error thrown by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter is outside its documented domain (resolution too small, q <= 0, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Input data violates a precondition of the model (e.g. a non-positive surface tension sample).
class RejectedInput : public Error {
public:
    using Error::Error;
};

/// An internal identity failed. Indicates a bug or a falsified mathematical claim.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// The dual body has unbounded volume.
class InfiniteVolume : public Error {
public:
    using Error::Error;
};

/// An enumeration guard was hit and no override was given.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace wulff
