#pragma once

#include <stdexcept>
#include <string>

namespace wavescope {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: out-of-scope parameters, malformed configs. CLI exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A numerical procedure failed: no bracket, Newton divergence, step
// underflow, isocline continuation breakdown. CLI exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Filesystem trouble. CLI exit code 3.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace wavescope
