#pragma once

#include <stdexcept>
#include <string>

namespace dosc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user-facing input: parameters, ranges, flags.
struct ValidationError : Error {
  using Error::Error;
};

// A spectrum formula was asked for outside the phase it describes.
struct RegimeError : Error {
  using Error::Error;
};

struct AssemblyError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

struct TruncationError : Error {
  using Error::Error;
};

struct DegeneracyError : Error {
  using Error::Error;
};

struct CriticalUndefinedError : Error {
  using Error::Error;
};

struct NotBracketedError : Error {
  using Error::Error;
};

} // namespace dosc
