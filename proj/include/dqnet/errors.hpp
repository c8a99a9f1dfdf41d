#pragma once

#include <stdexcept>
#include <string>

namespace dqnet {

// Base class for everything this library throws on contract violations.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- algebra --
struct ZeroNormError : Error {
  using Error::Error;
};
struct NonUnitAxisError : Error {
  using Error::Error;
};
struct NonUnitQuaternionError : Error {
  using Error::Error;
};
struct NonUnitDualQuaternionError : Error {
  using Error::Error;
};
struct InvalidScrewError : Error {
  using Error::Error;
};

// -- tensors / layers --
struct DimensionMismatchError : Error {
  using Error::Error;
};
struct ShapeMismatchError : Error {
  using Error::Error;
};
struct LengthMismatchError : Error {
  using Error::Error;
};
struct EmptyInputError : Error {
  using Error::Error;
};
struct StaleCacheError : Error {
  using Error::Error;
};

// -- data / training --
struct TooShortError : Error {
  using Error::Error;
};
struct EmptyDatasetError : Error {
  using Error::Error;
};
struct EmptySequenceError : Error {
  using Error::Error;
};
struct NonFiniteStateError : Error {
  using Error::Error;
};
struct NonFiniteLossError : Error {
  using Error::Error;
};
struct AlgebraMismatchError : Error {
  using Error::Error;
};

// -- cli / files --
struct ConfigError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};
struct MalformedReportError : Error {
  using Error::Error;
};

}  // namespace dqnet
