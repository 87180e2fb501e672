#pragma once

#include <stdexcept>
#include <string>

namespace dimest {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments, shapes, or parameter ranges. Maps to CLI exit code 2.
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Malformed input files (IDX, CSV, model files). Maps to CLI exit code 2.
class FormatError : public ArgumentError {
public:
  using ArgumentError::ArgumentError;
};

/// Numeric failure during computation. Maps to CLI exit code 1.
class NumericError : public Error {
public:
  using Error::Error;
};

/// Spectrum is unusable (e.g. all-zero, so shares are undefined).
class DegenerateSpectrumError : public NumericError {
public:
  using NumericError::NumericError;
};

/// Neighbor graph has unreachable sample pairs; geodesics are undefined.
class DisconnectedGraphError : public NumericError {
public:
  using NumericError::NumericError;
};

/// Training produced a non-finite loss or parameter.
class TrainingDivergenceError : public NumericError {
public:
  TrainingDivergenceError(long epoch, long step)
      : NumericError("training diverged at epoch " + std::to_string(epoch) +
                     ", step " + std::to_string(step)),
        epoch(epoch),
        step(step) {}

  long epoch;
  long step;
};

}  // namespace dimest
