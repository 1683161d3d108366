#pragma once

#include <stdexcept>
#include <string>

namespace mforge {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Configuration values outside their documented domain (exit code 2 in the CLI).
struct ConfigError : Error {
  using Error::Error;
};

/// Filesystem and serialization failures (exit code 3 in the CLI).
struct IoError : Error {
  using Error::Error;
};

/// A file exists but its content cannot be parsed.
struct ParseError : IoError {
  using IoError::IoError;
};

/// A binary file has a bad magic, version, or structural layout.
struct FormatError : IoError {
  using IoError::IoError;
};

/// A checkpoint payload does not match its recorded checksum.
struct ChecksumMismatch : FormatError {
  using FormatError::FormatError;
};

/// Data violating a documented contract (exit code 4 in the CLI).
struct DomainError : Error {
  using Error::Error;
};

/// Tensor or matrix dimensions inconsistent with an operation's contract.
struct ShapeMismatch : DomainError {
  using DomainError::DomainError;
};

struct NonSquareError : DomainError {
  using DomainError::DomainError;
};

struct AsymmetryError : DomainError {
  using DomainError::DomainError;
};

struct DuplicateId : DomainError {
  using DomainError::DomainError;
};

struct MissingTarget : DomainError {
  using DomainError::DomainError;
};

struct EmptyDataset : DomainError {
  using DomainError::DomainError;
};

struct MissingTap : DomainError {
  using DomainError::DomainError;
};

struct MissingCache : DomainError {
  using DomainError::DomainError;
};

struct KTooLarge : DomainError {
  using DomainError::DomainError;
};

struct SingleClass : DomainError {
  using DomainError::DomainError;
};

struct InsufficientClassCount : DomainError {
  using DomainError::DomainError;
};

struct DegenerateInput : DomainError {
  using DomainError::DomainError;
};

/// Numerical failures (exit code 5 in the CLI).
struct NumericError : Error {
  using Error::Error;
};

struct SingularMatrix : NumericError {
  using NumericError::NumericError;
};

struct NonConvergence : NumericError {
  using NumericError::NumericError;
};

struct NonFiniteError : NumericError {
  using NumericError::NumericError;
};

}  // namespace mforge
