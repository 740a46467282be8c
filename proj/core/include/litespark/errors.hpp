#pragma once

#include <stdexcept>
#include <string>

namespace litespark {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension or padding mismatch between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values fed to a quantizer or converter.
class QuantizationError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration: unknown backend name, unsupported override,
/// invalid generation parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Sequence would exceed the model's maximum context length.
class ContextOverflowError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// File exists but its contents are not a valid container
/// (bad magic, unsupported version, truncation, integrity mismatch).
class FileFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace litespark
