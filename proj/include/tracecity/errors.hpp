#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tracecity {

/// Root of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Errors caused by malformed or inconsistent input documents. The CLI maps
/// these to exit status 2.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A required field is missing, ill-typed, or unknown. `path` locates the
/// offending value (JSON pointer style for code models, element path for XML).
class SchemaError : public DataError {
 public:
  SchemaError(std::string path, const std::string& message)
      : DataError(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class DuplicateName : public DataError {
 public:
  using DataError::DataError;
};

class BadIdentifier : public DataError {
 public:
  using DataError::DataError;
};

/// Malformed XML. Carries the source name and 1-based line.
class XmlError : public DataError {
 public:
  XmlError(std::string source, std::size_t line, const std::string& message)
      : DataError(source + ":" + std::to_string(line) + ": " + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class DuplicateFeatureId : public DataError {
 public:
  using DataError::DataError;
};

class EmptyModel : public Error {
 public:
  using Error::Error;
};

/// A feature, sprint, or release id that is not in the dataset.
class UnknownId : public Error {
 public:
  using Error::Error;
};

class UnknownQName : public Error {
 public:
  using Error::Error;
};

class NotAClass : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class EmptyQuery : public Error {
 public:
  using Error::Error;
};

/// Malformed RC scope or selection (e.g. Concept mode without a selection).
class InvalidScope : public Error {
 public:
  using Error::Error;
};

}  // namespace tracecity
