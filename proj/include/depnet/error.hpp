#pragma once

#include <stdexcept>
#include <string>

namespace depnet {

// Base for every error raised by the library. The CLI maps subclasses to
// exit codes: InputError -> 2, DegenerateError -> 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or schema-violating input (files, network documents, reports).
class InputError : public Error {
public:
  using Error::Error;
};

class ParseError : public InputError {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " (line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ")"),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class SchemaError : public InputError {
public:
  using InputError::InputError;
};

class DuplicateIdError : public InputError {
public:
  using InputError::InputError;
};

// A WSDL/SAWSDL construct outside the supported subset.
class UnsupportedConstructError : public InputError {
public:
  UnsupportedConstructError(std::string construct, const std::string& file)
      : InputError("unsupported construct '" + construct + "' in " + file),
        construct_(std::move(construct)) {}

  const std::string& construct() const noexcept { return construct_; }

private:
  std::string construct_;
};

// A metric is undefined for the given network (empty graph, zero variance...).
class DegenerateError : public Error {
public:
  using Error::Error;
};

}  // namespace depnet
