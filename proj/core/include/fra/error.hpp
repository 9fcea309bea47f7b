#pragma once

#include <stdexcept>
#include <string>

namespace fra {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A name, letter or state that does not belong to the object it was used with.
class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

/// An operation was given an input outside its contract (wrong kind of
/// transducer, wrong instruction set, zero block size, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Text could not be parsed. `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fra
