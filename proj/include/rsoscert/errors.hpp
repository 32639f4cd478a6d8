#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsoscert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed polynomial text. `position` is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// An argument violates a documented precondition (zero polynomial, empty term set, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A moment vector lacks an entry that a matrix construction needs.
class MissingMoment : public Error {
 public:
  using Error::Error;
};

// The numerical solver could not proceed (iteration limit, singular Newton system).
class SolverError : public Error {
 public:
  using Error::Error;
};

// Certificate file could not be read.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace rsoscert
