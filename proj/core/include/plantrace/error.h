#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plantrace {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A record in a trajectory, config, or score file could not be decoded.
// line() is 1-based; 0 means the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class EmptyTrajectoryError : public Error {
 public:
  using Error::Error;
};

class DuplicateIdError : public Error {
 public:
  DuplicateIdError(const std::string& id, const std::string& first_source,
                   const std::string& second_source);
};

// Inputs that must describe the same instance set do not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace plantrace
