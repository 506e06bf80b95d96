#pragma once

#include <stdexcept>
#include <string>

namespace aab {

// Error categories. Mirrors aab_status in the C API one-to-one.
enum class ErrorCode {
  kInvalidArgument = 1,
  kIo = 2,
  kParse = 3,
  kDegenerate = 4,
  kEmptyResult = 5,
  kInternal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& message)
      : Error(ErrorCode::kInvalidArgument, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorCode::kIo, message) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& path, int line, const std::string& message)
      : Error(ErrorCode::kParse,
              path + ":" + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Raised when a geometric configuration has no well-defined answer, e.g.
// parallel base directions or a non-rigid view graph.
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& message)
      : Error(ErrorCode::kDegenerate, message) {}
};

class EmptyResultError : public Error {
 public:
  explicit EmptyResultError(const std::string& message)
      : Error(ErrorCode::kEmptyResult, message) {}
};

}  // namespace aab
