#pragma once

#include <stdexcept>
#include <string>

namespace bpmed {

// Exit codes double as error categories so the CLI can map exceptions 1:1.
enum class ErrorKind : int {
  validation = 2,
  size_limit = 3,
  verification = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

class SizeLimitError : public Error {
 public:
  explicit SizeLimitError(const std::string& what) : Error(ErrorKind::size_limit, what) {}
};

/// Two routes that must agree did not. Always a bug, never bad input.
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what) : Error(ErrorKind::verification, what) {}
};

}  // namespace bpmed
