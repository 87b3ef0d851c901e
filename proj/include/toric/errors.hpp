#pragma once

#include <stdexcept>
#include <string>

namespace toric {

/// Base class for all structured errors raised by the library.  The code is a
/// stable machine-readable tag (it ends up in CLI error reports).
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

struct NotStronglyConvexError : Error {
  explicit NotStronglyConvexError(const std::string& message)
      : Error("NotStronglyConvex", message) {}
};

struct ZeroConeError : Error {
  explicit ZeroConeError(const std::string& message)
      : Error("ZeroCone", message) {}
};

struct NotAFanError : Error {
  explicit NotAFanError(const std::string& message) : Error("NotAFan", message) {}
};

struct ConeNotInFanError : Error {
  explicit ConeNotInFanError(const std::string& message)
      : Error("ConeNotInFan", message) {}
};

struct NotAFaceError : Error {
  explicit NotAFaceError(const std::string& message)
      : Error("NotAFace", message) {}
};

struct ConeMismatchError : Error {
  explicit ConeMismatchError(const std::string& message)
      : Error("ConeMismatch", message) {}
};

struct FanMismatchError : Error {
  explicit FanMismatchError(const std::string& message)
      : Error("FanMismatch", message) {}
};

struct NotCompleteError : Error {
  explicit NotCompleteError(const std::string& message)
      : Error("NotComplete", message) {}
};

struct NotSimplicialError : Error {
  explicit NotSimplicialError(const std::string& message)
      : Error("NotSimplicial", message) {}
};

struct MaximalNotFullDimError : Error {
  explicit MaximalNotFullDimError(const std::string& message)
      : Error("MaximalNotFullDim", message) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& message) : Error("ParseError", message) {}
};

}  // namespace toric
