#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apfstat {

enum class ErrorKind {
  kInvalidArgument,
  kDuplicatePoints,
  kAllCollinear,
  kGridMismatch,
  kLengthMismatch,
  kBadRank,
  kBadK,
  kWindowOutOfRange,
  kParseError,
  kUnknownVertexInEdge,
  kIoError,
  kNumericFailure,
};

std::string_view to_string(ErrorKind kind);

// Every module reports failures through this one exception type; the kind
// decides the process exit code in the command-line front end.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Error(ErrorKind kind, const std::string& what, std::size_t line)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  // 1-based source line for parse errors, 0 when not applicable.
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_ = 0;
};

}  // namespace apfstat
