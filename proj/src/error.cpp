#include "apfstat/error.hpp"

namespace apfstat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kDuplicatePoints: return "DuplicatePoints";
    case ErrorKind::kAllCollinear: return "AllCollinear";
    case ErrorKind::kGridMismatch: return "GridMismatch";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kBadRank: return "BadRank";
    case ErrorKind::kBadK: return "BadK";
    case ErrorKind::kWindowOutOfRange: return "WindowOutOfRange";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kUnknownVertexInEdge: return "UnknownVertexInEdge";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kNumericFailure: return "NumericFailure";
  }
  return "Unknown";
}

}  // namespace apfstat
