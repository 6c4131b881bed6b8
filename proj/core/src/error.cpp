#include "d2nn/error.hpp"

namespace d2nn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidGeometry: return "invalid geometry";
    case ErrorCode::kInvalidLayer: return "invalid layer";
    case ErrorCode::kInvalidInput: return "invalid input";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kUnsupported: return "unsupported operation";
    case ErrorCode::kCostGuard: return "cost guard";
    case ErrorCode::kDegenerateOutput: return "degenerate output";
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kConsistency: return "consistency error";
    case ErrorCode::kIo: return "io error";
    case ErrorCode::kEmptySplit: return "empty split";
    case ErrorCode::kConfig: return "config error";
  }
  return "error";
}

}  // namespace d2nn
