#include "msch/error.hpp"

namespace msch {

std::string_view error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonCommutingDiagram: return "NonCommutingDiagram";
    case ErrorCode::NotOpen: return "NotOpen";
    case ErrorCode::NotSeparated: return "NotSeparated";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::CompletionExceededBound: return "CompletionExceededBound";
    case ErrorCode::UnitsInconclusive: return "UnitsInconclusive";
    case ErrorCode::RequiresCancellative: return "RequiresCancellative";
    case ErrorCode::MembershipBoundExceeded: return "MembershipBoundExceeded";
    case ErrorCode::InconsistentGluing: return "InconsistentGluing";
    case ErrorCode::CocycleInvalid: return "CocycleInvalid";
    case ErrorCode::NotSCancellative: return "NotSCancellative";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace msch
