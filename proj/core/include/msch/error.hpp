#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace msch {

enum class ErrorCode {
    NonCommutingDiagram,
    NotOpen,
    NotSeparated,
    NotConnected,
    CompletionExceededBound,
    UnitsInconclusive,
    RequiresCancellative,
    MembershipBoundExceeded,
    InconsistentGluing,
    CocycleInvalid,
    NotSCancellative,
    InvalidArgument,
};

std::string_view error_name(ErrorCode code);

/// Mathematical failure raised by the library. The code names the failed
/// precondition so callers (the CLI in particular) can report it verbatim.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace msch
