#include "lseq/error.hpp"

namespace lseq {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::NoTailBound: return "NO_TAIL_BOUND";
    case ErrorCode::NonConvergent: return "NONCONVERGENT";
    case ErrorCode::BracketingFailed: return "BRACKETING_FAILED";
    case ErrorCode::InvalidWeights: return "INVALID_WEIGHTS";
    case ErrorCode::Domain: return "DOMAIN";
    case ErrorCode::NotOnSphere: return "NOT_ON_SPHERE";
    case ErrorCode::WitnessUnavailable: return "WITNESS_UNAVAILABLE";
    }
    return "UNKNOWN";
}

bool is_numerical_failure(ErrorCode code) noexcept {
    return code == ErrorCode::NonConvergent || code == ErrorCode::BracketingFailed;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

} // namespace lseq
