#ifndef LSEQ_ERROR_HPP
#define LSEQ_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace lseq {

enum class ErrorCode {
    InvalidArgument,
    IndexOutOfRange,
    NoTailBound,
    NonConvergent,
    BracketingFailed,
    InvalidWeights,
    Domain,
    NotOnSphere,
    WitnessUnavailable,
};

/// Upper-case identifier used in diagnostics, e.g. "NO_TAIL_BOUND".
std::string_view to_string(ErrorCode code) noexcept;

/// True for failures of a numerical procedure (as opposed to bad input).
bool is_numerical_failure(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace lseq

#endif
