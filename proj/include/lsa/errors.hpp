#pragma once

#include <stdexcept>
#include <string>

namespace lsa {

enum class ErrorCode {
    UnsupportedFamily,
    NotARoot,
    NotSimple,
    NotIsotropic,
    NotABase,
    EnumerationBudgetExceeded,
    RNotSimpleSubset,
    NotParabolic,
    IsPartition,
    XNotSubset,
    InvalidReflection,
    InvalidSCombination,
    WeightOffLattice,
    TruncationOverflow,
    HypothesisViolated,
    NoWitness,
    InvalidInput,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }
    // 3 for budget/truncation failures, 2 for everything else.
    int exit_code() const {
        return (code_ == ErrorCode::EnumerationBudgetExceeded ||
                code_ == ErrorCode::TruncationOverflow) ? 3 : 2;
    }

private:
    ErrorCode code_;
};

}  // namespace lsa
