#pragma once

#include <stdexcept>
#include <string>

namespace birsheet {

enum class ErrorCode {
    UnsupportedType,
    CapExceeded,
    InvalidOrbit,
    NoValidPartition,
    InconsistentEmbedding,
    InvalidInstance,
    UniquenessViolation,
    InconsistentVerdicts,
    PointOutsideComponent,
    IncompletePoset,
    Undecidable,
    NotSimplyConnected,
    Malformed,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& what) : std::runtime_error(what), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace birsheet
