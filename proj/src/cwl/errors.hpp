// cwlidar is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cwl {

enum class ErrorCode {
    kUsage,           // bad arguments / unknown name
    kIo,              // file could not be read or written
    kParse,           // malformed scene or scan document
    kData,            // well-formed input that cannot be computed on
    kNoSignal,        // no return / no overlapping valid beams
    kNoGradientSignal,// tracked object contributes nothing to the scan
    kInconsistent,    // dual-frequency phases disagree
    kNonFinite,       // NaN or infinity in a differentiable evaluation
    kInternal,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

/// Raised when a gradient evaluation produces a non-finite value; carries the
/// index of the offending parameter (-1 when the value itself is non-finite).
class NonFiniteError : public Error {
  public:
    NonFiniteError(int parameter_index, const std::string &what)
        : Error(ErrorCode::kNonFinite, what), parameter_index_(parameter_index) {}
    int parameter_index() const { return parameter_index_; }

  private:
    int parameter_index_;
};

} // namespace cwl
