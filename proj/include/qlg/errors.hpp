#pragma once
// Structured failure kinds surfaced by the construction pipeline. These
// are reported, never silently retried.

#include <stdexcept>
#include <string>

namespace qlg {

enum class FailureKind {
    kInvalidParameters,    // tuple rejected by the validator
    kDegenerateParameters, // repeated root among a_1..a_6
    kInexactDivision,      // solve step divisibility violated (bad F or c)
    kUnexpectedFiberRank,  // degenerate fiber conic not of rank 2
    kRationalLines,        // fiber lines rational: a bitangent would be rational
    kLineOnCurve,          // line lies on the quartic
    kNotSmooth,            // discriminant quartic is singular; re-sample u
    kSearchExhausted,      // no parameter tuple below the bound
};

inline const char* failure_name(FailureKind k) {
    switch (k) {
        case FailureKind::kInvalidParameters: return "InvalidParameters";
        case FailureKind::kDegenerateParameters: return "DegenerateParameters";
        case FailureKind::kInexactDivision: return "InexactDivision";
        case FailureKind::kUnexpectedFiberRank: return "UnexpectedFiberRank";
        case FailureKind::kRationalLines: return "RationalLines";
        case FailureKind::kLineOnCurve: return "LineOnCurve";
        case FailureKind::kNotSmooth: return "NotSmooth";
        case FailureKind::kSearchExhausted: return "SearchExhausted";
    }
    return "Unknown";
}

class PipelineError : public std::runtime_error {
  public:
    PipelineError(FailureKind kind, const std::string& what)
        : std::runtime_error(std::string(failure_name(kind)) + ": " + what),
          kind_(kind) {}
    FailureKind kind() const { return kind_; }

  private:
    FailureKind kind_;
};

} // namespace qlg
