#pragma once

#include <stdexcept>
#include <string>

namespace slicegeo {

enum class Errc {
    dimension_mismatch,
    zero_vector,
    zero_functional,
    depth_out_of_range,
    not_polytopal,
    dimension_budget_exceeded,
    empty_slice,
    invariant_violation,
    invalid_point,
    degenerate_component,
    level_mismatch,
    grid_mismatch,
    missing_stabilized_column,
    grid_incompatible,
    non_dyadic_support,
    grid_too_large,
    unsupported_space,
    resolution_too_low,
    invalid_spec,
    solver_failure,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::zero_vector: return "ZeroVector";
        case Errc::zero_functional: return "ZeroFunctional";
        case Errc::depth_out_of_range: return "DepthOutOfRange";
        case Errc::not_polytopal: return "NotPolytopal";
        case Errc::dimension_budget_exceeded: return "DimensionBudgetExceeded";
        case Errc::empty_slice: return "EmptySlice";
        case Errc::invariant_violation: return "InvariantViolation";
        case Errc::invalid_point: return "InvalidPoint";
        case Errc::degenerate_component: return "DegenerateComponent";
        case Errc::level_mismatch: return "LevelMismatch";
        case Errc::grid_mismatch: return "GridMismatch";
        case Errc::missing_stabilized_column: return "MissingStabilizedColumn";
        case Errc::grid_incompatible: return "GridIncompatible";
        case Errc::non_dyadic_support: return "NonDyadicSupport";
        case Errc::grid_too_large: return "GridTooLarge";
        case Errc::unsupported_space: return "UnsupportedSpace";
        case Errc::resolution_too_low: return "ResolutionTooLow";
        case Errc::invalid_spec: return "InvalidSpec";
        case Errc::solver_failure: return "SolverFailure";
    }
    return "Unknown";
}

/// Domain error carrying a machine-checkable code.
class DomainError : public std::runtime_error {
public:
    DomainError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw DomainError(code, what); }

}  // namespace slicegeo
