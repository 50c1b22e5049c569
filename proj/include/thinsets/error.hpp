#pragma once

#include <stdexcept>
#include <string>

namespace thinsets {

// Failure categories surfaced by the library. CLI maps config_error -> exit 2,
// assertion-style failures -> exit 3, io_error -> exit 4.
enum class Errc {
    inadmissible_exponent,
    inadmissible_slowly_varying,
    domain_too_small,
    no_convergence,
    precision_exhausted,
    out_of_horizon,
    empty_set,
    empty_plan,
    empty_input,
    non_monotone_psi,
    identity_violation,
    bad_cut_points,
    alpha_too_small,
    dimension_too_large,
    config_error,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::inadmissible_exponent: return "InadmissibleExponent";
        case Errc::inadmissible_slowly_varying: return "InadmissibleSlowlyVarying";
        case Errc::domain_too_small: return "DomainTooSmall";
        case Errc::no_convergence: return "NoConvergence";
        case Errc::precision_exhausted: return "PrecisionExhausted";
        case Errc::out_of_horizon: return "OutOfHorizon";
        case Errc::empty_set: return "EmptySet";
        case Errc::empty_plan: return "EmptyPlan";
        case Errc::empty_input: return "EmptyInput";
        case Errc::non_monotone_psi: return "NonMonotonePsi";
        case Errc::identity_violation: return "IdentityViolation";
        case Errc::bad_cut_points: return "BadCutPoints";
        case Errc::alpha_too_small: return "AlphaTooSmall";
        case Errc::dimension_too_large: return "DimensionTooLarge";
        case Errc::config_error: return "ConfigError";
        case Errc::io_error: return "IoError";
    }
    return "Error";
}

}  // namespace thinsets
