#pragma once

#include <cstdint>
#include <optional>

#include "thinsets/regvar.hpp"

namespace thinsets::hp {

// High-precision (50 significant digits, software float) membership decision,
// used when the binary64 margin is inside the ulp guard. Fields mirror the
// fast path; `exact` marks decisions settled by integer arithmetic.
struct FracDecision {
    bool in = false;
    double frac = 0.0;    // {sign*phi1(n)}
    double psi = 0.0;     // psi(n)
    double margin = 0.0;  // min(frac, 1-frac, |frac-psi|)
    bool exact = false;
    int floor_identity = 0;  // floor(u) - floor(u-psi), u = sign*phi1(n)
    int64_t label = 0;       // floor(phi1(n)) for plus, ceil(phi1(n)) for minus
    bool exhausted = false;  // still inside the high-precision guard
};

FracDecision membership(const InverseSpec& phi1, const PsiSpec& psi, bool minus, int64_t n);

// For the pow family with rational exponent c = p/q, compares phi1(n) = n^{q/p}
// against the nearest integer exactly (sign of n^q - r^p over big integers).
// nullopt when the family/exponent admits no exact comparison.
std::optional<int> exact_phi_cmp(const InverseSpec& phi1, int64_t n);

// phi1(n) and psi(n) rounded from 50-digit evaluations; for oracle use in tests.
double phi_value(const InverseSpec& phi1, int64_t n);
double psi_value(const PsiSpec& psi, int64_t n);

}  // namespace thinsets::hp
