#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "thinsets/error.hpp"

namespace thinsets {

// Registry of admissible regularly varying functions h(x) = x^c * l(x).
// Every family is evaluated through h(x) = exp(g(ln x)) with exact closed-form
// derivatives of g, which gives exact h', h'', h''' for all of them:
//   pow(c):         g(u) = c*u
//   pow_log(c):     g(u) = c*u + ln u          (x0 = e)
//   pow_div_log(c): g(u) = c*u - ln u          (x0 = e^2)
//   pow_explog(a):  g(u) = u + u^a, a in (0,1) (x0 = e, the c=1 regime)
enum class Family { pow, pow_log, pow_div_log, pow_explog };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct FunctionSpec {
    Family family = Family::pow;
    double c = 1.0;   // exponent; for pow_explog this is fixed to 1
    double a = 0.0;   // pow_explog parameter, a in (0,1); unused otherwise
    double x0 = 1.0;  // domain start

    double h(double x) const;
    double h_prime(double x) const;
    double h_second(double x) const;
    double h_third(double x) const;

    // c as a small rational p/q when the configured value is within 1e-9 of one
    // (q <= 64). Used by the exact boundary rescue in the membership test.
    bool c_is_rational() const { return c_den > 0; }
    int64_t c_num = 0;
    int64_t c_den = 0;
};

// pre: c in [1,2); for c == 1 the family's slowly varying part must satisfy the
// stricter conditions (positive decreasing theta, l -> infinity), which holds for
// pow_log and pow_explog only. Admissibility (monotonicity, convexity, slow
// variation of h/x^c) is checked on a built-in geometric grid.
FunctionSpec make_function(Family family, double c, double a = 0.0);

enum class InversionMode { closed_form, newton_bisection };

struct InverseSpec {
    FunctionSpec base;
    InversionMode mode = InversionMode::closed_form;
    double y_min = 1.0;  // = h(x0); phi is defined on [y_min, infinity)

    double phi(double y) const;
    double phi_prime(double y) const;
    double phi_second(double y) const;
    double phi_third(double y) const;
};

// Closed form for pow; otherwise bracketed Newton (seed y^{1/c}, bisection
// fallback, iteration budget 200).
InverseSpec invert(const FunctionSpec& spec);

enum class PsiMode {
    derivative,  // psi(x) = min(1/2, kappa * phi2'(x))
    increment,   // psi(x) = min(1/2, kappa * (phi2(x+1) - phi2(x)))
};

struct PsiSpec {
    InverseSpec base;  // phi2
    double kappa = 1.0;
    PsiMode mode = PsiMode::derivative;
    // Clip threshold: kappa*phi2' > 1/2 (so psi == 1/2) for x < clip_end.
    double clip_end = 1.0;
    // Left end of phi2's domain; psi is extended by its value there for x below.
    double x_lo = 1.0;

    double psi(double x) const;
    double psi_prime(double x) const;
    double psi_second(double x) const;
    bool clipped_at(double x) const { return x < clip_end; }
};

PsiSpec make_psi(const InverseSpec& inv, double kappa, PsiMode mode = PsiMode::derivative);

}  // namespace thinsets
