#include "thinsets/regvar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thinsets {

namespace {

// Derivatives of g(u) where h(x) = exp(g(ln x)).
struct GDerivs {
    double g, g1, g2, g3;
};

GDerivs g_derivs(const FunctionSpec& s, double u) {
    switch (s.family) {
        case Family::pow:
            return {s.c * u, s.c, 0.0, 0.0};
        case Family::pow_log:
            return {s.c * u + std::log(u), s.c + 1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u)};
        case Family::pow_div_log:
            return {s.c * u - std::log(u), s.c - 1.0 / u, 1.0 / (u * u), -2.0 / (u * u * u)};
        case Family::pow_explog: {
            double ua = std::pow(u, s.a);
            return {u + ua, 1.0 + s.a * ua / u, s.a * (s.a - 1.0) * ua / (u * u),
                    s.a * (s.a - 1.0) * (s.a - 2.0) * ua / (u * u * u)};
        }
    }
    fail(Errc::config_error, "unknown family");
}

// Snap a double to a small rational p/q (q <= 64) when one is this close.
void snap_rational(FunctionSpec& s) {
    for (int64_t q = 1; q <= 64; ++q) {
        double pd = std::round(s.c * static_cast<double>(q));
        if (std::abs(s.c * static_cast<double>(q) - pd) < 1e-9 * static_cast<double>(q)) {
            s.c_num = static_cast<int64_t>(pd);
            s.c_den = q;
            return;
        }
    }
    s.c_num = 0;
    s.c_den = 0;
}

void check_admissible(const FunctionSpec& s) {
    // Grid checks: strict monotonicity, convexity, and h(2x)/h(x) -> 2^c.
    double x = s.x0;
    for (int i = 0; i < 120; ++i) {
        if (!(s.h_prime(x) > 0.0))
            fail(Errc::inadmissible_slowly_varying,
                 std::string(family_name(s.family)) + ": h not strictly increasing at x=" + std::to_string(x));
        if (s.h_second(x) < -1e-12 * std::abs(s.h_second(x) + 1.0))
            fail(Errc::inadmissible_slowly_varying,
                 std::string(family_name(s.family)) + ": h not convex at x=" + std::to_string(x));
        x *= 1.30103;
        if (x > 1e12) break;
    }
    // Slow variation of l(x) = h(x)/x^c: the doubling ratio approaches 2^c.
    // Declared tolerance 10% at x=1e12 plus a non-worsening trend; slowly
    // varying parts like exp(sqrt(log x)) converge at polylog rate only.
    double target = std::pow(2.0, s.c);
    double r6 = s.h(2e6) / s.h(1e6);
    double r12 = s.h(2e12) / s.h(1e12);
    if (std::abs(r12 / target - 1.0) > 0.10)
        fail(Errc::inadmissible_slowly_varying, "h(2x)/h(x) does not approach 2^c");
    if (std::abs(r12 - target) > std::abs(r6 - target) + 1e-12)
        fail(Errc::inadmissible_slowly_varying, "h(2x)/h(x) drifts away from 2^c");
    if (s.h(s.x0) < s.x0 * 0.999999 && s.family != Family::pow_div_log)
        fail(Errc::domain_too_small, "l(x0) < 1");
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::pow: return "pow";
        case Family::pow_log: return "pow_log";
        case Family::pow_div_log: return "pow_div_log";
        case Family::pow_explog: return "pow_explog";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
    if (name == "pow") return Family::pow;
    if (name == "pow_log") return Family::pow_log;
    if (name == "pow_div_log") return Family::pow_div_log;
    if (name == "pow_explog") return Family::pow_explog;
    return std::nullopt;
}

double FunctionSpec::h(double x) const {
    if (x < x0 * (1.0 - 1e-12)) fail(Errc::domain_too_small, "h evaluated below x0");
    return std::exp(g_derivs(*this, std::log(x)).g);
}

double FunctionSpec::h_prime(double x) const {
    auto d = g_derivs(*this, std::log(x));
    return std::exp(d.g) * d.g1 / x;
}

double FunctionSpec::h_second(double x) const {
    auto d = g_derivs(*this, std::log(x));
    return std::exp(d.g) * (d.g1 * d.g1 - d.g1 + d.g2) / (x * x);
}

double FunctionSpec::h_third(double x) const {
    auto d = g_derivs(*this, std::log(x));
    double p = d.g1 * d.g1 * d.g1 - 3.0 * d.g1 * d.g1 + 2.0 * d.g1 + 3.0 * d.g1 * d.g2 - 3.0 * d.g2 + d.g3;
    return std::exp(d.g) * p / (x * x * x);
}

FunctionSpec make_function(Family family, double c, double a) {
    FunctionSpec s;
    s.family = family;
    s.c = c;
    s.a = a;
    switch (family) {
        case Family::pow: s.x0 = 1.0; break;
        case Family::pow_log: s.x0 = std::numbers::e; break;
        case Family::pow_div_log: s.x0 = std::numbers::e * std::numbers::e; break;
        case Family::pow_explog:
            s.x0 = std::numbers::e;
            s.c = 1.0;
            if (!(a > 0.0 && a < 1.0)) fail(Errc::config_error, "pow_explog requires a in (0,1)");
            if (c != 1.0 && std::abs(c - 1.0) > 1e-12)
                fail(Errc::inadmissible_exponent, "pow_explog is the c=1 family");
            break;
    }
    if (!(s.c >= 1.0 && s.c < 2.0))
        fail(Errc::inadmissible_exponent, "c must lie in [1,2), got " + std::to_string(c));
    if (s.c == 1.0) {
        // c=1 demands the stricter slowly varying class: positive decreasing
        // theta with l -> infinity. Only pow_log and pow_explog qualify.
        if (family == Family::pow || family == Family::pow_div_log)
            fail(Errc::inadmissible_slowly_varying,
                 std::string(family_name(family)) + " does not satisfy the c=1 conditions");
    }
    snap_rational(s);
    check_admissible(s);
    return s;
}

double InverseSpec::phi(double y) const {
    if (y < y_min * (1.0 - 1e-12)) fail(Errc::domain_too_small, "phi evaluated below h(x0)");
    if (mode == InversionMode::closed_form) return std::pow(y, 1.0 / base.c);

    // Solve g(u) = ln y for u = ln x. Newton seeded at u = ln(y)/c with a
    // bisection bracket; the seed bracket [x0, 2*y^{1/c}+16] is grown
    // geometrically until it contains the root (needed for pow_div_log, where
    // h(x) < x^c so phi(y) > y^{1/c}).
    double target = std::log(y);
    double ulo = std::log(base.x0);
    double uhi = std::log(2.0 * std::pow(y, 1.0 / base.c) + 16.0);
    auto g_of = [&](double u) { return g_derivs(base, u).g; };
    auto g1_of = [&](double u) { return g_derivs(base, u).g1; };
    int grow = 0;
    while (g_of(uhi) < target) {
        uhi += std::numbers::ln2;
        if (++grow > 256) fail(Errc::no_convergence, "bracket growth exhausted");
    }
    if (g_of(ulo) > target) fail(Errc::domain_too_small, "phi target below domain");

    double u = std::clamp(target / base.c, ulo, uhi);
    for (int it = 0; it < 200; ++it) {
        double f = g_of(u) - target;
        if (f > 0)
            uhi = u;
        else
            ulo = u;
        double step = f / g1_of(u);
        double un = u - step;
        if (!(un > ulo && un < uhi)) un = 0.5 * (ulo + uhi);
        if (std::abs(un - u) <= 4e-16 * std::abs(un) || uhi - ulo <= 4e-16 * std::abs(uhi)) {
            u = un;
            break;
        }
        u = un;
        if (it == 199) fail(Errc::no_convergence, "phi Newton iteration budget exhausted");
    }
    return std::exp(u);
}

double InverseSpec::phi_prime(double y) const {
    if (mode == InversionMode::closed_form) {
        double inv_c = 1.0 / base.c;
        return inv_c * std::pow(y, inv_c - 1.0);
    }
    return 1.0 / base.h_prime(phi(y));
}

double InverseSpec::phi_second(double y) const {
    double x = phi(y);
    double h1 = base.h_prime(x);
    return -base.h_second(x) / (h1 * h1 * h1);
}

double InverseSpec::phi_third(double y) const {
    double x = phi(y);
    double h1 = base.h_prime(x);
    double h2 = base.h_second(x);
    double h3 = base.h_third(x);
    return (3.0 * h2 * h2 - h3 * h1) / std::pow(h1, 5);
}

InverseSpec invert(const FunctionSpec& spec) {
    InverseSpec inv;
    inv.base = spec;
    inv.mode = spec.family == Family::pow ? InversionMode::closed_form : InversionMode::newton_bisection;
    inv.y_min = spec.h(spec.x0);
    return inv;
}

double PsiSpec::psi(double x) const {
    double xc = std::max(x, x_lo);
    double raw;
    if (mode == PsiMode::derivative)
        raw = kappa * base.phi_prime(xc);
    else
        raw = kappa * (base.phi(xc + 1.0) - base.phi(xc));
    return std::min(0.5, raw);
}

double PsiSpec::psi_prime(double x) const {
    double xc = std::max(x, x_lo);
    if (clipped_at(xc)) return 0.0;
    if (mode == PsiMode::derivative) return kappa * base.phi_second(xc);
    return kappa * (base.phi_prime(xc + 1.0) - base.phi_prime(xc));
}

double PsiSpec::psi_second(double x) const {
    double xc = std::max(x, x_lo);
    if (clipped_at(xc)) return 0.0;
    if (mode == PsiMode::derivative) return kappa * base.phi_third(xc);
    return kappa * (base.phi_second(xc + 1.0) - base.phi_second(xc));
}

PsiSpec make_psi(const InverseSpec& inv, double kappa, PsiMode mode) {
    if (!(kappa > 0.0)) fail(Errc::config_error, "kappa must be positive");
    PsiSpec p;
    p.base = inv;
    p.kappa = kappa;
    p.mode = mode;
    p.x_lo = inv.y_min;

    // Locate the clip threshold: raw psi is decreasing, so bisect for the point
    // where it crosses 1/2. Below x_lo psi is extended by a constant.
    auto raw = [&](double x) {
        double xc = std::max(x, p.x_lo);
        return mode == PsiMode::derivative ? kappa * inv.phi_prime(xc)
                                           : kappa * (inv.phi(xc + 1.0) - inv.phi(xc));
    };
    if (raw(p.x_lo) <= 0.5) {
        p.clip_end = p.x_lo;
    } else {
        double lo = p.x_lo, hi = std::max(2.0 * p.x_lo, 2.0);
        int grow = 0;
        while (raw(hi) > 0.5) {
            hi *= 2.0;
            if (++grow > 200) fail(Errc::no_convergence, "psi never drops below 1/2");
        }
        for (int i = 0; i < 200 && hi - lo > 1e-9 * hi; ++i) {
            double mid = 0.5 * (lo + hi);
            (raw(mid) > 0.5 ? lo : hi) = mid;
        }
        p.clip_end = hi;
    }
    return p;
}

}  // namespace thinsets
