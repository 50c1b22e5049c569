#include "thinsets/highprec.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

namespace thinsets::hp {

namespace {

using real50 = boost::multiprecision::cpp_bin_float_50;
using bigint = boost::multiprecision::cpp_int;

real50 g_of(const FunctionSpec& s, const real50& u) {
    switch (s.family) {
        case Family::pow: return real50(s.c) * u;
        case Family::pow_log: return real50(s.c) * u + log(u);
        case Family::pow_div_log: return real50(s.c) * u - log(u);
        case Family::pow_explog: return u + pow(u, real50(s.a));
    }
    fail(Errc::config_error, "unknown family");
}

real50 g1_of(const FunctionSpec& s, const real50& u) {
    switch (s.family) {
        case Family::pow: return real50(s.c);
        case Family::pow_log: return real50(s.c) + 1 / u;
        case Family::pow_div_log: return real50(s.c) - 1 / u;
        case Family::pow_explog: return 1 + real50(s.a) * pow(u, real50(s.a) - 1);
    }
    fail(Errc::config_error, "unknown family");
}

real50 phi_hp(const InverseSpec& inv, const real50& y) {
    if (inv.base.family == Family::pow) return exp(log(y) / real50(inv.base.c));
    // Newton on g(u) = log y, seeded from the binary64 inverse.
    real50 target = log(y);
    real50 u = log(real50(inv.phi(static_cast<double>(y))));
    for (int i = 0; i < 8; ++i) u -= (g_of(inv.base, u) - target) / g1_of(inv.base, u);
    return exp(u);
}

real50 psi_hp(const PsiSpec& p, const real50& x) {
    real50 xc = x < real50(p.x_lo) ? real50(p.x_lo) : x;
    real50 raw;
    if (p.mode == PsiMode::derivative) {
        // kappa / h'(phi(x)), h'(t) = exp(g(log t)) * g'(log t) / t
        real50 t = phi_hp(p.base, xc);
        real50 u = log(t);
        real50 h1 = exp(g_of(p.base.base, u)) * g1_of(p.base.base, u) / t;
        raw = real50(p.kappa) / h1;
    } else {
        raw = real50(p.kappa) * (phi_hp(p.base, xc + 1) - phi_hp(p.base, xc));
    }
    real50 half(0.5);
    return raw < half ? raw : half;
}

int64_t floor_i64(const real50& x) { return static_cast<int64_t>(floor(x)); }

}  // namespace

std::optional<int> exact_phi_cmp(const InverseSpec& phi1, int64_t n) {
    const FunctionSpec& s = phi1.base;
    if (s.family != Family::pow || !s.c_is_rational()) return std::nullopt;
    // phi(n) = n^{q/p} with c = p/q; compare with r = nearest integer via n^q vs r^p.
    int64_t p = s.c_num, q = s.c_den;
    if (p <= 0 || q <= 0 || p > 128 || q > 128) return std::nullopt;
    double approx = std::pow(static_cast<double>(n), static_cast<double>(q) / static_cast<double>(p));
    int64_t r = static_cast<int64_t>(std::llround(approx));
    if (r < 1) r = 1;
    bigint lhs = pow(bigint(n), static_cast<unsigned>(q));
    bigint rhs = pow(bigint(r), static_cast<unsigned>(p));
    if (lhs == rhs) return 0;
    return lhs > rhs ? 1 : -1;
}

FracDecision membership(const InverseSpec& phi1, const PsiSpec& psi, bool minus, int64_t n) {
    FracDecision d;
    real50 ph = phi_hp(phi1, real50(n));
    real50 ps = psi_hp(psi, real50(n));
    real50 u = minus ? -ph : ph;
    real50 fr = u - floor(u);
    real50 m1 = fr < 1 - fr ? fr : 1 - fr;
    real50 m2 = abs(fr - ps);
    real50 margin = m1 < m2 ? m1 : m2;

    d.frac = static_cast<double>(fr);
    d.psi = static_cast<double>(ps);
    d.margin = static_cast<double>(margin);
    d.in = fr < ps;
    d.floor_identity = static_cast<int>(floor_i64(u) - floor_i64(u - ps));
    d.label = minus ? -floor_i64(-ph) : floor_i64(ph);

    double scale = std::max(1.0, std::abs(static_cast<double>(ph)));
    double guard = 1e-35 * scale;
    if (d.margin >= guard) return d;

    // Inside the 50-digit guard: settle exactly where the structure allows.
    if (static_cast<double>(m1) < guard) {
        // phi1(n) within guard of an integer.
        auto cmp = exact_phi_cmp(phi1, n);
        if (!cmp) {
            d.exhausted = true;
            return d;
        }
        int64_t r = static_cast<int64_t>(std::llround(static_cast<double>(ph)));
        d.exact = true;
        if (*cmp == 0) {
            d.frac = 0.0;
            d.in = true;  // {u} = 0 < psi, both signs
            d.floor_identity = 1;
            d.label = r;
        } else if (!minus) {
            d.in = *cmp > 0;  // just above r: {phi} tiny; just below: {phi} near 1
            d.floor_identity = d.in ? 1 : 0;
            d.label = d.in ? r : r - 1;
        } else {
            d.in = *cmp < 0;  // just below r: {-phi} tiny; just above: {-phi} near 1
            d.floor_identity = d.in ? 1 : 0;
            d.label = d.in ? r : r + 1;
        }
        return d;
    }

    // {u} within guard of psi(n). Exactly resolvable for the inverse-increment
    // psi with kappa = 1 and sign minus, where a tie means phi1(n+1) is an
    // integer: {-phi(n)} = phi(n+1) - phi(n) iff ceil(phi(n)) = phi(n+1).
    if (minus && psi.mode == PsiMode::increment && psi.kappa == 1.0) {
        auto cmp = exact_phi_cmp(phi1, n + 1);
        if (cmp) {
            d.exact = true;
            d.in = *cmp > 0;  // psi - frac = phi(n+1) - ceil(phi(n))
            d.floor_identity = d.in ? 1 : 0;
            d.label = -floor_i64(-ph);
            return d;
        }
    }
    d.exhausted = true;
    return d;
}

double phi_value(const InverseSpec& phi1, int64_t n) {
    return static_cast<double>(phi_hp(phi1, real50(n)));
}

double psi_value(const PsiSpec& psi, int64_t n) {
    return static_cast<double>(psi_hp(psi, real50(n)));
}

}  // namespace thinsets::hp
