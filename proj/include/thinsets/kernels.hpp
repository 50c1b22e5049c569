#pragma once

#include <cstdint>

#include "thinsets/signal.hpp"
#include "thinsets/thinset.hpp"

namespace thinsets {

// Fixed smooth bump: 0 outside (1/2, 4), identically 1 on [1, 2], glued with
// T(u) = S(u)/(S(u)+S(1-u)), S(u) = exp(-1/u) for u > 0.
double bump_eta(double x);

enum class KernelKind { flat, smooth_dyadic, psi_weighted };

struct Kernel {
    Signal signal;
    KernelKind kind = KernelKind::flat;
    int64_t scale = 0;  // t or N
    ThinSetSpec spec;

    double mass() const { return signal.sum(); }
};

// K_t: atoms of mass 1/|B_t| on B cap [1,t].
Kernel kernel_flat(const ThinSet& ts, int64_t t);
// K_N: atoms eta(n/N)/phi2(N) on B cap (N/2, 4N); requires 4N <= horizon.
Kernel kernel_smooth_dyadic(const ThinSet& ts, int64_t N);
// L_t: atoms psi(s)/|B_t| on every s in [1,t]; mass Psi(t)/|B_t|.
Kernel kernel_weighted(const ThinSet& ts, int64_t t);

// K * ~K: direct O(S^2) when the kernel has <= 2^12 atoms, FFT beyond. The
// output is computed for x >= 0 and mirrored, so symmetry is exact.
Signal autocorrelate(const Kernel& k);

// FFT route standalone (for the direct-vs-FFT agreement check).
Signal autocorr_fft(const Signal& s);

// True when the configuration satisfies the standing weak-type hypotheses:
// h1 == h2 and c1 in (1, 30/29).
bool wt_hypotheses_hold(const ThinSetSpec& spec);

struct AutocorrReport {
    int64_t N = 0;
    Signal kk;  // K_N * ~K_N
    Signal g;   // psi-smoothed analogue G_N
    Signal e;   // E_N = kk - g on |x| > phi1(N), zero inside
    double phi1_N = 0.0;
    double c0 = 0.0;        // lower cutoff: max_run + 2 * block gap bound
    double c_small = 0.0;   // max_{c0 <= |x| <= phi1(N)} N * |kk(x)|
    double e_max = 0.0;     // max_{|x| > phi1(N)} |e(x)|
    double e_bound = 0.0;   // N^{1+chi_probe} * e_max
    double chi_probe = 0.0;
    double lipschitz = 0.0;  // max_x N^2 |g(x+1) - g(x)|
    bool warn_outside_hypotheses = false;
};

// Computes K_N * ~K_N, G_N, and E_N = difference on |x| > phi1(N), with the
// report maxima filled. chi_probe scales the displayed E bound only.
AutocorrReport gn_en_split(const ThinSet& ts, int64_t N, double chi_probe = 0.0);

}  // namespace thinsets
