#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "thinsets/signal.hpp"
#include "thinsets/thinset.hpp"

namespace thinsets {

using cplx = std::complex<double>;

enum class BWeight { unit, inv_psi };
enum class RefWeight { unit, psi };

// sum_{n in B cap [1,N]} w(n) e^{2 pi i n xi}, Kahan-compensated, exact
// additivity over disjoint n-ranges.
cplx exp_sum_over_B(const ThinSet& ts, int64_t N, double xi, BWeight w = BWeight::unit);

// sum_{n in [N]} e^{2 pi i n xi} (geometric closed form for xi != 0) or the
// psi-weighted direct sum.
cplx exp_sum_reference(const ThinSetSpec& spec, int64_t N, double xi, RefWeight w);

// Psi(N) = sum_{s=1..N} psi(s), Kahan over ascending s. The same accumulation
// order as the psi-weighted reference sum at xi = 0, so the two agree exactly.
double psi_prefix_sum(const ThinSetSpec& spec, int64_t N);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms residual of the least-squares fit
    bool valid = false;     // >= 6 points
};

// Least squares of log(y) against log(x); points with y <= 0 are skipped.
LineFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

// Admissibility of the decay exponent chi: (1-gamma1) + 3(1-gamma2) + 6 chi < 1.
bool chi_admissible(double gamma1, double gamma2, double chi);
double chi_max(double gamma1, double gamma2);

enum class ErrNormalization { raw, by_phi2 };

struct ExpSumReport {
    std::vector<int64_t> N_grid;
    std::vector<double> xi_grid;
    std::vector<std::vector<cplx>> lhs;  // [iN][ixi], sum over B
    std::vector<std::vector<cplx>> rhs;  // [iN][ixi], psi-weighted reference
    std::vector<std::vector<double>> abs_err;
    std::vector<double> sup_err;       // per N, sup over xi
    std::vector<double> sup_err_norm;  // sup_err / phi2(N)
    LineFit slope;                     // log sup_err_norm vs log N
    double max_over_median = 0.0;      // xi-uniformity summary at the largest N
    ErrNormalization normalization = ErrNormalization::by_phi2;
};

// Scans the kernel-vs-weight identity over (N, xi): per N the sup over the xi
// grid of |sum_{B cap [N]} e(n xi) - sum_{[N]} psi(n) e(n xi)|, normalized by
// phi2(N), with a fitted log-log decay slope.
ExpSumReport trest_scan(const ThinSet& ts, const std::vector<int64_t>& N_grid,
                        const std::vector<double>& xi_grid);

// {0} + Farey fractions of the given order + scaled low-discrepancy irrationals.
std::vector<double> default_xi_grid(int farey_order = 64);

struct SawtoothSplit {
    int64_t M = 0;
    std::vector<int64_t> n;
    std::vector<double> delta;      // truncated sawtooth difference Delta_M(n)
    std::vector<double> pi_tail;    // Pi_M(n) = (Phi(u-psi)-Phi(u)) - Delta_M(n)
    std::vector<double> psi;
    std::vector<int> indicator;     // 1_B(n)
    std::vector<double> residual;   // 1_B(n) - psi(n) - Delta_M(n) - Pi_M(n)
};

// Splits 1_B(n) = psi(n) + Delta_M(n) + Pi_M(n) on [n_lo, n_hi] with the
// sawtooth Phi(x) = {x} - 1/2 truncated at frequency M.
SawtoothSplit sawtooth_split(const ThinSet& ts, int64_t n_lo, int64_t n_hi, int64_t M);

}  // namespace thinsets
