#include "thinsets/kernels.hpp"

#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include "thinsets/reference.hpp"

namespace thinsets {

namespace {

double smooth_step(double u) {
    // S(u)/(S(u)+S(1-u)) with S(u) = exp(-1/u) on u > 0; 0 at u <= 0, 1 at u >= 1.
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = std::exp(-1.0 / u);
    double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

size_t atom_count(const Signal& s) {
    size_t c = 0;
    for (double v : s.values) c += v != 0.0;
    return c;
}

}  // namespace

double bump_eta(double x) {
    if (x <= 0.5 || x >= 4.0) return 0.0;
    if (x >= 1.0 && x <= 2.0) return 1.0;
    if (x < 1.0) return smooth_step(2.0 * x - 1.0);
    return smooth_step((4.0 - x) / 2.0);
}

Kernel kernel_flat(const ThinSet& ts, int64_t t) {
    if (t < 1 || t > ts.N) fail(Errc::out_of_horizon, "kernel_flat: t outside horizon");
    int64_t bt = ts.count(t);
    if (bt == 0) fail(Errc::empty_set, "kernel_flat: B_t empty");
    Kernel k;
    k.kind = KernelKind::flat;
    k.scale = t;
    k.spec = ts.spec;
    k.signal = Signal::zeros(ts.elements.front(), t);
    double w = 1.0 / static_cast<double>(bt);
    for (int64_t n : ts.elements) {
        if (n > t) break;
        k.signal.ref(n) = w;
    }
    k.signal.trim();
    return k;
}

Kernel kernel_smooth_dyadic(const ThinSet& ts, int64_t N) {
    if (N < 1 || 4 * N > ts.N)
        fail(Errc::out_of_horizon, "kernel_smooth_dyadic: needs 4N <= horizon");
    Kernel k;
    k.kind = KernelKind::smooth_dyadic;
    k.scale = N;
    k.spec = ts.spec;
    int64_t lo = N / 2 + 1, hi = 4 * N - 1;
    k.signal = Signal::zeros(lo, hi);
    double norm = ts.spec.phi2_at(static_cast<double>(N));
    auto first = std::lower_bound(ts.elements.begin(), ts.elements.end(), lo);
    for (auto it = first; it != ts.elements.end() && *it <= hi; ++it) {
        double e = bump_eta(static_cast<double>(*it) / static_cast<double>(N));
        if (e != 0.0) k.signal.ref(*it) = e / norm;
    }
    return k;
}

Kernel kernel_weighted(const ThinSet& ts, int64_t t) {
    if (t < 1 || t > ts.N) fail(Errc::out_of_horizon, "kernel_weighted: t outside horizon");
    int64_t bt = ts.count(t);
    if (bt == 0) fail(Errc::empty_set, "kernel_weighted: B_t empty");
    Kernel k;
    k.kind = KernelKind::psi_weighted;
    k.scale = t;
    k.spec = ts.spec;
    k.signal = Signal::zeros(1, t);
    double inv = 1.0 / static_cast<double>(bt);
    for (int64_t s = 1; s <= t; ++s)
        k.signal.ref(s) = ts.spec.psi.psi(static_cast<double>(s)) * inv;
    return k;
}

Signal autocorr_fft(const Signal& s) {
    const size_t L = s.values.size();
    if (L == 0) return {};
    size_t need = 2 * L;  // >= 2L-1, no circular wrap for lags up to L-1
    size_t n = 1;
    while (n < need) n <<= 1;

    std::vector<double> in(n, 0.0);
    std::copy(s.values.begin(), s.values.end(), in.begin());
    std::vector<fftw_complex> spec(n / 2 + 1);
    std::vector<double> out(n, 0.0);

    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), spec.data(), FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec.data(), out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(fwd);
    for (auto& c : spec) {
        double re = c[0], im = c[1];
        c[0] = re * re + im * im;
        c[1] = 0.0;
    }
    fftw_execute(bwd);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }

    // out[k]/n = sum_j v_j v_{j+k}; mirror onto negative lags exactly.
    int64_t lag_max = static_cast<int64_t>(L) - 1;
    Signal res = Signal::zeros(-lag_max, lag_max);
    double scale = 1.0 / static_cast<double>(n);
    for (int64_t x = 0; x <= lag_max; ++x) {
        double v = out[static_cast<size_t>(x)] * scale;
        res.ref(x) = v;
        res.ref(-x) = v;
    }
    return res;
}

Signal autocorrelate(const Kernel& k) {
    if (atom_count(k.signal) <= (size_t(1) << 12)) return reference_autocorr(k.signal);
    return autocorr_fft(k.signal);
}

bool wt_hypotheses_hold(const ThinSetSpec& spec) {
    const FunctionSpec &a = spec.phi1.base, &b = spec.phi2.base;
    bool same = a.family == b.family && a.c == b.c && a.a == b.a;
    return same && a.c > 1.0 && a.c < 30.0 / 29.0;
}

AutocorrReport gn_en_split(const ThinSet& ts, int64_t N, double chi_probe) {
    AutocorrReport rep;
    rep.N = N;
    rep.chi_probe = chi_probe;
    rep.warn_outside_hypotheses = !wt_hypotheses_hold(ts.spec);

    Kernel kn = kernel_smooth_dyadic(ts, N);
    rep.kk = autocorrelate(kn);

    // G_N: same smooth window with psi replacing the indicator of B.
    Kernel gk;
    gk.spec = ts.spec;
    int64_t lo = N / 2 + 1, hi = 4 * N - 1;
    gk.signal = Signal::zeros(lo, hi);
    double norm = ts.spec.phi2_at(static_cast<double>(N));
    for (int64_t n = lo; n <= hi; ++n) {
        double e = bump_eta(static_cast<double>(n) / static_cast<double>(N));
        if (e != 0.0) gk.signal.ref(n) = ts.spec.psi.psi(static_cast<double>(n)) * e / norm;
    }
    rep.g = autocorrelate(gk);

    rep.phi1_N = ts.spec.phi1.phi(static_cast<double>(N));

    auto rs = run_stats(ts);
    rep.c0 = static_cast<double>(rs.max_run + 2 * std::max<int64_t>(rs.min_block_gap, 1));

    int64_t lag_max = std::max(rep.kk.hi(), rep.g.hi());
    rep.e = Signal::zeros(-lag_max, lag_max);
    double nd = static_cast<double>(N);
    for (int64_t x = -lag_max; x <= lag_max; ++x) {
        double ax = std::abs(static_cast<double>(x));
        double kkv = rep.kk.at(x);
        if (ax >= rep.c0 && ax <= rep.phi1_N)
            rep.c_small = std::max(rep.c_small, nd * std::abs(kkv));
        if (ax > rep.phi1_N) {
            double ev = kkv - rep.g.at(x);
            rep.e.ref(x) = ev;
            rep.e_max = std::max(rep.e_max, std::abs(ev));
        }
    }
    rep.e_bound = std::pow(nd, 1.0 + chi_probe) * rep.e_max;
    for (int64_t x = rep.g.lo(); x < rep.g.hi(); ++x)
        rep.lipschitz = std::max(rep.lipschitz, nd * nd * std::abs(rep.g.at(x + 1) - rep.g.at(x)));
    return rep;
}

}  // namespace thinsets
