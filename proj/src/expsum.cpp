#include "thinsets/expsum.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace thinsets {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2 pi i n xi} with the product reduced mod 1 in extended precision.
cplx unit_phase(int64_t n, double xi) {
    long double m = std::fmod(static_cast<long double>(n) * static_cast<long double>(xi), 1.0L);
    double ang = kTwoPi * static_cast<double>(m);
    return {std::cos(ang), std::sin(ang)};
}

struct KahanC {
    Kahan re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

}  // namespace

cplx exp_sum_over_B(const ThinSet& ts, int64_t N, double xi, BWeight w) {
    if (N < 1 || N > ts.N) fail(Errc::out_of_horizon, "exp_sum_over_B: N outside [1, horizon]");
    KahanC acc;
    for (int64_t n : ts.elements) {
        if (n > N) break;
        cplx z = unit_phase(n, xi);
        if (w == BWeight::inv_psi) z /= ts.spec.psi.psi(static_cast<double>(n));
        acc.add(z);
    }
    return acc.value();
}

cplx exp_sum_reference(const ThinSetSpec& spec, int64_t N, double xi, RefWeight w) {
    if (w == RefWeight::unit) {
        if (xi == 0.0) return {static_cast<double>(N), 0.0};
        // Geometric: e(xi) (e(N xi) - 1) / (e(xi) - 1).
        cplx q = unit_phase(1, xi);
        cplx qn = unit_phase(N, xi);
        return q * (qn - cplx(1.0, 0.0)) / (q - cplx(1.0, 0.0));
    }
    KahanC acc;
    for (int64_t s = 1; s <= N; ++s)
        acc.add(spec.psi.psi(static_cast<double>(s)) * unit_phase(s, xi));
    return acc.value();
}

double psi_prefix_sum(const ThinSetSpec& spec, int64_t N) {
    Kahan acc;
    for (int64_t s = 1; s <= N; ++s) acc.add(spec.psi.psi(static_cast<double>(s)));
    return acc.value();
}

LineFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    LineFit f;
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (ys[i] > 0.0 && xs[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    size_t n = lx.size();
    if (n < 2) return f;
    double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double r = ly[i] - (f.intercept + f.slope * lx[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / static_cast<double>(n));
    f.valid = n >= 6;
    return f;
}

bool chi_admissible(double gamma1, double gamma2, double chi) {
    return chi > 0.0 && (1.0 - gamma1) + 3.0 * (1.0 - gamma2) + 6.0 * chi < 1.0;
}

double chi_max(double gamma1, double gamma2) {
    return (1.0 - (1.0 - gamma1) - 3.0 * (1.0 - gamma2)) / 6.0;
}

ExpSumReport trest_scan(const ThinSet& ts, const std::vector<int64_t>& N_grid,
                        const std::vector<double>& xi_grid) {
    if (N_grid.empty() || xi_grid.empty()) fail(Errc::empty_input, "trest_scan: empty grid");
    for (int64_t N : N_grid)
        if (N < 1 || N > ts.N) fail(Errc::out_of_horizon, "trest_scan: N outside horizon");
    if (!std::is_sorted(N_grid.begin(), N_grid.end()))
        fail(Errc::config_error, "trest_scan: N grid must be sorted");

    const int64_t Nmax = N_grid.back();
    const size_t nN = N_grid.size(), nXi = xi_grid.size();

    // psi values shared across xi columns.
    std::vector<double> psi_v(static_cast<size_t>(Nmax) + 1, 0.0);
    for (int64_t s = 1; s <= Nmax; ++s)
        psi_v[static_cast<size_t>(s)] = ts.spec.psi.psi(static_cast<double>(s));

    ExpSumReport rep;
    rep.N_grid = N_grid;
    rep.xi_grid = xi_grid;
    rep.lhs.assign(nN, std::vector<cplx>(nXi));
    rep.rhs.assign(nN, std::vector<cplx>(nXi));
    rep.abs_err.assign(nN, std::vector<double>(nXi));

    // Each xi column walks n = 1..Nmax once, snapshotting at the grid points.
    // The running phase is rotated incrementally and re-seeded every 4096 steps
    // to keep drift at the ulp level.
#pragma omp parallel for schedule(dynamic, 8)
    for (size_t ix = 0; ix < nXi; ++ix) {
        double xi = xi_grid[ix];
        cplx rot = unit_phase(1, xi);
        cplx phase = rot;
        KahanC lhs, rhs;
        size_t iN = 0;
        for (int64_t n = 1; n <= Nmax; ++n) {
            if ((n & 4095) == 0) phase = unit_phase(n, xi);
            if (ts.contains(n)) lhs.add(phase);
            rhs.add(psi_v[static_cast<size_t>(n)] * phase);
            if (iN < nN && n == N_grid[iN]) {
                rep.lhs[iN][ix] = lhs.value();
                rep.rhs[iN][ix] = rhs.value();
                rep.abs_err[iN][ix] = std::abs(lhs.value() - rhs.value());
                ++iN;
                while (iN < nN && N_grid[iN] == n) {
                    rep.lhs[iN][ix] = lhs.value();
                    rep.rhs[iN][ix] = rhs.value();
                    rep.abs_err[iN][ix] = rep.abs_err[iN - 1][ix];
                    ++iN;
                }
            }
            phase *= rot;
        }
    }

    rep.sup_err.resize(nN);
    rep.sup_err_norm.resize(nN);
    std::vector<double> Ns(nN);
    for (size_t i = 0; i < nN; ++i) {
        double sup = 0.0;
        for (size_t j = 0; j < nXi; ++j) sup = std::max(sup, rep.abs_err[i][j]);
        rep.sup_err[i] = sup;
        rep.sup_err_norm[i] = sup / ts.spec.phi2_at(static_cast<double>(N_grid[i]));
        Ns[i] = static_cast<double>(N_grid[i]);
    }
    rep.slope = fit_loglog(Ns, rep.sup_err_norm);

    std::vector<double> last = rep.abs_err.back();
    std::sort(last.begin(), last.end());
    double median = last[last.size() / 2];
    rep.max_over_median = median > 0.0 ? last.back() / median : 0.0;
    return rep;
}

std::vector<double> default_xi_grid(int farey_order) {
    std::vector<double> grid;
    grid.push_back(0.0);
    for (int q = 1; q <= farey_order; ++q)
        for (int p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) grid.push_back(static_cast<double>(p) / q);
    const double irr[] = {std::numbers::sqrt2 - 1.0, (std::sqrt(5.0) - 1.0) / 2.0,
                          std::numbers::pi - 3.0};
    for (double t : irr)
        for (int j : {0, 4, 8}) {
            double v = std::fmod(t * std::pow(2.0, j), 1.0);
            grid.push_back(v);
        }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

SawtoothSplit sawtooth_split(const ThinSet& ts, int64_t n_lo, int64_t n_hi, int64_t M) {
    if (M < 1) fail(Errc::config_error, "sawtooth_split: M >= 1 required");
    if (n_lo < 1 || n_hi < n_lo || n_hi > ts.N)
        fail(Errc::out_of_horizon, "sawtooth_split: range outside horizon");
    SawtoothSplit out;
    out.M = M;
    int64_t len = n_hi - n_lo + 1;
    out.n.resize(static_cast<size_t>(len));
    out.delta.resize(static_cast<size_t>(len));
    out.pi_tail.resize(static_cast<size_t>(len));
    out.psi.resize(static_cast<size_t>(len));
    out.indicator.resize(static_cast<size_t>(len));
    out.residual.resize(static_cast<size_t>(len));

#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < len; ++i) {
        int64_t n = n_lo + i;
        MembershipResult m = membership(ts.spec, n);
        // u = sign*phi1(n); both sawtooth arguments only need {u} and psi.
        double fu = m.frac;
        double fv = fu - m.psi;  // {u - psi} up to one wrap
        if (fv < 0.0) fv += 1.0;
        double phi_u = fu - 0.5;
        double phi_v = fv - 0.5;
        // Truncated series Phi_M(x) = -sum_{m<=M} sin(2 pi m x) / (pi m); the
        // paired +-m terms of the exponential sum are exactly this real form.
        Kahan du, dv;
        for (int64_t k = 1; k <= M; ++k) {
            double c = 1.0 / (std::numbers::pi * static_cast<double>(k));
            du.add(-c * std::sin(kTwoPi * static_cast<double>(k) * fu));
            dv.add(-c * std::sin(kTwoPi * static_cast<double>(k) * fv));
        }
        double delta = dv.value() - du.value();
        double ind = m.in ? 1.0 : 0.0;
        size_t ii = static_cast<size_t>(i);
        out.n[ii] = n;
        out.psi[ii] = m.psi;
        out.indicator[ii] = m.in ? 1 : 0;
        out.delta[ii] = delta;
        out.pi_tail[ii] = (phi_v - phi_u) - delta;
        out.residual[ii] = ind - m.psi - out.delta[ii] - out.pi_tail[ii];
    }
    return out;
}

}  // namespace thinsets
