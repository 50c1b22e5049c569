#include "thinsets/czd.hpp"

#include <algorithm>
#include <cmath>

#include "thinsets/kernels.hpp"

namespace thinsets {

namespace {

constexpr int64_t kMaxHullSpan = int64_t(1) << 26;

struct Atoms {
    std::vector<int64_t> pos;
    std::vector<double> val;
    std::vector<double> abs_prefix;  // abs_prefix[i] = sum |val| over [0, i)
    std::vector<double> sig_prefix;

    double abs_sum(size_t a, size_t b) const { return abs_prefix[b] - abs_prefix[a]; }
    double sig_sum(size_t a, size_t b) const { return sig_prefix[b] - sig_prefix[a]; }
};

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

// Stopping time below a cube known to have [|f|]_Q <= alpha: select the
// maximal descendants whose average exceeds alpha.
void select_cubes(const Atoms& at, double alpha, int64_t s, int64_t j, size_t a, size_t b,
                  std::vector<CZCube>& out) {
    if (a >= b || s == 0) return;  // unselected singletons have |f(x)| <= alpha
    int64_t half = int64_t(1) << (s - 1);
    int64_t mid_pos = (2 * j + 1) * half;
    size_t m = static_cast<size_t>(
        std::lower_bound(at.pos.begin() + static_cast<long>(a), at.pos.begin() + static_cast<long>(b), mid_pos) -
        at.pos.begin());
    struct Child {
        int64_t j;
        size_t a, b;
    } kids[2] = {{2 * j, a, m}, {2 * j + 1, m, b}};
    for (const auto& k : kids) {
        if (k.a >= k.b) continue;
        double avg = at.abs_sum(k.a, k.b) / static_cast<double>(half);
        if (avg > alpha) {
            CZCube q;
            q.s = s - 1;
            q.j = k.j;
            q.mean = at.sig_sum(k.a, k.b) / static_cast<double>(half);
            out.push_back(q);
        } else {
            select_cubes(at, alpha, s - 1, k.j, k.a, k.b, out);
        }
    }
}

// Smallest dyadic cube containing the atom range with average <= alpha; the
// range must be sign-uniform in position (all >= 0 or all < 0).
void root_and_select(const Atoms& at, double alpha, size_t a, size_t b, std::vector<CZCube>& out) {
    if (a >= b) return;
    int64_t s = 0;
    for (;;) {
        if (s > 62) fail(Errc::alpha_too_small, "root cube exceeded 2^62 span");
        int64_t jlo = floor_div(at.pos[a], int64_t(1) << s);
        int64_t jhi = floor_div(at.pos[b - 1], int64_t(1) << s);
        if (jlo == jhi) {
            double avg = at.abs_sum(a, b) / static_cast<double>(int64_t(1) << s);
            if (avg <= alpha) {
                select_cubes(at, alpha, s, jlo, a, b, out);
                return;
            }
        }
        ++s;
    }
}

void assert_invariants(const CZDecomposition& dec) {
    const Signal& f = dec.f;
    double alpha = dec.alpha;
    double f_l1 = f.l1();
    double slack = 1e-12 * std::max(1.0, f_l1);

    if (dec.g.l1() > f_l1 + slack) fail(Errc::identity_violation, "||g||_1 > ||f||_1");
    if (dec.g.linf() > 2.0 * alpha * (1.0 + 1e-12) + 1e-300)
        fail(Errc::identity_violation, "||g||_inf > 2 alpha");

    double cube_total = 0.0;
    for (const auto& q : dec.cubes) {
        Kahan sum, l1;
        for (int64_t x = q.lo(); x <= q.hi(); ++x) {
            double bx = f.at(x) - q.mean;
            sum.add(bx);
            l1.add(std::abs(bx));
        }
        if (std::abs(sum.value()) > slack) fail(Errc::identity_violation, "cube mean not removed");
        if (l1.value() > 4.0 * alpha * static_cast<double>(q.size()) * (1.0 + 1e-12))
            fail(Errc::identity_violation, "||b_{s,j}||_1 > 4 alpha |Q|");
        cube_total += static_cast<double>(q.size());
    }
    if (cube_total > f_l1 / alpha * (1.0 + 1e-12))
        fail(Errc::identity_violation, "sum |Q| > ||f||_1 / alpha");

    // Disjointness: sorted by lo, no overlaps.
    std::vector<std::pair<int64_t, int64_t>> spans;
    for (const auto& q : dec.cubes) spans.emplace_back(q.lo(), q.hi());
    std::sort(spans.begin(), spans.end());
    for (size_t i = 1; i < spans.size(); ++i)
        if (spans[i].first <= spans[i - 1].second)
            fail(Errc::identity_violation, "selected cubes overlap");
}

}  // namespace

Signal CZDecomposition::b() const { return axpy(f, -1.0, g); }

Signal CZDecomposition::b_of(const CZCube& q) const {
    Signal out = Signal::zeros(q.lo(), q.hi());
    for (int64_t x = q.lo(); x <= q.hi(); ++x) out.ref(x) = f.at(x) - q.mean;
    return out;
}

Signal CZDecomposition::b_level(int64_t s) const {
    int64_t lo = 0, hi = 0;
    bool any = false;
    for (const auto& q : cubes) {
        if (q.s != s) continue;
        lo = any ? std::min(lo, q.lo()) : q.lo();
        hi = any ? std::max(hi, q.hi()) : q.hi();
        any = true;
    }
    if (!any) return {};
    Signal out = Signal::zeros(lo, hi);
    for (const auto& q : cubes) {
        if (q.s != s) continue;
        for (int64_t x = q.lo(); x <= q.hi(); ++x) out.ref(x) = f.at(x) - q.mean;
    }
    return out;
}

std::vector<int64_t> CZDecomposition::levels() const {
    std::vector<int64_t> ls;
    for (const auto& q : cubes) ls.push_back(q.s);
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    return ls;
}

CZDecomposition cz_decompose(const Signal& f, double alpha) {
    if (!(alpha > 0.0)) fail(Errc::config_error, "alpha must be positive");
    if (f.empty()) fail(Errc::empty_input, "cz_decompose: empty signal");

    Atoms at;
    for (int64_t x = f.lo(); x <= f.hi(); ++x)
        if (f.at(x) != 0.0) {
            at.pos.push_back(x);
            at.val.push_back(f.at(x));
        }
    CZDecomposition dec;
    dec.f = f;
    dec.f.trim();
    dec.alpha = alpha;
    if (at.pos.empty()) {
        dec.g = f;
        return dec;
    }
    at.abs_prefix.assign(at.pos.size() + 1, 0.0);
    at.sig_prefix.assign(at.pos.size() + 1, 0.0);
    for (size_t i = 0; i < at.pos.size(); ++i) {
        at.abs_prefix[i + 1] = at.abs_prefix[i] + std::abs(at.val[i]);
        at.sig_prefix[i + 1] = at.sig_prefix[i] + at.val[i];
    }

    // The dyadic grid never joins negative and nonnegative positions, so the
    // stopping time runs separately inside the two half-line sibling cubes.
    size_t split = static_cast<size_t>(
        std::lower_bound(at.pos.begin(), at.pos.end(), int64_t(0)) - at.pos.begin());
    root_and_select(at, alpha, 0, split, dec.cubes);
    root_and_select(at, alpha, split, at.pos.size(), dec.cubes);

    int64_t lo = dec.f.lo(), hi = dec.f.hi();
    for (const auto& q : dec.cubes) {
        lo = std::min(lo, q.lo());
        hi = std::max(hi, q.hi());
    }
    if (hi - lo + 1 > kMaxHullSpan)
        fail(Errc::alpha_too_small, "decomposition hull exceeds the materialization cap");
    dec.g = Signal::zeros(lo, hi);
    for (int64_t x = dec.f.lo(); x <= dec.f.hi(); ++x) dec.g.ref(x) = dec.f.at(x);
    for (const auto& q : dec.cubes)
        for (int64_t x = q.lo(); x <= q.hi(); ++x) dec.g.ref(x) = q.mean;

    assert_invariants(dec);
    return dec;
}

RefinedSplit refine(const CZDecomposition& dec, double d_n, double D_n) {
    if (!(d_n >= 1.0) || !(D_n >= 1.0)) fail(Errc::config_error, "refine: d_n, D_n >= 1");
    RefinedSplit r;
    r.d_n = d_n;
    r.D_n = D_n;
    r.s_n = 0;
    while (static_cast<double>(int64_t(1) << r.s_n) < D_n) ++r.s_n;

    double thresh = dec.alpha * d_n;
    r.s_levels = dec.levels();
    int64_t lo = dec.g.lo(), hi = dec.g.hi();
    r.part_good = dec.g;
    r.part_bad = Signal::zeros(lo, hi);
    r.part_B_small = Signal::zeros(lo, hi);
    r.part_B_large = Signal::zeros(lo, hi);

    for (int64_t s : r.s_levels) {
        Signal bs = dec.b_level(s);
        Signal bn = Signal::zeros(bs.lo(), bs.hi());
        Signal hn = Signal::zeros(bs.lo(), bs.hi());
        for (int64_t x = bs.lo(); x <= bs.hi(); ++x) {
            double v = bs.at(x);
            if (std::abs(v) > thresh)
                bn.ref(x) = v;
            else
                hn.ref(x) = v;
        }
        Signal gn = Signal::zeros(bs.lo(), bs.hi());
        Signal Bn = Signal::zeros(bs.lo(), bs.hi());
        for (const auto& q : dec.cubes) {
            if (q.s != s) continue;
            Kahan mean;
            for (int64_t x = q.lo(); x <= q.hi(); ++x) mean.add(hn.at(x));
            double m = mean.value() / static_cast<double>(q.size());
            Kahan check, l1;
            for (int64_t x = q.lo(); x <= q.hi(); ++x) {
                gn.ref(x) = m;
                double B = hn.at(x) - m;
                Bn.ref(x) = B;
                check.add(B);
                l1.add(std::abs(B));
            }
            if (std::abs(check.value()) > 1e-12 * std::max(1.0, dec.f.l1()))
                fail(Errc::identity_violation, "B_s^n mean not zero on a cube");
            if (l1.value() >
                4.0 * dec.alpha * static_cast<double>(int64_t(1) << s) * (1.0 + 1e-12))
                fail(Errc::identity_violation, "||B_s^n 1_Q||_1 > 4 alpha 2^s");
        }
        for (int64_t x = bs.lo(); x <= bs.hi(); ++x) {
            r.part_bad.ref(x) += bn.at(x);
            r.part_good.ref(x) += gn.at(x);
            if (s < r.s_n)
                r.part_B_small.ref(x) += Bn.at(x);
            else
                r.part_B_large.ref(x) += Bn.at(x);
        }
        r.b_n.push_back(std::move(bn));
        r.h_n.push_back(std::move(hn));
        r.g_n.push_back(std::move(gn));
        r.B_n.push_back(std::move(Bn));
    }

    // Reconstruction: the four parts sum back to f pointwise.
    double worst = 0.0;
    for (int64_t x = lo; x <= hi; ++x) {
        double v = r.part_good.at(x) + r.part_bad.at(x) + r.part_B_small.at(x) +
                   r.part_B_large.at(x);
        worst = std::max(worst, std::abs(v - dec.f.at(x)));
    }
    if (worst > 1e-12 * std::max(1.0, dec.f.linf()))
        fail(Errc::identity_violation, "refined parts do not reconstruct f");
    return r;
}

AbsThmHarness verify_absthm_hypotheses(const ThinSet& ts, int n_lo, int n_hi) {
    if (n_lo > n_hi || n_lo < 1) fail(Errc::config_error, "verify_absthm: bad n range");
    if ((int64_t(1) << (n_hi + 2)) > ts.N)
        fail(Errc::out_of_horizon, "verify_absthm: horizon below 4*2^n_hi");

    AbsThmHarness h;
    h.warn_outside_hypotheses = !wt_hypotheses_hold(ts.spec);

    std::vector<double> Ds;
    for (int n = n_lo; n <= n_hi; ++n) {
        int64_t N = int64_t(1) << n;
        auto rep = gn_en_split(ts, N);
        double dn = std::ceil(rep.phi1_N);
        double Dn = static_cast<double>(int64_t(1) << (n + 2));
        h.n.push_back(n);
        h.d.push_back(dn);
        h.D.push_back(Dn);
        h.e_sup.push_back(rep.e_max);
        h.A = std::max(h.A, rep.c0);
        Ds.push_back(Dn);

        double small = 0.0, large = 0.0, lip = 0.0;
        for (int64_t x = rep.kk.lo(); x <= rep.kk.hi(); ++x) {
            double ax = std::abs(static_cast<double>(x));
            double Fx = ax <= rep.phi1_N ? rep.kk.at(x) : rep.g.at(x);
            if (ax <= rep.c0)
                small = std::max(small, dn * std::abs(Fx));
            else
                large = std::max(large, Dn * std::abs(Fx));
            if (ax > dn && std::abs(static_cast<double>(x + 1)) > dn && x + 1 <= rep.kk.hi()) {
                double Fx1 = std::abs(static_cast<double>(x + 1)) <= rep.phi1_N
                                 ? rep.kk.at(x + 1)
                                 : rep.g.at(x + 1);
                lip = std::max(lip, Dn * Dn * std::abs(Fx1 - Fx));
            }
        }
        h.small_stat.push_back(small);
        h.large_stat.push_back(large);
        h.lipschitz.push_back(lip);
    }

    h.e_fit = fit_loglog(Ds, h.e_sup);
    h.eps1 = -h.e_fit.slope - 1.0;
    h.eps0 = 0.0;
    for (size_t i = 0; i < h.d.size(); ++i)
        h.eps0 = std::max(h.eps0, std::log(h.d[i]) / std::log(h.D[i]));
    h.lacunarity_d = 1e300;
    h.lacunarity_D = 1e300;
    for (size_t i = 1; i < h.d.size(); ++i) {
        h.lacunarity_d = std::min(h.lacunarity_d, h.d[i] / h.d[i - 1]);
        h.lacunarity_D = std::min(h.lacunarity_D, h.D[i] / h.D[i - 1]);
    }
    return h;
}

WeakTypeReport weaktype_scan(const ThinSet& ts, const Signal& f,
                             const std::vector<double>& lambda_grid, const ScalePlan& plan) {
    WeakTypeReport rep;
    rep.f_l1 = f.l1();
    if (rep.f_l1 == 0.0) fail(Errc::empty_input, "weaktype_scan: zero signal");

    Signal mf = maximal(ts, f, plan, AvgOp::M);
    std::vector<double> vals;
    for (double v : mf.values)
        if (v > 0.0) vals.push_back(v);
    std::sort(vals.begin(), vals.end(), std::greater<>());

    // sup over all lambda: as lambda increases to a value v of Mf, the level
    // set is {Mf >= v}, so the sup is max over distinct v of v * #{Mf >= v}.
    for (size_t i = 0; i < vals.size(); ++i) {
        if (i + 1 < vals.size() && vals[i + 1] == vals[i]) continue;
        double stat = vals[i] * static_cast<double>(i + 1) / rep.f_l1;
        rep.sup_stat = std::max(rep.sup_stat, stat);
    }

    for (double lam : lambda_grid) {
        if (!(lam > 0.0)) fail(Errc::config_error, "weaktype_scan: lambda must be positive");
        // descending order: strictly-greater prefix ends where vals[i] <= lam
        auto it = std::lower_bound(vals.begin(), vals.end(), lam, std::greater<>());
        int64_t size = static_cast<int64_t>(it - vals.begin());
        rep.lambda.push_back(lam);
        rep.level_set_size.push_back(size);
        rep.grid_sup = std::max(rep.grid_sup, lam * static_cast<double>(size) / rep.f_l1);
    }
    return rep;
}

}  // namespace thinsets
