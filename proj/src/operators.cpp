#include "thinsets/operators.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "thinsets/kernels.hpp"

namespace thinsets {

namespace {

void require_nonempty(const Signal& f) {
    if (f.empty()) fail(Errc::empty_input, "empty signal");
}

// Prefix sums P[i] = sum of f over [f.lo, f.lo+i-1]; window sums come out as
// differences, O(1) per query after O(support) setup.
std::vector<double> prefix_sums(const Signal& f) {
    std::vector<double> P(f.values.size() + 1, 0.0);
    for (size_t i = 0; i < f.values.size(); ++i) P[i + 1] = P[i] + f.values[i];
    return P;
}

double window_sum(const Signal& f, const std::vector<double>& P, int64_t a, int64_t b) {
    // sum of f over [a, b]
    if (b < a) return 0.0;
    int64_t lo = std::max(a, f.lo()), hi = std::min(b, f.hi());
    if (hi < lo) return 0.0;
    return P[static_cast<size_t>(hi - f.offset + 1)] - P[static_cast<size_t>(lo - f.offset)];
}

std::vector<double> psi_values(const ThinSetSpec& spec, int64_t t) {
    std::vector<double> v(static_cast<size_t>(t) + 1, 0.0);
    for (int64_t s = 1; s <= t; ++s) v[static_cast<size_t>(s)] = spec.psi.psi(static_cast<double>(s));
    return v;
}

const std::vector<double> kNormPGrid = {1.25, 1.5, 2.0, 3.0, 4.0};

}  // namespace

Signal apply_M(const ThinSet& ts, const Signal& f, int64_t t) {
    require_nonempty(f);
    if (t < 1 || t > ts.N) fail(Errc::out_of_horizon, "apply_M: t outside horizon");
    int64_t bt = ts.count(t);
    if (bt == 0) fail(Errc::empty_set, "apply_M: B_t empty");
    Signal out = Signal::zeros(f.lo() + ts.elements.front(), f.hi() + t);
    double inv = 1.0 / static_cast<double>(bt);
#pragma omp parallel for schedule(static)
    for (int64_t x = out.lo(); x <= out.hi(); ++x) {
        Kahan acc;
        for (int64_t n : ts.elements) {
            if (n > t) break;
            acc.add(f.at(x - n));
        }
        out.ref(x) = acc.value() * inv;
    }
    return out;
}

Signal apply_A(const ThinSet& ts, const Signal& f, int64_t t) {
    require_nonempty(f);
    if (t < 1 || t > ts.N) fail(Errc::out_of_horizon, "apply_A: t outside horizon");
    int64_t bt = ts.count(t);
    if (bt == 0) fail(Errc::empty_set, "apply_A: B_t empty");
    auto psi_v = psi_values(ts.spec, t);
    Signal out = Signal::zeros(f.lo() + 1, f.hi() + t);
    double inv = 1.0 / static_cast<double>(bt);
#pragma omp parallel for schedule(static)
    for (int64_t x = out.lo(); x <= out.hi(); ++x) {
        Kahan acc;
        int64_t s_lo = std::max<int64_t>(1, x - f.hi()), s_hi = std::min(t, x - f.lo());
        for (int64_t s = s_lo; s <= s_hi; ++s) acc.add(psi_v[static_cast<size_t>(s)] * f.at(x - s));
        out.ref(x) = acc.value() * inv;
    }
    return out;
}

Signal apply_D(const ThinSetSpec& spec, const Signal& f, int64_t t) {
    require_nonempty(f);
    if (t < 1) fail(Errc::config_error, "apply_D: t >= 1");
    auto psi_v = psi_values(spec, t);
    double Psi = 0.0;
    {
        Kahan k;
        for (int64_t s = 1; s <= t; ++s) k.add(psi_v[static_cast<size_t>(s)]);
        Psi = k.value();
    }
    Signal out = Signal::zeros(f.lo() + 1, f.hi() + t);
    double inv = 1.0 / Psi;
#pragma omp parallel for schedule(static)
    for (int64_t x = out.lo(); x <= out.hi(); ++x) {
        Kahan acc;
        int64_t s_lo = std::max<int64_t>(1, x - f.hi()), s_hi = std::min(t, x - f.lo());
        for (int64_t s = s_lo; s <= s_hi; ++s) acc.add(psi_v[static_cast<size_t>(s)] * f.at(x - s));
        out.ref(x) = acc.value() * inv;
    }
    return out;
}

Signal apply_H(const Signal& f, int64_t t) {
    require_nonempty(f);
    if (t < 1) fail(Errc::config_error, "apply_H: t >= 1");
    auto P = prefix_sums(f);
    Signal out = Signal::zeros(f.lo() + 1, f.hi() + t);
    double inv = 1.0 / static_cast<double>(t);
    for (int64_t x = out.lo(); x <= out.hi(); ++x)
        out.ref(x) = window_sum(f, P, x - t, x - 1) * inv;
    return out;
}

std::vector<double> lambda_weights(const PsiSpec& psi, int64_t k) {
    if (k < 1) fail(Errc::config_error, "lambda_weights: k >= 1");
    std::vector<double> psi_v(static_cast<size_t>(k) + 2);
    for (int64_t s = 1; s <= k + 1; ++s) psi_v[static_cast<size_t>(s)] = psi.psi(static_cast<double>(s));
    for (int64_t s = 1; s <= k; ++s)
        if (psi_v[static_cast<size_t>(s + 1)] > psi_v[static_cast<size_t>(s)] + 1e-15)
            fail(Errc::non_monotone_psi, "psi increases at s=" + std::to_string(s));
    Kahan Psi;
    for (int64_t s = 1; s <= k; ++s) Psi.add(psi_v[static_cast<size_t>(s)]);
    double inv = 1.0 / Psi.value();
    std::vector<double> lam(static_cast<size_t>(k) + 1, 0.0);
    for (int64_t s = 1; s < k; ++s)
        lam[static_cast<size_t>(s)] = static_cast<double>(s) *
                                      (psi_v[static_cast<size_t>(s)] - psi_v[static_cast<size_t>(s + 1)]) * inv;
    lam[static_cast<size_t>(k)] = static_cast<double>(k) * psi_v[static_cast<size_t>(k)] * inv;
    return lam;  // lam[0] unused
}

Signal dk_via_hk(const ThinSetSpec& spec, const Signal& f, int64_t k) {
    require_nonempty(f);
    auto lam = lambda_weights(spec.psi, k);
    auto P = prefix_sums(f);
    Signal out = Signal::zeros(f.lo() + 1, f.hi() + k);
#pragma omp parallel for schedule(static)
    for (int64_t x = out.lo(); x <= out.hi(); ++x) {
        Kahan acc;
        for (int64_t s = 1; s <= k; ++s) {
            double w = lam[static_cast<size_t>(s)];
            if (w == 0.0) continue;
            acc.add(w * window_sum(f, P, x - s, x - 1) / static_cast<double>(s));
        }
        out.ref(x) = acc.value();
    }
    Signal direct = apply_D(spec, f, k);
    double tol = 1e-10 * std::max(1e-300, f.linf());
    double worst = 0.0;
    int64_t worst_x = out.lo();
    for (int64_t x = out.lo(); x <= out.hi(); ++x) {
        double d = std::abs(out.at(x) - direct.at(x));
        if (d > worst) {
            worst = d;
            worst_x = x;
        }
    }
    if (worst > tol)
        fail(Errc::identity_violation,
             "dk_via_hk deviates from apply_D by " + std::to_string(worst) + " at x=" + std::to_string(worst_x));
    return out;
}

int64_t Rearrangement::N_of(double t) const {
    // first index with cumulative weight > t
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    if (it == breakpoints.end()) return static_cast<int64_t>(breakpoints.size());
    return static_cast<int64_t>(it - breakpoints.begin()) + 1;
}

Rearrangement rearrangement_Nk(const PsiSpec& psi, int64_t k) {
    Rearrangement r;
    auto lam = lambda_weights(psi, k);
    r.lambdas.assign(lam.begin() + 1, lam.end());
    r.breakpoints.resize(r.lambdas.size());
    Kahan acc;
    for (size_t s = 0; s < r.lambdas.size(); ++s) {
        acc.add(r.lambdas[s]);
        r.breakpoints[s] = acc.value();
    }
    return r;
}

Signal dk_via_rearrangement(const ThinSetSpec& spec, const Signal& f, int64_t k) {
    require_nonempty(f);
    auto r = rearrangement_Nk(spec.psi, k);
    auto P = prefix_sums(f);
    Signal out = Signal::zeros(f.lo() + 1, f.hi() + k);
#pragma omp parallel for schedule(static)
    for (int64_t x = out.lo(); x <= out.hi(); ++x) {
        Kahan acc;
        double prev = 0.0;
        for (size_t s = 0; s < r.breakpoints.size(); ++s) {
            double len = r.breakpoints[s] - prev;  // |I_s| from breakpoint differences
            prev = r.breakpoints[s];
            if (len == 0.0) continue;
            int64_t m = static_cast<int64_t>(s) + 1;
            acc.add(len * window_sum(f, P, x - m, x - 1) / static_cast<double>(m));
        }
        out.ref(x) = acc.value();
    }
    return out;
}

ScalePlan make_plan_all(const ThinSet& ts) {
    ScalePlan p;
    p.kind = ScalePlan::Kind::all_t;
    p.scales = ts.elements;
    if (p.scales.empty()) fail(Errc::empty_plan, "all_t plan over an empty set");
    return p;
}

ScalePlan make_plan_dyadic(int64_t horizon) {
    ScalePlan p;
    p.kind = ScalePlan::Kind::dyadic;
    for (int64_t t = 1; t <= horizon; t *= 2) p.scales.push_back(t);
    if (p.scales.empty()) fail(Errc::empty_plan, "dyadic plan empty");
    return p;
}

ScalePlan make_plan_tau(double tau, int64_t horizon, double p0) {
    if (!(tau > 0.0 && tau < 0.5)) fail(Errc::config_error, "tau must lie in (0, 1/2)");
    if (p0 > 1.0 && !(tau < std::min((p0 - 1.0) / 2.0, 0.5)))
        fail(Errc::config_error, "tau >= min{(p0-1)/2, 1/2}");
    ScalePlan p;
    p.kind = ScalePlan::Kind::tau_dyadic;
    p.tau = tau;
    for (int64_t n = 0;; ++n) {
        double v = std::pow(2.0, std::pow(static_cast<double>(n), tau));
        if (v > static_cast<double>(horizon)) break;
        int64_t t = static_cast<int64_t>(v);
        if (p.scales.empty() || t > p.scales.back()) p.scales.push_back(t);
        if (n > 1 << 26) break;
    }
    if (p.scales.empty()) fail(Errc::empty_plan, "tau plan empty");
    return p;
}

namespace {

struct Hit {
    int64_t elem;    // element of B at x - p
    int64_t index;   // 1-based rank of elem in the element list
    double weight;   // |f|(p)
};

// Hits of x against supp |f| inside B, ascending in the element: atom
// positions ascend, so x - p descends and a reverse walk needs no sort.
void collect_hits(const ThinSet& ts, const std::vector<std::pair<int64_t, double>>& atoms,
                  int64_t x, std::vector<Hit>& hits) {
    hits.clear();
    for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
        int64_t e = x - it->first;
        if (e >= 1 && e <= ts.N && ts.contains(e))
            hits.push_back({e, ts.count(e), it->second});
    }
}

std::vector<std::pair<int64_t, double>> abs_atoms(const Signal& f) {
    std::vector<std::pair<int64_t, double>> atoms;
    for (int64_t x = f.lo(); x <= f.hi(); ++x)
        if (f.at(x) != 0.0) atoms.emplace_back(x, std::abs(f.at(x)));
    return atoms;
}

}  // namespace

Signal maximal(const ThinSet& ts, const Signal& f, const ScalePlan& plan, AvgOp op) {
    require_nonempty(f);
    if (plan.scales.empty()) fail(Errc::empty_plan, "maximal: empty plan");
    Signal af = f.abs();
    const int64_t t_max = std::min(plan.scales.back(), ts.N);

    Signal out = Signal::zeros(af.lo() + 1, af.hi() + t_max);

    if (op == AvgOp::M) {
        if (ts.elements.empty()) fail(Errc::empty_set, "maximal M over an empty set");
        auto atoms = abs_atoms(af);
        // The hit-index shortcut is exact only against the full element list;
        // truncated all_t plans go through the generic restricted-plan walk.
        const bool all_scales = plan.kind == ScalePlan::Kind::all_t &&
                                plan.scales.size() == ts.elements.size();
#pragma omp parallel
        {
            std::vector<Hit> hits;
#pragma omp for schedule(static)
            for (int64_t x = out.lo(); x <= out.hi(); ++x) {
                collect_hits(ts, atoms, x, hits);
                double best = 0.0;
                if (all_scales) {
                    // num/count(t) is maximal right at a hit: count minimal there.
                    double cum = 0.0;
                    for (const Hit& h : hits) {
                        cum += h.weight;
                        best = std::max(best, cum / static_cast<double>(h.index));
                    }
                } else {
                    double cum = 0.0;
                    for (const Hit& h : hits) {
                        cum += h.weight;
                        // first plan scale >= this element
                        auto it = std::lower_bound(plan.scales.begin(), plan.scales.end(), h.elem);
                        if (it == plan.scales.end()) continue;
                        int64_t t = std::min(*it, ts.N);
                        if (t < h.elem) continue;
                        // cum here counts hits <= h.elem <= t; later hits <= t join at their turn
                        best = std::max(best, cum / static_cast<double>(ts.count(t)));
                    }
                }
                out.ref(x) = best;
            }
        }
        return out;
    }

    if (op == AvgOp::smooth_dyadic) {
        auto atoms = abs_atoms(af);
        std::vector<int64_t> Ns;
        for (int64_t t : plan.scales)
            if (4 * t <= ts.N) Ns.push_back(t);
        if (Ns.empty()) fail(Errc::empty_plan, "smooth_dyadic: no scale fits the horizon");
        std::vector<double> norms;
        for (int64_t t : Ns) norms.push_back(ts.spec.phi2_at(static_cast<double>(t)));
#pragma omp parallel for schedule(static)
        for (int64_t x = out.lo(); x <= out.hi(); ++x) {
            double best = 0.0;
            for (size_t i = 0; i < Ns.size(); ++i) {
                double acc = 0.0;
                for (const auto& [p, w] : atoms) {
                    int64_t e = x - p;
                    if (e < 1 || e > ts.N || !ts.contains(e)) continue;
                    double eta = bump_eta(static_cast<double>(e) / static_cast<double>(Ns[i]));
                    if (eta != 0.0) acc += eta * w;
                }
                best = std::max(best, acc / norms[i]);
            }
            out.ref(x) = best;
        }
        return out;
    }

    // A/D/H: walk s = 1..t_max once per x, snapshotting at the plan's scales.
    std::vector<double> psi_v;
    std::vector<double> Psi_prefix;
    if (op == AvgOp::A || op == AvgOp::D) {
        psi_v = psi_values(ts.spec, t_max);
        if (op == AvgOp::D) {
            Psi_prefix.assign(static_cast<size_t>(t_max) + 1, 0.0);
            Kahan k;
            for (int64_t s = 1; s <= t_max; ++s) {
                k.add(psi_v[static_cast<size_t>(s)]);
                Psi_prefix[static_cast<size_t>(s)] = k.value();
            }
        }
    }
#pragma omp parallel for schedule(static)
    for (int64_t x = out.lo(); x <= out.hi(); ++x) {
        double best = 0.0;
        double num = 0.0;
        size_t ip = 0;
        for (int64_t s = 1; s <= t_max; ++s) {
            double fv = af.at(x - s);
            if (fv != 0.0) num += (op == AvgOp::H) ? fv : psi_v[static_cast<size_t>(s)] * fv;
            while (ip < plan.scales.size() && plan.scales[ip] == s) {
                double den;
                if (op == AvgOp::H)
                    den = static_cast<double>(s);
                else if (op == AvgOp::D)
                    den = Psi_prefix[static_cast<size_t>(s)];
                else {
                    int64_t bt = ts.count(s);
                    den = bt == 0 ? 0.0 : static_cast<double>(bt);
                }
                if (den > 0.0) best = std::max(best, num / den);
                ++ip;
            }
        }
        out.ref(x) = best;
    }
    return out;
}

OscillationReport oscillation(const ThinSet& ts, const Signal& f, const std::vector<int64_t>& cuts,
                              AvgOp op, bool with_v2) {
    require_nonempty(f);
    if (cuts.size() < 2 || !std::is_sorted(cuts.begin(), cuts.end()) ||
        std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end() || cuts.front() < 1 ||
        cuts.back() > ts.N)
        fail(Errc::bad_cut_points, "cuts must be strictly increasing within [1, horizon]");
    if (op == AvgOp::M && (ts.elements.empty() || cuts.front() < ts.elements.front()))
        fail(Errc::bad_cut_points, "op M needs I_0 >= first element");
    if (op == AvgOp::smooth_dyadic) fail(Errc::config_error, "oscillation: unsupported op");

    const int64_t t_lo = cuts.front(), t_hi = cuts.back();  // window range [I_0, I_J)
    const size_t J = cuts.size() - 1;

    OscillationReport rep;
    rep.cuts = cuts;
    rep.osc = Signal::zeros(f.lo() + 1, f.hi() + t_hi);
    rep.has_v2 = with_v2;
    if (with_v2) rep.v2 = Signal::zeros(rep.osc.lo(), rep.osc.hi());
    bool v2_all_exact = true;

    std::vector<double> psi_v;
    std::vector<double> Psi_prefix;
    if (op == AvgOp::A || op == AvgOp::D) {
        psi_v = psi_values(ts.spec, t_hi);
        Psi_prefix.assign(static_cast<size_t>(t_hi) + 1, 0.0);
        Kahan k;
        for (int64_t s = 1; s <= t_hi; ++s) {
            k.add(psi_v[static_cast<size_t>(s)]);
            Psi_prefix[static_cast<size_t>(s)] = k.value();
        }
    }

#pragma omp parallel
    {
        std::vector<double> local_seq;
        bool local_exact_flag = true;
#pragma omp for schedule(static)
        for (int64_t x = rep.osc.lo(); x <= rep.osc.hi(); ++x) {
            // incremental state of a_t(x) walked over t = 1..t_hi
            double num = 0.0;
            int64_t den_count = 0;
            size_t elem_i = 0;
            local_seq.clear();

            double window_sup2 = 0.0, total = 0.0, a_ref = 0.0;
            size_t window = 0;  // current window index; active once t >= cuts[0]
            bool in_range = false;

            auto value_at = [&](int64_t t) -> double {
                switch (op) {
                    case AvgOp::M:
                        return den_count == 0 ? 0.0 : num / static_cast<double>(den_count);
                    case AvgOp::A: {
                        int64_t bt = ts.count(t);
                        return bt == 0 ? 0.0 : num / static_cast<double>(bt);
                    }
                    case AvgOp::D:
                        return num / Psi_prefix[static_cast<size_t>(t)];
                    case AvgOp::H:
                        return num / static_cast<double>(t);
                    default:
                        return 0.0;
                }
            };

            for (int64_t t = 1; t <= t_hi; ++t) {
                bool value_changed = false;
                if (op == AvgOp::M) {
                    if (elem_i < ts.elements.size() && ts.elements[elem_i] == t) {
                        num += f.at(x - t);
                        den_count += 1;
                        ++elem_i;
                        value_changed = true;
                    }
                } else if (op == AvgOp::H) {
                    num += f.at(x - t);
                    value_changed = true;
                } else {
                    num += psi_v[static_cast<size_t>(t)] * f.at(x - t);
                    value_changed = true;
                }

                if (!in_range && t >= t_lo) {
                    in_range = true;
                    a_ref = value_at(t_lo);
                    if (with_v2) local_seq.push_back(a_ref);
                }
                if (!in_range) continue;

                if (t >= cuts[window + 1]) {
                    total += window_sup2;
                    window_sup2 = 0.0;
                    ++window;
                    if (window >= J) break;
                    a_ref = value_at(cuts[window]);
                }
                // sup over t in [I_j, I_{j+1}) of |a_t - a_{I_j}|; a_t changes
                // only at the events above, and for op M is constant between
                // elements, so evaluating at events is exact.
                if (value_changed || t == cuts[window]) {
                    double v = value_at(t);
                    double d = std::abs(v - a_ref);
                    window_sup2 = std::max(window_sup2, d * d);
                    if (with_v2 && value_changed && t > t_lo) local_seq.push_back(v);
                }
            }
            if (in_range && window < J) total += window_sup2;
            rep.osc.ref(x) = std::sqrt(total);
            if (with_v2) {
                auto vr = variation2(local_seq);
                rep.v2.ref(x) = vr.value;
                local_exact_flag = local_exact_flag && vr.exact;
            }
        }
#pragma omp critical
        v2_all_exact = v2_all_exact && local_exact_flag;
    }
    rep.v2_exact = v2_all_exact;

    for (double p : kNormPGrid) rep.norms.emplace_back(p, rep.osc.lp(p));
    return rep;
}

Variation2Result variation2(const std::vector<double>& seq) {
    Variation2Result r;
    size_t n = seq.size();
    if (n < 2) {
        r.value = 0.0;
        r.exact = true;
        return r;
    }
    if (n <= 512) {
        std::vector<double> dp(n, 0.0);
        double best = 0.0;
        for (size_t i = 1; i < n; ++i) {
            for (size_t j = 0; j < i; ++j) {
                double inc = (seq[i] - seq[j]) * (seq[i] - seq[j]);
                dp[i] = std::max(dp[i], dp[j] + inc);
            }
            best = std::max(best, dp[i]);
        }
        r.value = std::sqrt(best);
        r.exact = true;
        return r;
    }
    double acc = 0.0;
    for (size_t i = 1; i < n; ++i) acc += std::abs(seq[i] - seq[i - 1]);
    r.value = acc;  // l1 of consecutive increments dominates V^2
    r.exact = false;
    return r;
}

VectorMaximalReport vector_maximal(const ThinSet& ts, const std::vector<Signal>& fs,
                                   const ScalePlan& plan) {
    if (fs.empty()) fail(Errc::empty_input, "vector_maximal: no signals");
    std::vector<Signal> sups;
    sups.reserve(fs.size());
    for (const auto& f : fs) sups.push_back(maximal(ts, f, plan, AvgOp::M));

    int64_t lo = sups.front().lo(), hi = sups.front().hi();
    for (const auto& s : sups) {
        lo = std::min(lo, s.lo());
        hi = std::max(hi, s.hi());
    }
    Signal lhs_sq = Signal::zeros(lo, hi);
    for (const auto& s : sups)
        for (int64_t x = s.lo(); x <= s.hi(); ++x) lhs_sq.ref(x) += s.at(x) * s.at(x);
    for (auto& v : lhs_sq.values) v = std::sqrt(v);

    int64_t flo = fs.front().lo(), fhi = fs.front().hi();
    for (const auto& f : fs) {
        flo = std::min(flo, f.lo());
        fhi = std::max(fhi, f.hi());
    }
    Signal rhs_sq = Signal::zeros(flo, fhi);
    for (const auto& f : fs)
        for (int64_t x = f.lo(); x <= f.hi(); ++x) rhs_sq.ref(x) += f.at(x) * f.at(x);
    for (auto& v : rhs_sq.values) v = std::sqrt(v);

    VectorMaximalReport rep;
    for (double p : kNormPGrid) {
        double l = lhs_sq.lp(p), r = rhs_sq.lp(p);
        rep.p.push_back(p);
        rep.lhs_norm.push_back(l);
        rep.rhs_norm.push_back(r);
        rep.ratio.push_back(r > 0.0 ? l / r : 0.0);
    }
    return rep;
}

}  // namespace thinsets
