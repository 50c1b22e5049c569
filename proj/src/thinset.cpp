#include "thinsets/thinset.hpp"

#include <omp.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "thinsets/highprec.hpp"

namespace thinsets {

ThinSetSpec make_thinset_spec(const FunctionSpec& h1, const FunctionSpec& h2, double kappa,
                              PsiMode mode, Sign sign) {
    ThinSetSpec s;
    s.phi1 = invert(h1);
    s.phi2 = invert(h2);
    s.psi = make_psi(s.phi2, kappa, mode);
    s.sign = sign;
    s.n_min = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(s.phi1.y_min * (1.0 - 1e-13))));
    return s;
}

MembershipResult membership(const ThinSetSpec& spec, int64_t n) {
    if (n < 1) fail(Errc::config_error, "membership requires n >= 1");
    MembershipResult r;
    if (n < spec.n_min) {
        r.in = false;
        r.boundary_margin = 1.0;
        return r;
    }
    double ph = spec.phi1.phi(static_cast<double>(n));
    double ps = spec.psi.psi(static_cast<double>(n));
    double u = spec.is_minus() ? -ph : ph;
    double fl = std::floor(u);
    double fr = u - fl;  // exact: u and floor(u) share high bits
    double m1 = std::min(fr, 1.0 - fr);
    double m2 = std::abs(fr - ps);
    double margin = std::min(m1, m2);
    double guard = 64.0 * std::abs(ph) * DBL_EPSILON + 64.0 * DBL_MIN;

    if (margin >= guard) {
        r.in = fr < ps;
        r.boundary_margin = m2;
        r.frac = fr;
        r.psi = ps;
        int id = static_cast<int>(fl - std::floor(u - ps));
        r.dual_consistent = (r.in == (id == 1));
        r.label = spec.is_minus() ? -static_cast<int64_t>(fl) : static_cast<int64_t>(fl);
        return r;
    }

    auto d = hp::membership(spec.phi1, spec.psi, spec.is_minus(), n);
    if (d.exhausted)
        fail(Errc::precision_exhausted, "membership undecidable at n=" + std::to_string(n));
    r.in = d.in;
    r.boundary_margin = d.exact ? 0.0 : std::abs(d.frac - d.psi);
    r.used_high_precision = true;
    r.frac = d.frac;
    r.psi = d.psi;
    r.label = d.label;
    r.dual_consistent = (d.in == (d.floor_identity == 1));
    return r;
}

namespace {

struct ChunkOut {
    std::vector<int64_t> elements;
    std::vector<int64_t> labels;
    int64_t dual_bad = 0;
    int64_t hp_calls = 0;
    int64_t exhausted_at = 0;  // 0 = ok
};

}  // namespace

ThinSet enumerate_set(const ThinSetSpec& spec, int64_t N) {
    if (N < 1) fail(Errc::config_error, "horizon N must be >= 1");
    if (N >= (int64_t(1) << 32)) fail(Errc::config_error, "horizon too large");

    constexpr int64_t kChunk = int64_t(1) << 14;
    const int64_t nchunks = (N + kChunk - 1) / kChunk;
    std::vector<ChunkOut> outs(static_cast<size_t>(nchunks));

#pragma omp parallel for schedule(dynamic, 1)
    for (int64_t ci = 0; ci < nchunks; ++ci) {
        ChunkOut& out = outs[static_cast<size_t>(ci)];
        int64_t lo = ci * kChunk + 1;
        int64_t hi = std::min(N, lo + kChunk - 1);
        try {
            for (int64_t n = lo; n <= hi; ++n) {
                MembershipResult m = membership(spec, n);
                if (m.used_high_precision) ++out.hp_calls;
                if (!m.dual_consistent) ++out.dual_bad;
                if (m.in) {
                    out.elements.push_back(n);
                    out.labels.push_back(m.label);
                }
            }
        } catch (const Error& e) {
            if (e.code() == Errc::precision_exhausted && out.exhausted_at == 0) out.exhausted_at = lo;
        }
    }

    ThinSet ts;
    ts.spec = spec;
    ts.N = N;
    for (const auto& out : outs) {
        if (out.exhausted_at != 0)
            fail(Errc::precision_exhausted,
                 "enumeration hit an undecidable boundary near n=" + std::to_string(out.exhausted_at));
    }

    size_t total = 0;
    for (const auto& out : outs) total += out.elements.size();
    ts.elements.reserve(total);
    std::vector<int64_t> labels;
    labels.reserve(total);
    for (const auto& out : outs) {
        ts.elements.insert(ts.elements.end(), out.elements.begin(), out.elements.end());
        labels.insert(labels.end(), out.labels.begin(), out.labels.end());
        ts.dual_disagreements += out.dual_bad;
        ts.high_precision_calls += out.hp_calls;
    }

    ts.bitmap.assign(static_cast<size_t>((N + 63) / 64), 0);
    for (int64_t n : ts.elements)
        ts.bitmap[static_cast<size_t>((n - 1) >> 6)] |= uint64_t(1) << ((n - 1) & 63);

    ts.prefix.assign(static_cast<size_t>(N + 1), 0);
    {
        size_t j = 0;
        uint32_t c = 0;
        for (int64_t t = 1; t <= N; ++t) {
            if (j < ts.elements.size() && ts.elements[j] == t) {
                ++c;
                ++j;
            }
            ts.prefix[static_cast<size_t>(t)] = c;
        }
    }

    // Group by label into the B_m partition; each group is an integer interval
    // since phi1 and phi1 - psi are both increasing.
    for (size_t i = 0; i < ts.elements.size();) {
        size_t j = i;
        while (j + 1 < ts.elements.size() && labels[j + 1] == labels[i]) ++j;
        Block b{labels[i], ts.elements[i], ts.elements[j]};
        if (b.n_end - b.n_start != static_cast<int64_t>(j - i))
            fail(Errc::identity_violation,
                 "block with label " + std::to_string(b.label) + " is not an integer interval");
        if (!ts.blocks.empty() && ts.blocks.back().label >= b.label)
            fail(Errc::identity_violation, "block labels not strictly increasing");
        ts.blocks.push_back(b);
        i = j + 1;
    }
    return ts;
}

int64_t ThinSet::count(int64_t t) const {
    if (t < 1 || t > N) fail(Errc::out_of_horizon, "count(t) with t outside [1,N]");
    return prefix[static_cast<size_t>(t)];
}

RunStats run_stats(const ThinSet& ts) {
    if (ts.elements.empty()) fail(Errc::empty_set, "run_stats on empty set");
    RunStats rs;
    rs.count = ts.size();
    rs.num_blocks = static_cast<int64_t>(ts.blocks.size());
    // Maximal runs of consecutive integers (a run may span several blocks).
    size_t i = 0;
    while (i < ts.elements.size()) {
        size_t j = i;
        while (j + 1 < ts.elements.size() && ts.elements[j + 1] == ts.elements[j] + 1) ++j;
        int64_t len = static_cast<int64_t>(j - i + 1);
        rs.max_run = std::max(rs.max_run, len);
        rs.run_histogram[len]++;
        i = j + 1;
    }
    rs.min_block_gap = 0;
    for (size_t b = 1; b < ts.blocks.size(); ++b) {
        int64_t gap = ts.blocks[b].n_start - ts.blocks[b - 1].n_end;
        if (rs.min_block_gap == 0 || gap < rs.min_block_gap) rs.min_block_gap = gap;
    }
    return rs;
}

std::string run_stats_json(const RunStats& rs) {
    std::ostringstream os;
    os << "{\"max_run\":" << rs.max_run << ",\"count\":" << rs.count
       << ",\"num_blocks\":" << rs.num_blocks << ",\"min_block_gap\":" << rs.min_block_gap
       << ",\"run_histogram\":{";
    bool first = true;
    for (const auto& [len, cnt] : rs.run_histogram) {
        if (!first) os << ",";
        first = false;
        os << "\"" << len << "\":" << cnt;
    }
    os << "}}";
    return os.str();
}

}  // namespace thinsets
