#include "thinsets/reference.hpp"

#include <algorithm>
#include <cmath>

namespace thinsets {

std::vector<int64_t> reference_enumerate(const ThinSetSpec& spec, int64_t N) {
    std::vector<int64_t> out;
    for (int64_t n = 1; n <= N; ++n)
        if (membership(spec, n).in) out.push_back(n);
    return out;
}

Signal reference_autocorr(const Signal& s) {
    if (s.empty()) return {};
    std::vector<std::pair<int64_t, double>> atoms;
    for (int64_t x = s.lo(); x <= s.hi(); ++x)
        if (s.at(x) != 0.0) atoms.emplace_back(x, s.at(x));
    int64_t lag_max = s.hi() - s.lo();
    Signal res = Signal::zeros(-lag_max, lag_max);
    for (size_t i = 0; i < atoms.size(); ++i) {
        for (size_t j = i; j < atoms.size(); ++j) {
            int64_t lag = atoms[j].first - atoms[i].first;
            if (lag >= 0) res.ref(lag) += atoms[i].second * atoms[j].second;
        }
    }
    for (int64_t x = 1; x <= lag_max; ++x) res.ref(-x) = res.at(x);
    return res;
}

Signal reference_maximal_all_scales(const ThinSet& ts, const Signal& f) {
    Signal af = f.abs();
    if (af.empty() || ts.elements.empty()) fail(Errc::empty_input, "reference_maximal: empty input");
    Signal out = Signal::zeros(af.lo() + ts.elements.front(), af.hi() + ts.elements.back());
    for (int64_t t = ts.elements.front(); t <= ts.N; ++t) {
        int64_t bt = ts.count(t);
        for (int64_t x = out.lo(); x <= out.hi(); ++x) {
            double acc = 0.0;
            for (int64_t n : ts.elements) {
                if (n > t) break;
                acc += af.at(x - n);
            }
            out.ref(x) = std::max(out.ref(x), acc / static_cast<double>(bt));
        }
    }
    return out;
}

double reference_variation2(const std::vector<double>& seq) {
    size_t n = seq.size();
    if (n > 20) fail(Errc::config_error, "reference_variation2 is exponential; n <= 20");
    if (n < 2) return 0.0;
    double best = 0.0;
    for (uint64_t mask = 1; mask < (uint64_t(1) << n); ++mask) {
        double sum = 0.0;
        bool have_prev = false;
        double prev = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (!(mask & (uint64_t(1) << i))) continue;
            if (have_prev) sum += (seq[i] - prev) * (seq[i] - prev);
            prev = seq[i];
            have_prev = true;
        }
        best = std::max(best, sum);
    }
    return std::sqrt(best);
}

}  // namespace thinsets
