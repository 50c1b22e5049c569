#include "thinsets/signal.hpp"

#include <algorithm>

namespace thinsets {

Signal axpy(const Signal& a, double c, const Signal& b) {
    if (a.empty()) {
        Signal out = b;
        for (double& v : out.values) v *= c;
        return out;
    }
    if (b.empty()) return a;
    int64_t lo = std::min(a.lo(), b.lo());
    int64_t hi = std::max(a.hi(), b.hi());
    Signal out = Signal::zeros(lo, hi);
    for (int64_t x = a.lo(); x <= a.hi(); ++x) out.ref(x) = a.at(x);
    for (int64_t x = b.lo(); x <= b.hi(); ++x) out.ref(x) += c * b.at(x);
    return out;
}

double max_abs_diff(const Signal& a, const Signal& b) {
    int64_t lo = std::min(a.empty() ? b.lo() : a.lo(), b.empty() ? a.lo() : b.lo());
    int64_t hi = std::max(a.empty() ? b.hi() : a.hi(), b.empty() ? a.hi() : b.hi());
    double m = 0.0;
    for (int64_t x = lo; x <= hi; ++x) m = std::max(m, std::abs(a.at(x) - b.at(x)));
    return m;
}

}  // namespace thinsets
