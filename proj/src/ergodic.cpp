#include "thinsets/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thinsets {

namespace {

// {x0 + n theta} with the product formed in extended precision; keeps the
// phase honest out to n ~ 1e9 without incremental drift.
double orbit_point(double x0, int64_t n, double theta) {
    long double v = static_cast<long double>(x0) +
                    static_cast<long double>(n) * static_cast<long double>(theta);
    long double fr = v - std::floor(v);
    double out = static_cast<double>(fr);
    if (out >= 1.0) out = 0.0;
    return out;
}

}  // namespace

double Observable1D::eval(double x) const {
    switch (kind) {
        case Kind::indicator: return (x >= a && x < b) ? 1.0 : 0.0;
        case Kind::cosine: return std::cos(2.0 * std::numbers::pi * x);
        case Kind::sine: return std::sin(2.0 * std::numbers::pi * x);
        case Kind::constant: return a;
    }
    return 0.0;
}

double Observable1D::integral() const {
    switch (kind) {
        case Kind::indicator: return b - a;
        case Kind::cosine:
        case Kind::sine: return 0.0;
        case Kind::constant: return a;
    }
    return 0.0;
}

double Observable1D::min_value() const {
    switch (kind) {
        case Kind::indicator: return 0.0;
        case Kind::cosine:
        case Kind::sine: return -1.0;
        case Kind::constant: return a;
    }
    return 0.0;
}

double Observable1D::max_value() const {
    switch (kind) {
        case Kind::indicator: return 1.0;
        case Kind::cosine:
        case Kind::sine: return 1.0;
        case Kind::constant: return a;
    }
    return 0.0;
}

Observable1D parse_observable(const std::string& spec) {
    Observable1D o;
    if (spec == "cos") {
        o.kind = Observable1D::Kind::cosine;
        return o;
    }
    if (spec == "sin") {
        o.kind = Observable1D::Kind::sine;
        return o;
    }
    if (spec.rfind("const:", 0) == 0) {
        o.kind = Observable1D::Kind::constant;
        o.a = std::stod(spec.substr(6));
        return o;
    }
    if (spec.rfind("indicator:", 0) == 0) {
        auto rest = spec.substr(10);
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            fail(Errc::config_error, "indicator observable needs 'indicator:a,b'");
        o.kind = Observable1D::Kind::indicator;
        o.a = std::stod(rest.substr(0, comma));
        o.b = std::stod(rest.substr(comma + 1));
        if (!(o.a >= 0.0 && o.a < o.b && o.b <= 1.0))
            fail(Errc::config_error, "indicator needs 0 <= a < b <= 1");
        return o;
    }
    fail(Errc::config_error, "unknown observable '" + spec + "'");
}

double RotationSystem::integral() const {
    double p = 1.0;
    for (const auto& o : f) p *= o.integral();
    return p;
}

double RotationSystem::eval(const std::vector<double>& x) const {
    double p = 1.0;
    for (size_t i = 0; i < f.size(); ++i) p *= f[i].eval(x[i]);
    return p;
}

int continued_fraction_depth(double theta, int max_depth) {
    double r = theta - std::floor(theta);
    int depth = 0;
    while (depth < max_depth) {
        if (r < 1e-12) break;
        double inv = 1.0 / r;
        r = inv - std::floor(inv);
        ++depth;
    }
    return depth;
}

RotationSystem make_rotation(std::vector<double> theta, std::vector<Observable1D> f) {
    if (theta.empty() || theta.size() != f.size())
        fail(Errc::config_error, "rotation: need one angle and one observable factor per dimension");
    for (double t : theta) {
        if (!(t > 0.0 && t < 1.0)) fail(Errc::config_error, "rotation angle must lie in (0,1)");
        if (continued_fraction_depth(t) < 20)
            fail(Errc::config_error, "rotation angle is rational to working precision");
    }
    RotationSystem sys;
    sys.theta = std::move(theta);
    sys.f = std::move(f);
    return sys;
}

double ergodic_average(const ThinSet& ts, const RotationSystem& sys, double x0, int64_t N) {
    if (sys.dim() != 1) fail(Errc::config_error, "ergodic_average is one-dimensional");
    if (N < 1 || N > ts.N) fail(Errc::out_of_horizon, "ergodic_average: N outside horizon");
    int64_t cnt = ts.count(N);
    if (cnt == 0) fail(Errc::empty_set, "ergodic_average: B cap [1,N] empty");
    Kahan acc;
    for (int64_t n : ts.elements) {
        if (n > N) break;
        acc.add(sys.f[0].eval(orbit_point(x0, n, sys.theta[0])));
    }
    return acc.value() / static_cast<double>(cnt);
}

double multiparam_average(const std::vector<const ThinSet*>& sets, const RotationSystem& sys,
                          const std::vector<double>& x0, const std::vector<int64_t>& N) {
    size_t k = sets.size();
    if (k == 0) fail(Errc::empty_input, "multiparam_average: no factors");
    if (k > 3) fail(Errc::dimension_too_large, "multiparam_average: k <= 3");
    if (sys.theta.size() != k || x0.size() != k || N.size() != k)
        fail(Errc::config_error, "multiparam_average: dimension mismatch");
    double prod = 1.0;
    for (size_t i = 0; i < k; ++i) {
        RotationSystem one;
        one.theta = {sys.theta[i]};
        one.f = {sys.f[i]};
        prod *= ergodic_average(*sets[i], one, x0[i], N[i]);
    }
    return prod;
}

double multiparam_average_direct(const std::vector<const ThinSet*>& sets,
                                 const RotationSystem& sys, const std::vector<double>& x0,
                                 const std::vector<int64_t>& N) {
    size_t k = sets.size();
    if (k == 0) fail(Errc::empty_input, "multiparam_average_direct: no factors");
    if (k > 3) fail(Errc::dimension_too_large, "multiparam_average_direct: k <= 3");
    std::vector<std::vector<int64_t>> elems(k);
    double cells = 1.0;
    for (size_t i = 0; i < k; ++i) {
        if (N[i] < 1 || N[i] > sets[i]->N)
            fail(Errc::out_of_horizon, "multiparam_average_direct: N outside horizon");
        for (int64_t n : sets[i]->elements) {
            if (n > N[i]) break;
            elems[i].push_back(n);
        }
        if (elems[i].empty()) fail(Errc::empty_set, "multiparam_average_direct: empty factor");
        cells *= static_cast<double>(elems[i].size());
    }
    if (cells > static_cast<double>(int64_t(1) << 26))
        fail(Errc::dimension_too_large, "multiparam_average_direct: product set too large");

    std::vector<size_t> idx(k, 0);
    std::vector<double> x(k);
    Kahan acc;
    for (;;) {
        for (size_t i = 0; i < k; ++i)
            x[i] = orbit_point(x0[i], elems[i][idx[i]], sys.theta[i]);
        acc.add(sys.eval(x));
        size_t i = 0;
        while (i < k && ++idx[i] == elems[i].size()) {
            idx[i] = 0;
            ++i;
        }
        if (i == k) break;
    }
    return acc.value() / cells;
}

ConvergenceTrace convergence_trace(const ThinSet& ts, const RotationSystem& sys, double x0,
                                   const std::vector<int64_t>& N_grid) {
    if (N_grid.empty() || !std::is_sorted(N_grid.begin(), N_grid.end()))
        fail(Errc::config_error, "convergence_trace: N grid must be sorted and nonempty");
    if (N_grid.back() > ts.N) fail(Errc::out_of_horizon, "convergence_trace: grid beyond horizon");
    ConvergenceTrace tr;
    tr.N_grid = N_grid;
    tr.reference = sys.integral();

    Kahan acc;
    size_t gi = 0;
    int64_t cnt = 0;
    for (int64_t n : ts.elements) {
        while (gi < N_grid.size() && n > N_grid[gi]) {
            tr.averages.push_back(cnt == 0 ? 0.0 : acc.value() / static_cast<double>(cnt));
            ++gi;
        }
        if (gi >= N_grid.size()) break;
        if (n > ts.N) break;
        acc.add(sys.f[0].eval(orbit_point(x0, n, sys.theta[0])));
        ++cnt;
    }
    while (gi < N_grid.size()) {
        tr.averages.push_back(cnt == 0 ? 0.0 : acc.value() / static_cast<double>(cnt));
        ++gi;
    }
    for (double a : tr.averages) tr.deviations.push_back(std::abs(a - tr.reference));
    for (size_t i = 1; i < tr.averages.size(); ++i)
        tr.increments.push_back(std::abs(tr.averages[i] - tr.averages[i - 1]));
    size_t half = tr.increments.size() / 2;
    for (size_t i = 0; i < tr.increments.size(); ++i) {
        if (i >= half)
            tr.max_increment_top = std::max(tr.max_increment_top, tr.increments[i]);
        else
            tr.max_increment_bottom = std::max(tr.max_increment_bottom, tr.increments[i]);
    }
    return tr;
}

double shift_system_average(const ThinSet& ts, const Signal& f, int64_t x, int64_t N) {
    if (N < 1 || N > ts.N) fail(Errc::out_of_horizon, "shift_system_average: N outside horizon");
    int64_t cnt = ts.count(N);
    if (cnt == 0) fail(Errc::empty_set, "shift_system_average: B cap [1,N] empty");
    Kahan acc;
    for (int64_t n : ts.elements) {
        if (n > N) break;
        acc.add(f.at(x - n));
    }
    double inv = 1.0 / static_cast<double>(cnt);
    return acc.value() * inv;
}

}  // namespace thinsets
