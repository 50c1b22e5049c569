#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "thinsets/error.hpp"

namespace thinsets {

// Kahan (compensated) accumulator. Deterministic for a fixed summation order.
struct Kahan {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Finitely supported real function on Z: dense values over [offset, offset+size),
// implicitly 0 elsewhere.
struct Signal {
    int64_t offset = 0;
    std::vector<double> values;

    Signal() = default;
    Signal(int64_t off, std::vector<double> v) : offset(off), values(std::move(v)) {}

    static Signal delta(int64_t x, double mass = 1.0) { return Signal(x, {mass}); }
    static Signal zeros(int64_t lo, int64_t hi_inclusive) {
        return Signal(lo, std::vector<double>(static_cast<size_t>(hi_inclusive - lo + 1), 0.0));
    }

    int64_t lo() const { return offset; }
    int64_t hi() const { return offset + static_cast<int64_t>(values.size()) - 1; }  // inclusive
    int64_t size() const { return static_cast<int64_t>(values.size()); }
    bool empty() const { return values.empty(); }

    double at(int64_t x) const {
        int64_t i = x - offset;
        if (i < 0 || i >= size()) return 0.0;
        return values[static_cast<size_t>(i)];
    }
    double& ref(int64_t x) { return values[static_cast<size_t>(x - offset)]; }

    // Drop zero margins; keeps support comparisons canonical.
    void trim(double eps = 0.0) {
        size_t a = 0, b = values.size();
        while (a < b && std::abs(values[a]) <= eps) ++a;
        while (b > a && std::abs(values[b - 1]) <= eps) --b;
        if (a > 0 || b < values.size()) {
            values = std::vector<double>(values.begin() + static_cast<long>(a),
                                         values.begin() + static_cast<long>(b));
            offset += static_cast<int64_t>(a);
        }
    }

    double l1() const {
        Kahan k;
        for (double v : values) k.add(std::abs(v));
        return k.value();
    }
    double l2() const {
        Kahan k;
        for (double v : values) k.add(v * v);
        return std::sqrt(k.value());
    }
    double lp(double p) const {
        Kahan k;
        for (double v : values) k.add(std::pow(std::abs(v), p));
        return std::pow(k.value(), 1.0 / p);
    }
    double linf() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double sum() const {
        Kahan k;
        for (double v : values) k.add(v);
        return k.value();
    }

    Signal abs() const {
        Signal out = *this;
        for (double& v : out.values) v = std::abs(v);
        return out;
    }
};

// a + c*b over the union of supports.
Signal axpy(const Signal& a, double c, const Signal& b);

// Pointwise max |difference| over the union of supports.
double max_abs_diff(const Signal& a, const Signal& b);

}  // namespace thinsets
