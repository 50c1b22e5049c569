#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thinsets/ergodic.hpp"
#include "thinsets/operators.hpp"

using namespace thinsets;

namespace {

const double kSqrt2m1 = std::numbers::sqrt2 - 1.0;

ThinSetSpec pow105_plus() {
    auto h = make_function(Family::pow, 1.05);
    return make_thinset_spec(h, h, 1.0, PsiMode::derivative, Sign::plus);
}

RotationSystem half_indicator() {
    Observable1D ind;
    ind.kind = Observable1D::Kind::indicator;
    ind.a = 0.0;
    ind.b = 0.5;
    return make_rotation({kSqrt2m1}, {ind});
}

}  // namespace

TEST_CASE("angle validation") {
    Observable1D c;
    c.kind = Observable1D::Kind::constant;
    c.a = 1.0;
    CHECK_THROWS_AS(make_rotation({0.5}, {c}), Error);        // rational
    CHECK_THROWS_AS(make_rotation({0.25}, {c}), Error);       // rational
    CHECK_THROWS_AS(make_rotation({1.5}, {c}), Error);        // outside (0,1)
    CHECK_NOTHROW(make_rotation({kSqrt2m1}, {c}));
    CHECK_NOTHROW(make_rotation({(std::sqrt(5.0) - 1.0) / 2.0}, {c}));
    CHECK(continued_fraction_depth(kSqrt2m1) >= 20);
    CHECK(continued_fraction_depth(0.125) < 20);
}

TEST_CASE("observable parsing") {
    auto ind = parse_observable("indicator:0,0.5");
    CHECK(ind.kind == Observable1D::Kind::indicator);
    CHECK(ind.integral() == 0.5);
    CHECK(parse_observable("cos").integral() == 0.0);
    CHECK(parse_observable("const:2.5").eval(0.3) == 2.5);
    CHECK_THROWS_AS(parse_observable("indicator:0.9,0.1"), Error);
    CHECK_THROWS_AS(parse_observable("nope"), Error);
}

TEST_CASE("average of the constant observable is one") {
    auto ts = enumerate_set(pow105_plus(), 4096);
    Observable1D one;
    one.kind = Observable1D::Kind::constant;
    one.a = 1.0;
    auto sys = make_rotation({kSqrt2m1}, {one});
    CHECK(ergodic_average(ts, sys, 0.37, 4096) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("empty prefix raises EmptySet") {
    auto hlog = make_function(Family::pow_log, 1.05);
    auto ts = enumerate_set(make_thinset_spec(hlog, hlog, 1.0, PsiMode::derivative, Sign::plus), 64);
    REQUIRE(ts.elements.front() > 2);
    auto sys = half_indicator();
    CHECK_THROWS_AS(ergodic_average(ts, sys, 0.0, 2), Error);
}

TEST_CASE("equidistribution of the half indicator") {
    auto ts = enumerate_set(pow105_plus(), 100000);
    auto sys = half_indicator();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        double avg = ergodic_average(ts, sys, ux(rng), 100000);
        CHECK(std::abs(avg - 0.5) <= 0.05);
    }
}

TEST_CASE("cosine averages decay toward the zero integral") {
    auto ts = enumerate_set(pow105_plus(), 100000);
    Observable1D cosf;
    cosf.kind = Observable1D::Kind::cosine;
    auto sys = make_rotation({kSqrt2m1}, {cosf});
    CHECK(std::abs(ergodic_average(ts, sys, 0.11, 100000)) <= 0.05);
}

TEST_CASE("averages stay in the observable's range") {
    auto ts = enumerate_set(pow105_plus(), 1 << 14);
    auto sys = half_indicator();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    for (int64_t N : {16, 256, 1 << 14}) {
        double avg = ergodic_average(ts, sys, ux(rng), N);
        CHECK(avg >= 0.0);
        CHECK(avg <= 1.0);
    }
}

TEST_CASE("separable product equals the direct double sum") {
    auto ts = enumerate_set(pow105_plus(), 1 << 10);
    Observable1D fx, fy;
    fx.kind = Observable1D::Kind::indicator;
    fx.a = 0.0;
    fx.b = 0.5;
    fy.kind = Observable1D::Kind::indicator;
    fy.a = 0.0;
    fy.b = 1.0 / 3.0;
    auto sys = make_rotation({kSqrt2m1, (std::sqrt(5.0) - 1.0) / 2.0}, {fx, fy});
    std::vector<const ThinSet*> sets = {&ts, &ts};
    std::vector<double> x0 = {0.123, 0.456};
    std::vector<int64_t> N = {1 << 10, 1 << 10};
    double prod = multiparam_average(sets, sys, x0, N);
    double direct = multiparam_average_direct(sets, sys, x0, N);
    CHECK(prod == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("two-dimensional box average approaches 1/6") {
    auto ts = enumerate_set(pow105_plus(), 10000);
    Observable1D fx, fy;
    fx.kind = Observable1D::Kind::indicator;
    fx.a = 0.0;
    fx.b = 0.5;
    fy.kind = Observable1D::Kind::indicator;
    fy.a = 0.0;
    fy.b = 1.0 / 3.0;
    auto sys = make_rotation({kSqrt2m1, (std::sqrt(5.0) - 1.0) / 2.0}, {fx, fy});
    std::vector<const ThinSet*> sets = {&ts, &ts};
    double avg = multiparam_average(sets, sys, {0.2, 0.8}, {10000, 10000});
    CHECK(std::abs(avg - 1.0 / 6.0) <= 0.05);
}

TEST_CASE("dimension guard") {
    auto ts = enumerate_set(pow105_plus(), 64);
    Observable1D c;
    c.kind = Observable1D::Kind::constant;
    c.a = 1.0;
    RotationSystem sys;
    sys.theta = {kSqrt2m1, kSqrt2m1, kSqrt2m1, kSqrt2m1};
    sys.f = {c, c, c, c};
    std::vector<const ThinSet*> sets(4, &ts);
    CHECK_THROWS_AS(multiparam_average(sets, sys, {0, 0, 0, 0}, {64, 64, 64, 64}), Error);
}

TEST_CASE("convergence trace") {
    auto ts = enumerate_set(pow105_plus(), 1 << 16);
    Observable1D c;
    c.kind = Observable1D::Kind::constant;
    c.a = 3.25;
    auto csys = make_rotation({kSqrt2m1}, {c});
    std::vector<int64_t> grid = {1 << 8, 1 << 10, 1 << 12, 1 << 14, 1 << 16};
    auto tr = convergence_trace(ts, csys, 0.9, grid);
    for (double inc : tr.increments) CHECK(inc == 0.0);
    CHECK(tr.averages.back() == doctest::Approx(3.25).epsilon(1e-13));

    Observable1D cosf;
    cosf.kind = Observable1D::Kind::cosine;
    auto sys = make_rotation({kSqrt2m1}, {cosf});
    auto tc = convergence_trace(ts, sys, 0.9, grid);
    CHECK(tc.reference == 0.0);
    CHECK(tc.deviations.back() <= 0.05);
    // increments shrink toward the tail (soft: reported, not load-bearing)
    WARN(tc.max_increment_top <= tc.max_increment_bottom + 1e-12);
}

TEST_CASE("transference: shift-system average equals apply_M, bitwise") {
    auto ts = enumerate_set(pow105_plus(), 1 << 12);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int64_t> upos(-64, 64);
    std::uniform_real_distribution<double> uval(-2.0, 2.0);
    for (int rep = 0; rep < 10; ++rep) {
        Signal f = Signal::zeros(-64, 64);
        for (int i = 0; i < 12; ++i) f.ref(upos(rng)) = uval(rng);
        int64_t t = 16 + static_cast<int64_t>(rng() % (ts.N - 16));
        if (ts.count(t) == 0) continue;
        auto m = apply_M(ts, f, t);
        for (int rep2 = 0; rep2 < 10; ++rep2) {
            int64_t x = upos(rng) + static_cast<int64_t>(rng() % 512);
            CHECK(shift_system_average(ts, f, x, t) == m.at(x));
        }
    }
}
