#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "thinsets/regvar.hpp"

using namespace thinsets;

namespace {

// Centered finite difference, the independent derivative oracle.
template <typename F>
double fd(F&& f, double x, double rel_step = 1e-4) {
    double h = rel_step * std::abs(x);
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

std::vector<double> geometric_grid(double lo, double hi, int per_decade = 4) {
    std::vector<double> g;
    double step = std::pow(10.0, 1.0 / per_decade);
    for (double x = lo; x <= hi * 1.0000001; x *= step) g.push_back(x);
    return g;
}

}  // namespace

TEST_CASE("pow family closed forms") {
    auto h = make_function(Family::pow, 1.5);
    CHECK(h.h(4.0) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(h.h_prime(4.0) == doctest::Approx(1.5 * 2.0).epsilon(1e-14));
    CHECK(h.h_second(4.0) == doctest::Approx(1.5 * 0.5 / 2.0).epsilon(1e-14));
    CHECK(h.c_is_rational());
    CHECK(h.c_num == 3);
    CHECK(h.c_den == 2);
}

TEST_CASE("pow_log at x = e") {
    auto h = make_function(Family::pow_log, 1.05);
    CHECK(h.h(std::numbers::e) == doctest::Approx(std::pow(std::numbers::e, 1.05)).epsilon(1e-13));
}

TEST_CASE("exponent outside [1,2) rejected") {
    CHECK_THROWS_AS(make_function(Family::pow, 2.3), Error);
    CHECK_THROWS_AS(make_function(Family::pow, 0.9), Error);
    CHECK_THROWS_AS(make_function(Family::pow, 2.0), Error);
    try {
        make_function(Family::pow, 2.3);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::inadmissible_exponent);
    }
}

TEST_CASE("c = 1 admissibility per family") {
    CHECK_THROWS_AS(make_function(Family::pow, 1.0), Error);
    CHECK_THROWS_AS(make_function(Family::pow_div_log, 1.0), Error);
    CHECK_NOTHROW(make_function(Family::pow_log, 1.0));
    CHECK_NOTHROW(make_function(Family::pow_explog, 1.0, 0.5));
}

TEST_CASE("pow_div_log convexity gate") {
    // x^c / log x is convex on [e^2, inf) only for c >= (1+sqrt(2))/2.
    CHECK_THROWS_AS(make_function(Family::pow_div_log, 1.05), Error);
    CHECK_NOTHROW(make_function(Family::pow_div_log, 1.3));
}

TEST_CASE("inversion closed forms") {
    auto inv15 = invert(make_function(Family::pow, 1.5));
    CHECK(inv15.phi(8.0) == doctest::Approx(4.0).epsilon(1e-14));
    auto inv125 = invert(make_function(Family::pow, 1.25));
    CHECK(inv125.phi(32.0) == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("pow_log round trip at h(100)") {
    auto h = make_function(Family::pow_log, 1.05);
    auto inv = invert(h);
    double y = h.h(100.0);
    CHECK(inv.phi(y) == doctest::Approx(100.0).epsilon(1e-10));
}

TEST_CASE("round-trip residual on a geometric grid") {
    std::vector<FunctionSpec> specs = {
        make_function(Family::pow, 1.05),
        make_function(Family::pow, 1.5),
        make_function(Family::pow_log, 1.05),
        make_function(Family::pow_div_log, 1.3),
        make_function(Family::pow_explog, 1.0, 0.5),
    };
    for (const auto& s : specs) {
        auto inv = invert(s);
        for (double y : geometric_grid(std::max(inv.y_min, 1.0), 1e9)) {
            if (y < inv.y_min) continue;
            double x = inv.phi(y);
            CHECK(std::abs(s.h(x) - y) <= 1e-12 * y);
        }
    }
}

TEST_CASE("inverse function theorem identities") {
    for (auto fam : {Family::pow, Family::pow_log}) {
        auto s = fam == Family::pow ? make_function(fam, 1.25) : make_function(fam, 1.05);
        auto inv = invert(s);
        for (double y : geometric_grid(std::max(inv.y_min, 2.0), 1e8)) {
            double x = inv.phi(y);
            CHECK(std::abs(inv.phi_prime(y) * s.h_prime(x) - 1.0) <= 1e-10);
            double expect = -s.h_second(x) / std::pow(s.h_prime(x), 3);
            CHECK(inv.phi_second(y) == doctest::Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("phi and psi derivatives match finite differences") {
    auto s = make_function(Family::pow_log, 1.05);
    auto inv = invert(s);
    auto psi = make_psi(inv, 1.0);
    for (double y : geometric_grid(64.0, 1e8)) {
        double d = fd([&](double t) { return inv.phi(t); }, y);
        CHECK(inv.phi_prime(y) == doctest::Approx(d).epsilon(1e-6));
        if (y > psi.clip_end * 1.01) {
            double dp = fd([&](double t) { return psi.psi(t); }, y);
            CHECK(psi.psi_prime(y) == doctest::Approx(dp).epsilon(1e-6));
        }
    }
}

TEST_CASE("monotonicity: phi increasing, phi' decreasing, psi nonincreasing") {
    auto s = make_function(Family::pow, 1.25);
    auto inv = invert(s);
    auto psi = make_psi(inv, 1.0);
    double prev_phi = 0.0, prev_phip = 1e300;
    double prev_psi = 1e300;
    for (double y : geometric_grid(1.0, 1e9)) {
        double p = inv.phi(y);
        CHECK(p > prev_phi);
        double pp = inv.phi_prime(y);
        CHECK(pp < prev_phip);
        prev_phi = p;
        prev_phip = pp;
        if (y >= psi.clip_end) {
            double q = psi.psi(y);
            CHECK(q <= prev_psi + 1e-18);
            prev_psi = q;
        }
    }
}

TEST_CASE("psi closed form for pow c=1.5, kappa=1") {
    auto inv = invert(make_function(Family::pow, 1.5));
    auto psi = make_psi(inv, 1.0);
    // phi'(y) = (2/3) y^{-1/3}: psi(8) = min(1/2, 1/3) = 1/3, psi(1) clipped.
    CHECK(psi.psi(8.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(psi.psi(1.0) == 0.5);
    CHECK(psi.clipped_at(1.0));
    CHECK(psi.clip_end == doctest::Approx(std::pow(4.0 / 3.0, 3.0)).epsilon(1e-6));
}

TEST_CASE("psi with large kappa tracks kappa*phi' beyond the clip point") {
    auto inv = invert(make_function(Family::pow, 1.05));
    auto psi = make_psi(inv, 100.0);
    for (double x : geometric_grid(psi.clip_end * 2.0, psi.clip_end * 1e4)) {
        double d = fd([&](double t) { return inv.phi(t); }, x);
        CHECK(psi.psi(x) == doctest::Approx(100.0 * d).epsilon(1e-5));
        CHECK(psi.psi(x) <= 0.5);
        CHECK(psi.psi(x) > 0.0);
    }
}

TEST_CASE("psi codomain (0, 1/2]") {
    for (auto mode : {PsiMode::derivative, PsiMode::increment}) {
        auto inv = invert(make_function(Family::pow, 1.5));
        auto psi = make_psi(inv, 1.0, mode);
        for (double x : geometric_grid(1.0, 1e9)) {
            double v = psi.psi(x);
            CHECK(v > 0.0);
            CHECK(v <= 0.5);
        }
    }
}

TEST_CASE("increment psi equals the inverse increment") {
    auto inv = invert(make_function(Family::pow, 1.5));
    auto psi = make_psi(inv, 1.0, PsiMode::increment);
    for (int64_t n : {3, 10, 100, 4096}) {
        double expect = std::min(0.5, inv.phi(double(n) + 1) - inv.phi(double(n)));
        CHECK(psi.psi(double(n)) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("kappa must be positive") {
    auto inv = invert(make_function(Family::pow, 1.5));
    CHECK_THROWS_AS(make_psi(inv, 0.0), Error);
    CHECK_THROWS_AS(make_psi(inv, -1.0), Error);
}
