#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thinsets/expsum.hpp"

using namespace thinsets;

namespace {

ThinSetSpec nh_spec() {
    auto h = make_function(Family::pow, 1.5);
    return make_thinset_spec(h, h, 1.0, PsiMode::increment, Sign::minus);
}

ThinSetSpec pow105_plus() {
    auto h = make_function(Family::pow, 1.05);
    return make_thinset_spec(h, h, 1.0, PsiMode::derivative, Sign::plus);
}

}  // namespace

TEST_CASE("xi = 0 with unit weight counts the set") {
    auto ts = enumerate_set(pow105_plus(), 4096);
    for (int64_t N : {1, 100, 4096}) {
        cplx s = exp_sum_over_B(ts, N, 0.0);
        CHECK(s.real() == static_cast<double>(ts.count(N)));
        CHECK(s.imag() == 0.0);
    }
}

TEST_CASE("parity sum over {1,2,5}") {
    auto ts = enumerate_set(nh_spec(), 5);
    REQUIRE(ts.elements == std::vector<int64_t>{1, 2, 5});
    cplx s = exp_sum_over_B(ts, 5, 0.5);
    CHECK(s.real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(s.imag()) < 1e-12);
}

TEST_CASE("reference sum: full period and xi = 0") {
    auto spec = pow105_plus();
    cplx s4 = exp_sum_reference(spec, 4, 0.25, RefWeight::unit);
    CHECK(std::abs(s4) < 1e-12);
    cplx s7 = exp_sum_reference(spec, 7, 0.0, RefWeight::unit);
    CHECK(s7.real() == 7.0);
}

TEST_CASE("geometric closed form matches direct summation") {
    auto spec = pow105_plus();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uxi(0.001, 0.999);
    for (int rep = 0; rep < 20; ++rep) {
        double xi = uxi(rng);
        int64_t N = 1 + static_cast<int64_t>(rng() % 4096);
        cplx direct{0.0, 0.0};
        Kahan re, im;
        for (int64_t n = 1; n <= N; ++n) {
            double ang = 2.0 * std::numbers::pi * std::fmod(static_cast<double>(n) * xi, 1.0);
            re.add(std::cos(ang));
            im.add(std::sin(ang));
        }
        direct = {re.value(), im.value()};
        cplx geom = exp_sum_reference(spec, N, xi, RefWeight::unit);
        CHECK(std::abs(geom - direct) <= 1e-10 * static_cast<double>(N) + 1e-10);
    }
}

TEST_CASE("additivity over disjoint ranges") {
    auto ts = enumerate_set(pow105_plus(), 1 << 14);
    double xi = std::numbers::sqrt2 - 1.0;
    cplx whole = exp_sum_over_B(ts, ts.N, xi);
    cplx head = exp_sum_over_B(ts, 5000, xi);
    Kahan re, im;
    for (int64_t n : ts.elements) {
        if (n <= 5000) continue;
        double ang = 2.0 * std::numbers::pi *
                     static_cast<double>(std::fmod(static_cast<long double>(n) * xi, 1.0L));
        re.add(std::cos(ang));
        im.add(std::sin(ang));
    }
    cplx tail{re.value(), im.value()};
    CHECK(std::abs(whole - (head + tail)) <= 1e-11 * static_cast<double>(ts.size()));
}

TEST_CASE("inverse-psi weight at xi = 0 approximates N") {
    auto ts = enumerate_set(pow105_plus(), 1 << 16);
    // Small-N oracle: direct weighted summation.
    Kahan direct;
    for (int64_t n : ts.elements) {
        if (n > 512) break;
        direct.add(1.0 / ts.spec.psi.psi(static_cast<double>(n)));
    }
    cplx s512 = exp_sum_over_B(ts, 512, 0.0, BWeight::inv_psi);
    CHECK(s512.real() == doctest::Approx(direct.value()).epsilon(1e-13));

    cplx s = exp_sum_over_B(ts, ts.N, 0.0, BWeight::inv_psi);
    CHECK(std::abs(s.real() - static_cast<double>(ts.N)) / static_cast<double>(ts.N) <= 0.1);
}

TEST_CASE("psi-weighted reference tracks the count") {
    auto ts = enumerate_set(pow105_plus(), 1 << 16);
    double Psi = psi_prefix_sum(ts.spec, ts.N);
    CHECK(exp_sum_reference(ts.spec, ts.N, 0.0, RefWeight::psi).real() ==
          doctest::Approx(Psi).epsilon(1e-13));
    CHECK(static_cast<double>(ts.size()) / Psi == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("trest scan: xi = 0 column is the counting discrepancy, exactly") {
    auto ts = enumerate_set(pow105_plus(), 1 << 13);
    std::vector<int64_t> Ns = {1 << 8, 1 << 9, 1 << 10, 1 << 11, 1 << 12, 1 << 13};
    auto rep = trest_scan(ts, Ns, {0.0});
    for (size_t i = 0; i < Ns.size(); ++i) {
        double count = static_cast<double>(ts.count(Ns[i]));
        double Psi = psi_prefix_sum(ts.spec, Ns[i]);
        CHECK(rep.lhs[i][0].real() == count);
        CHECK(rep.abs_err[i][0] == std::abs(count - Psi));
        CHECK(rep.sup_err_norm[i] ==
              std::abs(count - Psi) / ts.spec.phi2_at(static_cast<double>(Ns[i])));
    }
}

TEST_CASE("trest scan over the default grid") {
    auto ts = enumerate_set(pow105_plus(), 1 << 15);
    std::vector<int64_t> Ns;
    for (int k = 10; k <= 15; ++k) Ns.push_back(int64_t(1) << k);
    auto rep = trest_scan(ts, Ns, default_xi_grid(16));
    CHECK(rep.slope.valid);
    CHECK(rep.slope.slope < 0.0);
    CHECK(rep.max_over_median >= 1.0);
    // Normalized sup error nonincreasing up to factor-2 slack.
    for (size_t i = 1; i < rep.sup_err_norm.size(); ++i)
        CHECK(rep.sup_err_norm[i] <= 2.0 * rep.sup_err_norm[i - 1]);
}

TEST_CASE("sawtooth split holds the identity") {
    auto ts = enumerate_set(nh_spec(), 512);
    auto sw = sawtooth_split(ts, 3, 300, 40);
    for (size_t i = 0; i < sw.n.size(); ++i) {
        CHECK(std::abs(sw.residual[i]) <= 1e-9);
        CHECK(std::abs(sw.pi_tail[i]) <= 2.0);
    }
}

TEST_CASE("truncated series matches the complex pair oracle") {
    auto ts = enumerate_set(nh_spec(), 256);
    const int64_t M = 25;
    auto sw = sawtooth_split(ts, 5, 64, M);
    for (size_t i = 0; i < sw.n.size(); i += 7) {
        int64_t n = sw.n[i];
        auto m = membership(ts.spec, n);
        double u = m.frac;           // {sign*phi1(n)} determines every term
        double ps = m.psi;
        cplx acc{0.0, 0.0};
        for (int64_t k = 1; k <= M; ++k) {
            for (int sgn : {+1, -1}) {
                double kk = static_cast<double>(sgn * k);
                cplx num = std::exp(cplx(0.0, -2.0 * std::numbers::pi * kk * (u - ps))) -
                           std::exp(cplx(0.0, -2.0 * std::numbers::pi * kk * u));
                acc += num / cplx(0.0, 2.0 * std::numbers::pi * kk);
            }
        }
        CHECK(std::abs(acc.imag()) < 1e-12);
        CHECK(sw.delta[i] == doctest::Approx(acc.real()).epsilon(1e-10));
    }
}

TEST_CASE("chi admissibility predicate") {
    CHECK(chi_max(1.0, 1.0) == doctest::Approx(1.0 / 6.0));
    CHECK(chi_admissible(1.0, 1.0, 0.16));
    CHECK_FALSE(chi_admissible(1.0, 1.0, 0.17));
    // gamma = 1/c for c = 1.05 on both: chi_max = (1 - 4*(1-1/1.05))/6.
    double g = 1.0 / 1.05;
    CHECK(chi_admissible(g, g, chi_max(g, g) - 1e-9));
    CHECK_FALSE(chi_admissible(g, g, chi_max(g, g) + 1e-9));
}

TEST_CASE("scan input validation") {
    auto ts = enumerate_set(pow105_plus(), 256);
    CHECK_THROWS_AS(trest_scan(ts, {}, {0.0}), Error);
    CHECK_THROWS_AS(trest_scan(ts, {512}, {0.0}), Error);
    CHECK_THROWS_AS(exp_sum_over_B(ts, 512, 0.0), Error);
}
