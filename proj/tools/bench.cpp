// Times the OpenMP kernels against their serial reference implementations and
// checks that the outputs match.
//
//   ./thinsets_bench [threads]

#include <omp.h>

#include <cstdio>
#include <random>

#include "thinsets/kernels.hpp"
#include "thinsets/operators.hpp"
#include "thinsets/reference.hpp"

using namespace thinsets;

namespace {

ThinSetSpec cfg_pow(double c) {
    auto h = make_function(Family::pow, c);
    return make_thinset_spec(h, h, 1.0, PsiMode::derivative, Sign::plus);
}

struct Row {
    const char* name;
    double serial_ms;
    double parallel_ms;
    double max_diff;
};

void print(const Row& r) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%-6.2f max|diff| %.3g\n", r.name, r.serial_ms,
                r.parallel_ms, r.serial_ms / r.parallel_ms, r.max_diff);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) omp_set_num_threads(std::atoi(argv[1]));
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "openmp");

    {
        auto spec = cfg_pow(1.05);
        const int64_t N = 1 << 21;
        double t0 = omp_get_wtime();
        auto serial = reference_enumerate(spec, N);
        double t1 = omp_get_wtime();
        auto par = enumerate_set(spec, N);
        double t2 = omp_get_wtime();
        double diff = serial == par.elements ? 0.0 : 1.0;
        print({"enumerate (N=2^21)", (t1 - t0) * 1e3, (t2 - t1) * 1e3, diff});
    }

    {
        auto ts = enumerate_set(cfg_pow(1.02), 1 << 14);
        auto k = kernel_flat(ts, 1 << 14);
        double t0 = omp_get_wtime();
        auto direct = reference_autocorr(k.signal);
        double t1 = omp_get_wtime();
        auto fft = autocorr_fft(k.signal);
        double t2 = omp_get_wtime();
        print({"autocorr (direct vs fft)", (t1 - t0) * 1e3, (t2 - t1) * 1e3,
               max_abs_diff(direct, fft)});
    }

    {
        auto ts = enumerate_set(cfg_pow(1.25), 1 << 12);
        std::mt19937_64 rng(1);
        Signal f = Signal::zeros(0, 1 << 11);
        std::uniform_int_distribution<int64_t> upos(0, 1 << 11);
        for (int i = 0; i < 24; ++i) f.ref(upos(rng)) = 1.0;
        double t0 = omp_get_wtime();
        auto brute = reference_maximal_all_scales(ts, f);
        double t1 = omp_get_wtime();
        auto fast = maximal(ts, f, make_plan_all(ts), AvgOp::M);
        double t2 = omp_get_wtime();
        print({"maximal (brute vs fast)", (t1 - t0) * 1e3, (t2 - t1) * 1e3,
               max_abs_diff(brute, fast)});
    }

    {
        auto ts = enumerate_set(cfg_pow(1.02), 1 << 18);
        std::mt19937_64 rng(2);
        Signal f = Signal::zeros(0, (1 << 18) - 1);
        std::uniform_int_distribution<int64_t> upos(0, (1 << 18) - 1);
        for (int i = 0; i < 100; ++i) f.ref(upos(rng)) += (rng() & 1) ? 1.0 : -1.0;
        auto plan = make_plan_all(ts);
        int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        double t0 = omp_get_wtime();
        auto one = maximal(ts, f, plan, AvgOp::M);
        double t1 = omp_get_wtime();
        omp_set_num_threads(saved);
        double t2 = omp_get_wtime();
        auto many = maximal(ts, f, plan, AvgOp::M);
        double t3 = omp_get_wtime();
        print({"weak-type maximal field", (t1 - t0) * 1e3, (t3 - t2) * 1e3,
               max_abs_diff(one, many)});
    }
    return 0;
}
