#pragma once

#include <cstdint>
#include <vector>

#include "thinsets/expsum.hpp"
#include "thinsets/operators.hpp"
#include "thinsets/signal.hpp"
#include "thinsets/thinset.hpp"

namespace thinsets {

// Dyadic cube Q_{s,j} = [j 2^s, (j+1) 2^s) cap Z with the mean of f over it.
struct CZCube {
    int64_t s = 0;
    int64_t j = 0;
    double mean = 0.0;

    int64_t lo() const { return j << s; }
    int64_t hi() const { return ((j + 1) << s) - 1; }  // inclusive
    int64_t size() const { return int64_t(1) << s; }
};

struct CZDecomposition {
    Signal f;
    double alpha = 0.0;
    std::vector<CZCube> cubes;  // disjoint, maximal with [|f|]_Q > alpha
    Signal g;                   // f off the cubes, [f]_Q on them

    Signal b() const;                    // f - g
    Signal b_of(const CZCube& q) const;  // (f - [f]_Q) 1_Q
    Signal b_level(int64_t s) const;     // b_s = sum over cubes at scale s
    std::vector<int64_t> levels() const;
};

// Stopping-time selection of maximal dyadic cubes with average of |f| above
// alpha. Supports straddling 0 are handled by running the stopping time inside
// the two half-line sibling cubes; every invariant of the decomposition is
// asserted before returning.
CZDecomposition cz_decompose(const Signal& f, double alpha);

// The n-indexed refinement at thresholds (d_n, D_n): per scale s,
//   b_s^n = b_s 1_{|b_s| > alpha d_n},  h_s^n = b_s - b_s^n,
//   g_s^n = per-cube means of h_s^n,    B_s^n = h_s^n - g_s^n,
// and s(n) = min{s : 2^s >= D_n}.
struct RefinedSplit {
    double d_n = 0.0, D_n = 0.0;
    int64_t s_n = 0;
    std::vector<int64_t> s_levels;
    std::vector<Signal> b_n, h_n, g_n, B_n;  // aligned with s_levels
    Signal part_good;     // g + sum_s g_s^n
    Signal part_bad;      // sum_s b_s^n
    Signal part_B_small;  // sum_{s < s(n)} B_s^n
    Signal part_B_large;  // sum_{s >= s(n)} B_s^n
};

RefinedSplit refine(const CZDecomposition& dec, double d_n, double D_n);

struct AbsThmHarness {
    std::vector<int64_t> n;
    std::vector<double> d, D;           // d_n = ceil(phi1(2^n)), D_n = 2^{n+2}
    std::vector<double> e_sup;          // sup |K_n * ~K_n - F_n|
    std::vector<double> small_stat;     // sup_{|x| <= A} d_n F_n(x)
    std::vector<double> large_stat;     // sup_{|x| > A} D_n F_n(x)
    std::vector<double> lipschitz;      // sup D_n^2 |F_n(x+1) - F_n(x)|, |x|,|x+1| > d_n
    double A = 0.0;                     // small/large split point (kernel c0)
    LineFit e_fit;                      // log e_sup vs log D_n
    double eps1 = 0.0;                  // -slope - 1
    double eps0 = 0.0;                  // max_n log d_n / log D_n
    double lacunarity_d = 0.0;          // min d_{n+1}/d_n
    double lacunarity_D = 0.0;          // min D_{n+1}/D_n
    bool warn_outside_hypotheses = false;
};

// Builds K_n at N = 2^n and the piecewise comparison function F_n (the
// correlation itself up to phi1(2^n), its psi-smoothed analogue beyond) and
// measures every hypothesis of the abstract weak-type bound.
AbsThmHarness verify_absthm_hypotheses(const ThinSet& ts, int n_lo, int n_hi);

struct WeakTypeReport {
    std::vector<double> lambda;
    std::vector<int64_t> level_set_size;  // |{ x : Mf(x) > lambda }|
    double sup_stat = 0.0;   // exact sup over all lambda of lambda |{Mf>lambda}| / ||f||_1
    double grid_sup = 0.0;   // same statistic restricted to the given grid
    double f_l1 = 0.0;
};

// Exact level sets of the maximal function over the plan's scales.
WeakTypeReport weaktype_scan(const ThinSet& ts, const Signal& f,
                             const std::vector<double>& lambda_grid, const ScalePlan& plan);

}  // namespace thinsets
