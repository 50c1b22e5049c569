#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "thinsets/signal.hpp"
#include "thinsets/thinset.hpp"

namespace thinsets {

// M_t f(x) = |B_t|^{-1} sum_{n in B_t} f(x-n)
Signal apply_M(const ThinSet& ts, const Signal& f, int64_t t);
// A_t f(x) = |B_t|^{-1} sum_{1<=s<=t} psi(s) f(x-s)
Signal apply_A(const ThinSet& ts, const Signal& f, int64_t t);
// D_t f(x) = Psi(t)^{-1} sum_{1<=s<=t} psi(s) f(x-s)
Signal apply_D(const ThinSetSpec& spec, const Signal& f, int64_t t);
// H_t f(x) = t^{-1} sum_{1<=s<=t} f(x-s), via prefix sums
Signal apply_H(const Signal& f, int64_t t);

// Summation-by-parts weights: lambda_s = s(psi(s)-psi(s+1))/Psi(k) for s < k,
// k psi(k)/Psi(k) at s = k. Nonnegative, sum to 1.
std::vector<double> lambda_weights(const PsiSpec& psi, int64_t k);

// D_k f reconstructed as sum_s lambda_s^k H_s f; IdentityViolation (with the
// worst x in the message) if it strays from apply_D by > 1e-10 * ||f||_inf.
Signal dk_via_hk(const ThinSetSpec& spec, const Signal& f, int64_t k);

struct Rearrangement {
    std::vector<double> lambdas;      // piece s has length lambda_s, exactly
    std::vector<double> breakpoints;  // Kahan partial sums of lambdas
    // N_k(t) = min{ N : sum_{i<=N} lambda_i > t }, 1-based.
    int64_t N_of(double t) const;
};

Rearrangement rearrangement_Nk(const PsiSpec& psi, int64_t k);

// D_k f as the piecewise-exact integral of H_{N_k(t)} f over t in [0,1).
Signal dk_via_rearrangement(const ThinSetSpec& spec, const Signal& f, int64_t k);

enum class AvgOp { M, A, D, H, smooth_dyadic };

struct ScalePlan {
    enum class Kind { all_t, dyadic, tau_dyadic };
    Kind kind = Kind::all_t;
    double tau = 0.0;
    std::vector<int64_t> scales;  // materialized, strictly increasing
};

// all_t compresses "sup over all t" onto the elements of B, where B_t changes;
// the sup over the full integer range is recovered exactly.
ScalePlan make_plan_all(const ThinSet& ts);
ScalePlan make_plan_dyadic(int64_t horizon);
// floor(2^{n^tau}) deduplicated; when bound to an exponent p0 > 1, requires
// tau < min{(p0-1)/2, 1/2}.
ScalePlan make_plan_tau(double tau, int64_t horizon, double p0 = 0.0);

// Pointwise sup over the plan's scales of the chosen averaging operator
// applied to |f|.
Signal maximal(const ThinSet& ts, const Signal& f, const ScalePlan& plan, AvgOp op);

struct OscillationReport {
    std::vector<int64_t> cuts;
    Signal osc;  // per-x O^2 over the cut windows
    std::vector<std::pair<double, double>> norms;  // (p, ||O^2||_p)
    bool has_v2 = false;
    bool v2_exact = false;  // exact DP vs l1 upper bound
    Signal v2;              // per-x V^2 over [I_0, I_J)
};

// O^2_{I,J}(a_t(x)) with the inner sup taken over the effective scales in each
// window [I_j, I_{j+1}): elements of B for op M, every integer for A/D/H.
OscillationReport oscillation(const ThinSet& ts, const Signal& f,
                              const std::vector<int64_t>& cuts, AvgOp op, bool with_v2 = false);

struct Variation2Result {
    double value = 0.0;
    bool exact = true;  // exact DP for n <= 512, else the l1 upper bound
};

// 2-variation: sup over increasing subsequences of the l2 sum of increments.
Variation2Result variation2(const std::vector<double>& seq);

struct VectorMaximalReport {
    std::vector<double> p;
    std::vector<double> lhs_norm;  // || (sum_j (sup_t M_t |f_j|)^2)^{1/2} ||_p
    std::vector<double> rhs_norm;  // || (sum_j |f_j|^2)^{1/2} ||_p
    std::vector<double> ratio;
};

VectorMaximalReport vector_maximal(const ThinSet& ts, const std::vector<Signal>& fs,
                                   const ScalePlan& plan);

}  // namespace thinsets
