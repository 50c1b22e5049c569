#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "thinsets/regvar.hpp"

namespace thinsets {

enum class Sign { plus, minus };

// Generating data for B_+ = {n : {phi1(n)} < psi(n)} resp. B_- with {-phi1(n)}.
struct ThinSetSpec {
    InverseSpec phi1;
    InverseSpec phi2;
    PsiSpec psi;
    Sign sign = Sign::plus;
    // Smallest n with phi1(n) defined; smaller n are not members by convention.
    int64_t n_min = 1;

    bool is_minus() const { return sign == Sign::minus; }
    double phi2_at(double y) const { return phi2.phi(y); }
};

ThinSetSpec make_thinset_spec(const FunctionSpec& h1, const FunctionSpec& h2, double kappa,
                              PsiMode mode, Sign sign);

struct MembershipResult {
    bool in = false;
    double boundary_margin = 0.0;
    bool used_high_precision = false;
    bool dual_consistent = true;  // fractional test vs floor-difference identity
    int64_t label = 0;            // block label m (valid when in)
    double frac = 0.0;            // {sign*phi1(n)}
    double psi = 0.0;
};

// Guarded membership test: decides {sign*phi1(n)} < psi(n), re-deciding in
// 50-digit precision when the binary64 margin to a decision boundary is below
// 64 ulp of phi1(n). Throws PrecisionExhausted when even that is ambiguous and
// no exact integer structure applies.
MembershipResult membership(const ThinSetSpec& spec, int64_t n);

struct Block {
    int64_t label;    // m with 0 <= sign*phi1(n) - m < psi(n) on the block
    int64_t n_start;  // inclusive
    int64_t n_end;    // inclusive
};

// Materialized B on [1, N].
struct ThinSet {
    ThinSetSpec spec;
    int64_t N = 0;
    std::vector<uint64_t> bitmap;       // bit n-1 set iff n in B
    std::vector<int64_t> elements;      // sorted
    std::vector<Block> blocks;          // the B_m partition
    std::vector<uint32_t> prefix;       // prefix[t] = |B cap [1,t]|, t in [0,N]
    int64_t dual_disagreements = 0;     // fractional vs floor-identity mismatches
    int64_t high_precision_calls = 0;

    bool contains(int64_t x) const {
        if (x < 1 || x > N) return false;
        return (bitmap[static_cast<size_t>((x - 1) >> 6)] >> ((x - 1) & 63)) & 1u;
    }
    // |B cap [1,t]| in O(1); OutOfHorizon outside [1,N].
    int64_t count(int64_t t) const;
    int64_t size() const { return static_cast<int64_t>(elements.size()); }
    int64_t first_element() const { return elements.empty() ? 0 : elements.front(); }
};

// Streams n = 1..N through the guarded membership test; OpenMP parallel over
// fixed-size chunks so results are identical for every thread count.
ThinSet enumerate_set(const ThinSetSpec& spec, int64_t N);

struct RunStats {
    int64_t max_run = 0;
    std::map<int64_t, int64_t> run_histogram;  // run length -> number of runs
    int64_t min_block_gap = 0;                 // min distance between consecutive blocks
    int64_t num_blocks = 0;
    int64_t count = 0;
};

RunStats run_stats(const ThinSet& ts);

std::string run_stats_json(const RunStats& rs);

}  // namespace thinsets
