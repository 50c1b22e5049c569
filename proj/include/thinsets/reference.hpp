#pragma once

#include <cstdint>
#include <vector>

#include "thinsets/signal.hpp"
#include "thinsets/thinset.hpp"

namespace thinsets {

// Serial reference implementations kept alongside the OpenMP kernels; tests
// compare the two and the bench target times them against each other.

// Plain n = 1..N membership loop, no chunking.
std::vector<int64_t> reference_enumerate(const ThinSetSpec& spec, int64_t N);

// Direct O(S^2) correlation over nonzero atoms; x >= 0 accumulated in pair
// order, mirrored exactly onto negative lags.
Signal reference_autocorr(const Signal& s);

// sup over every integer t in [1, horizon] with B_t nonempty of the flat
// average of |f|, each scale evaluated by direct convolution.
Signal reference_maximal_all_scales(const ThinSet& ts, const Signal& f);

// 2-variation by exhaustive search over all increasing subsequences (n <= 20).
double reference_variation2(const std::vector<double>& seq);

}  // namespace thinsets
