#pragma once

#include <cstdint>
#include <vector>

#include "lislim/alphabet.hpp"
#include "lislim/rng.hpp"

namespace lislim {

// A finite word over the ordered alphabet; symbols are 1-based indices.
struct Word {
    std::vector<std::int32_t> symbols;
    int n() const { return static_cast<int>(symbols.size()); }
};

// Exact random-walk decomposition of the centered LIS statistic
// L_n = (LI_n - n p_max) / sqrt(n): drift term, constrained breakpoint
// maximum, and the remainder E_n defined as the residual, so that
// L_n = drift_term + max_term + E_n holds identically.
struct WalkDecomposition {
    double L_n = 0.0;
    double drift_term = 0.0;
    double max_term = 0.0;
    double E_n = 0.0;
};

// iid word of length n with symbol law d.p; deterministic given the stream.
Word sample_word(const AlphabetDistribution& d, int n, RandomStream& rng);
Word sample_word(const AlphabetDistribution& d, int n, std::uint64_t seed);

// Debug dump: one symbol index per token, space-separated.
std::string to_debug_string(const Word& w);

// Length of the longest weakly increasing subsequence, per-symbol
// prefix-max DP, O(n m).
int lis_dp(const Word& w, int m);

// Same quantity through the breakpoint representation: max over
// 0 = j_0 <= j_1 <= ... <= j_m = n of sum_r #{i in (j_{r-1}, j_r] : X_i = alpha_r}.
int lis_breakpoints(const Word& w, int m);

// Fast path used by the rate sweeps: LIS computed directly from a random
// stream without materializing the word.
int sample_lis(const AlphabetDistribution& d, int n, RandomStream& rng);

WalkDecomposition walk_decomposition(const Word& w, const AlphabetDistribution& d);

}  // namespace lislim
