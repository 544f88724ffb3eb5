#pragma once

#include <vector>

#include "lislim/types.hpp"

namespace lislim {

// Ordered finite alphabet with symbol probabilities and every derived
// quantity used by the limit laws: p_max and its multiplicity k, the index
// set I* of non-maximal symbols, the adjacent-walk drifts mu_r = p_r - p_{r+1},
// scales sigma_r^2 = p_r + p_{r+1} - (p_r - p_{r+1})^2, and the correlation
// matrix rho of the (m-1)-dimensional limiting Brownian motion.
struct AlphabetDistribution {
    Vec p;                     // size m, entries > 0, sums to 1
    double p_max = 0.0;
    int k = 0;                 // multiplicity of p_max
    std::vector<int> i_star;   // 1-based r in 1..m with p_r < p_max
    Vec mu;                    // size m-1
    Vec sigma;                 // size m-1, all > 0
    Mat rho;                   // (m-1) x (m-1), unit diagonal, PSD

    int m() const { return static_cast<int>(p.size()); }
    bool uniform() const { return k == m(); }
    double sigma_max() const { return sigma.maxCoeff(); }
    bool in_i_star(int r) const;  // r in 1..m
};

// Validates and normalizes a probability vector, then fills in all derived
// fields. Rejects m < 2, non-positive entries, sums off by more than 1e-9,
// and a rho whose smallest eigenvalue is below -1e-10.
AlphabetDistribution build_distribution(const Vec& p);

// The t = 1 covariance of the limiting Brownian motion (equals rho).
Mat covariance_matrix(const AlphabetDistribution& d);

// Uniform distribution on m symbols.
AlphabetDistribution uniform_distribution(int m);

// Contiguous walk indices that the I* constraints t_r = t_{r-1} tie to a
// single time value. Ties chain transitively; a block containing walk 1 is
// pinned to t = 0 when 1 is in I*, and the block containing walk m-1 is
// pinned to t = 1 when m is in I*.
struct ConstraintBlock {
    int lo = 0, hi = 0;  // 1-based walk indices, inclusive
    bool pin_start = false;
    bool pin_end = false;
};

std::vector<ConstraintBlock> constraint_blocks(const AlphabetDistribution& d);

}  // namespace lislim
