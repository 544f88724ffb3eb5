#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lislim/alphabet.hpp"
#include "lislim/rng.hpp"
#include "lislim/types.hpp"

namespace lislim::brownian {

// Discretized (m-1)-dimensional driftless Brownian motion with increment
// covariance rho/T on the uniform grid t_i = i/T.
struct BrownianGrid {
    int T = 0;
    Mat paths;       // (m-1) x (T+1), paths(r, 0) = 0
    Mat cov_factor;  // M with M M^T = rho (pivoted LDL^T factor)
};

// Prepares an empty grid with the factorization of rho; zero-pivot tolerance
// 1e-12 so a rank-deficient rho still samples. Throws on a non-PSD factor.
BrownianGrid make_grid(const AlphabetDistribution& d, int T);

// Fills grid.paths with a fresh sample, reusing the factor and storage.
void resample_grid(BrownianGrid& grid, RandomStream& rng);

BrownianGrid sample_grid(const AlphabetDistribution& d, int T, RandomStream& rng);
BrownianGrid sample_grid(const AlphabetDistribution& d, int T, std::uint64_t seed);

// H_m = sqrt(2) { -(1/m) sum_r r B(r, 1) + max over 0 <= t_1 <= ... <= 1 of
// sum_r B(r, t_r) } on the grid; requires a uniform distribution.
double functional_H(const BrownianGrid& grid, const AlphabetDistribution& d);

// J_k = ( -(1/m) sum_r r sigma_r B(r, 1) + constrained max of
// sum_r sigma_r B(r, t_r) ) / sqrt(p_max), with t_r = t_{r-1} for r in I*.
double functional_J(const BrownianGrid& grid, const AlphabetDistribution& d);

// Discrete-time functional: same numerator as functional_J but the max is
// restricted to grid points j/n; requires T to be a multiple of n.
double functional_H_tilde_nk(const BrownianGrid& grid, const AlphabetDistribution& d, int n);

// J_k = H_k + sqrt((1 - k p_max)/k) Z with independent standard normal Z;
// sample_hk supplies H_k draws (unused when k = 1, where J_1 = sqrt(1-p_max) Z).
double sample_J_by_sum(const AlphabetDistribution& d,
                       const std::function<double(RandomStream&)>& sample_hk,
                       RandomStream& rng);

// One value per line, '#'-prefixed header lines carrying the parameters.
void write_sample_dump(std::ostream& os, const std::vector<double>& samples,
                       const std::vector<std::pair<std::string, std::string>>& header);

}  // namespace lislim::brownian
