#pragma once

#include <utility>
#include <vector>

#include "lislim/types.hpp"

namespace lislim::quad {

// Tensor Gauss-Legendre setup. nodes_per_dim = 0 picks a per-k default.
struct QuadratureSpec {
    double R = 8.0;         // truncation radius for full-space integrals
    int nodes_per_dim = 0;  // >= 16 when explicit
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<long double>& nodes, std::vector<long double>& weights);

// c_k^0 = 1 / ((2 pi)^{(k-1)/2} prod_{i=0}^{k-1} i!), log-domain inside.
double c0_constant(int k);
double log_c0(int k);

// Numeric integral of e^{-sum x^2/2} Delta(x)^2 over the ordered sector of
// the zero-sum hyperplane (isometric measure); reproduces 1/c_k^0.
double hyperplane_weight_integral(int k, const QuadratureSpec& spec = {});

// P(H_k <= s): the weight integrated over {max x_j <= s} on the hyperplane,
// which is a compact simplex; mapped to a box by stick-breaking so the
// integrand stays analytic. Supports 2 <= k <= 4; 0 for s <= 0.
double h_cdf(int k, double s, const QuadratureSpec& spec = {});
std::pair<double, double> h_cdf_with_error(int k, double s, const QuadratureSpec& spec = {});

// Normalization integral of e^{-(sum x^2 + beta (sum x)^2)/2} Delta^2 over
// [-R, R]^k (the reciprocal of c_{k, p_max} up to truncation).
double j_weight_normalization(int k, double beta, const QuadratureSpec& spec = {});

// P(J_k <= s). k = 1 is the closed form Phi(s / sqrt(1 - p_max)); for
// 2 <= k <= 4 the k-dimensional integral with beta = p_max/(1 - k p_max),
// requiring k p_max < 1 (k = m is served by h_cdf since J_m = H_m).
double j_cdf(int k, double p_max, double s, const QuadratureSpec& spec = {});

// Monotone cubic interpolant of a CDF table (clamped outside the grid).
struct CdfTable {
    std::vector<double> x, y, slope;
    double operator()(double xq) const;
};

CdfTable make_monotone_table(std::vector<double> xs, std::vector<double> ys);

// Tabulated laws for fast repeated CDF evaluation (rate sweeps).
struct HkLaw {
    int k = 0;
    double c0 = 0.0;
    CdfTable cdf;
    double operator()(double s) const { return s <= 0.0 ? 0.0 : cdf(s); }
};

HkLaw make_hk_law(int k, const QuadratureSpec& spec = {}, int table_points = 361);
CdfTable make_jk_table(int k, double p_max, const QuadratureSpec& spec = {},
                       int table_points = 641);

}  // namespace lislim::quad
