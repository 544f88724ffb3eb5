#include "lislim/brownian.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "lislim/ordered_max.hpp"

namespace lislim::brownian {

BrownianGrid make_grid(const AlphabetDistribution& d, int T) {
    if (T < 2) throw std::invalid_argument("make_grid: need T >= 2");
    const Index dim = d.m() - 1;

    Eigen::LDLT<Mat> ldlt(d.rho);
    Vec diag = ldlt.vectorD();
    const double tol = 1e-12 * std::max(1.0, diag.cwiseAbs().maxCoeff());
    for (Index i = 0; i < dim; ++i) {
        if (diag[i] < -tol)
            throw std::runtime_error("make_grid: covariance factorization failed (not PSD)");
        diag[i] = diag[i] > 0.0 ? std::sqrt(diag[i]) : 0.0;
    }
    Mat factor = ldlt.matrixL();
    factor = ldlt.transpositionsP().transpose() * Mat(factor * diag.asDiagonal());

    BrownianGrid grid;
    grid.T = T;
    grid.cov_factor = factor;
    grid.paths = Mat::Zero(dim, T + 1);
    return grid;
}

void resample_grid(BrownianGrid& grid, RandomStream& rng) {
    const Index dim = grid.paths.rows();
    const double step = 1.0 / std::sqrt(static_cast<double>(grid.T));
    Vec z(dim);
    for (int t = 1; t <= grid.T; ++t) {
        for (Index r = 0; r < dim; ++r) z[r] = rng.gaussian();
        grid.paths.col(t).noalias() = grid.paths.col(t - 1) + grid.cov_factor * (z * step);
    }
}

BrownianGrid sample_grid(const AlphabetDistribution& d, int T, RandomStream& rng) {
    BrownianGrid grid = make_grid(d, T);
    resample_grid(grid, rng);
    return grid;
}

BrownianGrid sample_grid(const AlphabetDistribution& d, int T, std::uint64_t seed) {
    RandomStream rng(seed);
    return sample_grid(d, T, rng);
}

double functional_H(const BrownianGrid& grid, const AlphabetDistribution& d) {
    if (!d.uniform()) throw std::invalid_argument("functional_H: distribution must be uniform");
    const int m = d.m();
    const int T = grid.T;
    double drift = 0.0;
    for (int r = 1; r <= m - 1; ++r) drift += r * grid.paths(r - 1, T);
    const auto blocks = constraint_blocks(d);  // all free for uniform
    const double mx =
        constrained_ordered_max(T, blocks, [&](int r, int i) { return grid.paths(r - 1, i); });
    return std::sqrt(2.0) * (-drift / m + mx);
}

double functional_J(const BrownianGrid& grid, const AlphabetDistribution& d) {
    const int m = d.m();
    const int T = grid.T;
    double drift = 0.0;
    for (int r = 1; r <= m - 1; ++r) drift += r * d.sigma[r - 1] * grid.paths(r - 1, T);
    const auto blocks = constraint_blocks(d);
    const double mx = constrained_ordered_max(
        T, blocks, [&](int r, int i) { return d.sigma[r - 1] * grid.paths(r - 1, i); });
    return (-drift / m + mx) / std::sqrt(d.p_max);
}

double functional_H_tilde_nk(const BrownianGrid& grid, const AlphabetDistribution& d, int n) {
    if (n < 1 || grid.T % n != 0)
        throw std::invalid_argument("functional_H_tilde_nk: T must be a multiple of n");
    const int m = d.m();
    const int stride = grid.T / n;
    double drift = 0.0;
    for (int r = 1; r <= m - 1; ++r) drift += r * d.sigma[r - 1] * grid.paths(r - 1, grid.T);
    const auto blocks = constraint_blocks(d);
    const double mx = constrained_ordered_max(
        n, blocks, [&](int r, int j) { return d.sigma[r - 1] * grid.paths(r - 1, j * stride); });
    return -drift / m + mx;
}

double sample_J_by_sum(const AlphabetDistribution& d,
                       const std::function<double(RandomStream&)>& sample_hk,
                       RandomStream& rng) {
    if (d.k == 1) return std::sqrt(1.0 - d.p_max) * rng.gaussian();
    const double h = sample_hk(rng);
    const double var = (1.0 - d.k * d.p_max) / d.k;
    if (var <= 0.0) return h;  // uniform: 1 - m p_max = 0
    return h + std::sqrt(var) * rng.gaussian();
}

void write_sample_dump(std::ostream& os, const std::vector<double>& samples,
                       const std::vector<std::pair<std::string, std::string>>& header) {
    os.precision(17);
    for (const auto& [key, value] : header) os << "# " << key << " = " << value << "\n";
    for (const double x : samples) os << x << "\n";
}

}  // namespace lislim::brownian
