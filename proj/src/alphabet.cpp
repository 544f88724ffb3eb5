#include "lislim/alphabet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lislim {

bool AlphabetDistribution::in_i_star(int r) const {
    return std::binary_search(i_star.begin(), i_star.end(), r);
}

AlphabetDistribution build_distribution(const Vec& p_in) {
    const Index m = p_in.size();
    if (m < 2) throw std::invalid_argument("alphabet: need at least 2 symbols");
    for (Index r = 0; r < m; ++r) {
        if (!(p_in[r] > 0.0))
            throw std::invalid_argument("alphabet: probabilities must be positive");
    }
    const double sum = p_in.sum();
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("alphabet: probabilities must sum to 1 within 1e-9");

    AlphabetDistribution d;
    d.p = p_in / sum;
    d.p_max = d.p.maxCoeff();
    d.k = 0;
    for (Index r = 0; r < m; ++r) {
        // exact comparison: ties are combinatorial, no epsilon window
        if (d.p[r] == d.p_max) ++d.k;
        else d.i_star.push_back(static_cast<int>(r) + 1);
    }

    d.mu.resize(m - 1);
    d.sigma.resize(m - 1);
    for (Index r = 0; r < m - 1; ++r) {
        d.mu[r] = d.p[r] - d.p[r + 1];
        const double s2 = d.p[r] + d.p[r + 1] - d.mu[r] * d.mu[r];
        if (!(s2 > 0.0)) throw std::invalid_argument("alphabet: degenerate sigma_r");
        d.sigma[r] = std::sqrt(s2);
    }

    d.rho = Mat::Identity(m - 1, m - 1);
    for (Index r = 0; r < m - 1; ++r) {
        for (Index s = 0; s < m - 1; ++s) {
            if (r == s) continue;
            const double denom = d.sigma[r] * d.sigma[s];
            double cov;
            if (s == r + 1)
                cov = -(d.p[s] + d.mu[r] * d.mu[s]);
            else if (s == r - 1)
                cov = -(d.p[r] + d.mu[r] * d.mu[s]);
            else
                cov = -d.mu[r] * d.mu[s];
            d.rho(r, s) = cov / denom;
        }
    }

    Eigen::SelfAdjointEigenSolver<Mat> es(d.rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("alphabet: correlation matrix is not PSD");

    return d;
}

Mat covariance_matrix(const AlphabetDistribution& d) { return d.rho; }

AlphabetDistribution uniform_distribution(int m) {
    return build_distribution(Vec::Constant(m, 1.0 / m));
}

std::vector<ConstraintBlock> constraint_blocks(const AlphabetDistribution& d) {
    const int m = d.m();
    std::vector<ConstraintBlock> blocks;
    ConstraintBlock cur{1, 1, d.in_i_star(1), false};
    for (int r = 2; r <= m - 1; ++r) {
        if (d.in_i_star(r)) {
            cur.hi = r;  // t_r = t_{r-1} merges r into the current block
        } else {
            blocks.push_back(cur);
            cur = ConstraintBlock{r, r, false, false};
        }
    }
    cur.pin_end = d.in_i_star(m);
    blocks.push_back(cur);
    return blocks;
}

}  // namespace lislim
