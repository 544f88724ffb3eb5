#include "lislim/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lislim::bounds {

double prop31_bound(int k) {
    if (k < 2) throw std::invalid_argument("prop31_bound: k >= 2");
    const double kk = k;
    const double log_val = 0.5 * kk * kk * std::log(2.0) +
                           kk * kk * std::log(kk / (kk - 1.0)) + std::log(kk - 1.0) +
                           0.5 * kk * std::log(2.0 * M_PI * std::pow(kk, 5) / M_E) +
                           0.5 * std::log(2.0 * M_E) - std::log(4.0 * M_PI);
    return std::exp(log_val);
}

double prop32_bound(int k, double p_max, int m) {
    if (k < 1 || k > m) throw std::invalid_argument("prop32_bound: need 1 <= k <= m");
    if (k == 1) return 1.0 / std::sqrt(2.0 * M_PI * (1.0 - p_max));
    if (k == m) return prop31_bound(m);
    const double gauss = std::sqrt(k / (2.0 * M_PI * (1.0 - k * p_max)));
    return std::min(gauss, prop31_bound(k));
}

double thm41_min_branch(int k, double p_max) {
    if (k == 1) return 1.0 / std::sqrt(p_max * (1.0 - p_max));
    const double expo = std::exp2(0.5 * k * k) / std::sqrt(p_max);
    if (k * p_max >= 1.0) return expo;  // Gaussian branch understood infinite
    const double gauss = std::sqrt(k / (p_max * (1.0 - k * p_max)));
    return std::min(expo, gauss);
}

bool thm41_min_uses_exponential_branch(int k, double p_max) {
    if (k * p_max >= 1.0) return true;
    const double threshold = (std::exp2(static_cast<double>(k) * k) - k) /
                             (k * std::exp2(static_cast<double>(k) * k));
    return p_max >= threshold;
}

double thm41_bound(int n, int m, int k, double p_max, double sigma_max, double c) {
    if (n < 2) throw std::invalid_argument("thm41_bound: n >= 2");
    const double inner = (m - 1.0) * (m - 1.0) * sigma_max * sigma_max + thm41_min_branch(k, p_max);
    return c * (m - 1.0) * inner * std::log(static_cast<double>(n)) / std::sqrt(static_cast<double>(n));
}

double lemma43_bound(int n, const AlphabetDistribution& d, double eps, double xi) {
    if (!(eps > 0.0) || !(xi > 0.0)) throw std::invalid_argument("lemma43_bound: eps, xi > 0");
    const int m = d.m();
    const double smax = d.sigma_max();
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    double sum = 0.0;
    for (int r = 0; r < m - 1; ++r)
        sum += 1.0 + d.sigma[r] * sqrt_n / (1.0 - std::fabs(d.mu[r]));
    return (1.0 + (m - 1.0) * (m - 1.0) * smax * smax) * eps / 2.0 +
           std::exp(-xi * eps * sqrt_n / (16.0 * (m - 1.0))) * sum;
}

double sakhanenko_lambda(const AlphabetDistribution& d, int r) {
    if (r < 1 || r > d.m() - 1) throw std::invalid_argument("sakhanenko_lambda: bad index");
    const double pr = d.p[r - 1];
    const double pr1 = d.p[r];
    const double mu = d.mu[r - 1];
    const double var = d.sigma[r - 1] * d.sigma[r - 1];
    // g(lambda) = lambda E(|Z - mu|^3 e^{lambda |Z - mu|}) is increasing;
    // Z takes 1, -1, 0 with probabilities p_r, p_{r+1}, rest
    auto g = [&](double lam) {
        const double a1 = std::fabs(1.0 - mu), a2 = std::fabs(-1.0 - mu), a3 = std::fabs(mu);
        return lam * (pr * a1 * a1 * a1 * std::exp(lam * a1) +
                      pr1 * a2 * a2 * a2 * std::exp(lam * a2) +
                      (1.0 - pr - pr1) * a3 * a3 * a3 * std::exp(lam * a3));
    };
    double lo = 0.0, hi = 1.0;
    while (g(hi) < var) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) <= var ? lo : hi) = mid;
    }
    return d.sigma[r - 1] * lo;
}

double lemma44_bound(int n, int m, double sigma_max, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("lemma44_bound: eps > 0");
    const double arg = -eps * eps * n / (8.0 * sigma_max * sigma_max * (m - 1.0) * (m - 1.0));
    return 4.0 * (m - 1.0) * n * std::exp(arg);
}

bool stieltjes_check(const std::vector<double>& points) {
    const int k = static_cast<int>(points.size());
    double lhs = 0.0;
    for (const double x : points) lhs += 0.5 * x * x;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const double gap = std::fabs(points[static_cast<std::size_t>(i)] -
                                         points[static_cast<std::size_t>(j)]);
            if (gap == 0.0) return true;  // LHS is +infinity
            lhs -= std::log(gap);
        }
    double rhs = 0.25 * k * (k - 1.0) * (1.0 + std::log(2.0));
    for (int i = 1; i <= k; ++i) rhs -= 0.5 * i * std::log(static_cast<double>(i));
    return lhs >= rhs;
}

bool stirling_sandwich_holds(int n) {
    const double log_fact = std::lgamma(n + 1.0);
    const double base = 0.5 * std::log(2.0 * M_PI) + (n + 0.5) * std::log(static_cast<double>(n)) - n;
    const double lo = base + 1.0 / (12.0 * n + 1.0);
    const double hi = base + 1.0 / (12.0 * n);
    return lo <= log_fact && log_fact <= hi;
}

bool factorial_identity_check(int k) {
    if (k < 2) throw std::invalid_argument("factorial_identity_check: k >= 2");
    double lhs = 0.0;
    for (int i = 1; i <= k - 1; ++i) lhs += std::lgamma(i + 1.0);
    double rhs = k * std::lgamma(static_cast<double>(k));
    for (int i = 1; i <= k - 1; ++i) rhs -= i * std::log(static_cast<double>(i));
    if (std::fabs(lhs - rhs) > 1e-10 * std::max(1.0, std::fabs(lhs))) return false;
    for (int n = 1; n <= 200; ++n)
        if (!stirling_sandwich_holds(n)) return false;
    return true;
}

}  // namespace lislim::bounds
