#include "lislim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lislim::stats {

Ecdf Ecdf::from_samples(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("Ecdf: empty sample");
    std::sort(samples.begin(), samples.end());
    return Ecdf{std::move(samples)};
}

double Ecdf::operator()(double x) const {
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    return static_cast<double>(it - xs.begin()) / static_cast<double>(xs.size());
}

double ks_distance(const Ecdf& e, const std::function<double(double)>& cdf) {
    const double n = static_cast<double>(e.n());
    double sup = 0.0;
    for (std::size_t i = 0; i < e.xs.size(); ++i) {
        const double f = cdf(e.xs[i]);
        sup = std::max(sup, f - static_cast<double>(i) / n);
        sup = std::max(sup, static_cast<double>(i + 1) / n - f);
    }
    return sup;
}

double ks_two_sample(const Ecdf& a, const Ecdf& b) {
    double sup = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.n() && j < b.n()) {
        const double x = std::min(a.xs[i], b.xs[j]);
        while (i < a.n() && a.xs[i] <= x) ++i;
        while (j < b.n() && b.xs[j] <= x) ++j;
        sup = std::max(sup, std::fabs(static_cast<double>(i) / a.n() -
                                      static_cast<double>(j) / b.n()));
    }
    return sup;
}

namespace {
// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}
double kolmogorov_q(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}
}  // namespace

double ks_two_sample_pvalue(const Ecdf& a, const Ecdf& b) {
    const double d = ks_two_sample(a, b);
    const double ne = static_cast<double>(a.n()) * static_cast<double>(b.n()) /
                      (static_cast<double>(a.n()) + static_cast<double>(b.n()));
    const double s = std::sqrt(ne);
    return kolmogorov_q((s + 0.12 + 0.11 / s) * d);
}

double dkw_epsilon(std::size_t n, double alpha) {
    if (n < 1 || !(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("dkw_epsilon: need n >= 1 and alpha in (0,1)");
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

double sup_density_estimate(const std::vector<double>& samples, double bin_width) {
    if (samples.size() < 10000)
        throw std::invalid_argument("sup_density_estimate: need at least 10^4 samples");
    if (!(bin_width > 0.0)) throw std::invalid_argument("sup_density_estimate: bad bin width");
    const auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *mn_it;
    const std::size_t nbins =
        static_cast<std::size_t>(std::floor((*mx_it - lo) / bin_width)) + 1;
    std::vector<std::size_t> counts(nbins, 0);
    for (const double x : samples) {
        auto b = static_cast<std::size_t>((x - lo) / bin_width);
        if (b >= nbins) b = nbins - 1;
        counts[b]++;
    }
    const std::size_t peak = *std::max_element(counts.begin(), counts.end());
    return static_cast<double>(peak) / (static_cast<double>(samples.size()) * bin_width);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace lislim::stats
