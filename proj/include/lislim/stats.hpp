#pragma once

#include <functional>
#include <vector>

namespace lislim::stats {

// Empirical CDF over a sorted sample.
struct Ecdf {
    std::vector<double> xs;  // ascending

    static Ecdf from_samples(std::vector<double> samples);
    std::size_t n() const { return xs.size(); }
    double operator()(double x) const;  // #{samples <= x} / n
};

// Exact sup |Ecdf - F| against a non-decreasing continuous CDF; the sup is
// attained at a sample point (one of the two one-sided gaps).
double ks_distance(const Ecdf& e, const std::function<double(double)>& cdf);

// Two-sample KS statistic and its asymptotic p-value.
double ks_two_sample(const Ecdf& a, const Ecdf& b);
double ks_two_sample_pvalue(const Ecdf& a, const Ecdf& b);

// DKW margin sqrt(log(2/alpha) / (2n)).
double dkw_epsilon(std::size_t n, double alpha);

// Histogram sup-density max_bins count/(n h); needs at least 10^4 samples.
double sup_density_estimate(const std::vector<double>& samples, double bin_width);

double normal_cdf(double z);

}  // namespace lislim::stats
