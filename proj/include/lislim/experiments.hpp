#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lislim/alphabet.hpp"
#include "lislim/binary_exact.hpp"
#include "lislim/bounds.hpp"
#include "lislim/config.hpp"

namespace lislim::experiments {

// One rate-experiment cell.
struct RateReport {
    int n = 0, m = 0, k = 0;
    double p_max = 0.0;
    double ks = 0.0;       // Kolmogorov distance vs the reference CDF
    double bound = 0.0;    // thm41 bound at the configured c
    double ratio = 0.0;    // ks * sqrt(n) / log(n)
    std::uint64_t seed = 0;
    long runtime_ms = 0;
};

// Reference CDF for (LI_n - n p_max)/sqrt(n p_max) chosen by the hierarchy
// closed form > quadrature (k <= 4) > Monte Carlo; `mode` may force one.
// Throws ConfigError when the forced mode is unavailable.
std::function<double(double)> make_reference_cdf(const AlphabetDistribution& d,
                                                 const ExperimentConfig& cfg,
                                                 std::string* description = nullptr);

// ECDF statistic samples for one cell, deterministic for fixed shard count.
std::vector<double> sample_statistic(const AlphabetDistribution& d, int n, long N,
                                     std::uint64_t seed, std::uint64_t cell_tag, int workers);

std::vector<RateReport> run_rate_sweep(const ExperimentConfig& cfg);
std::vector<RateReport> run_growing_m(const ExperimentConfig& cfg);
std::vector<binary::BinarySweepRow> run_binary_sweep(int n_max);

// CSV / JSON writers; zero_runtime also zeroes runtime_ms so reruns are
// byte-identical (pairs with the suppressed timestamp header).
void write_rate_csv(std::ostream& os, const std::vector<RateReport>& rows,
                    bool timestamp, bool zero_runtime);
void write_rate_json(std::ostream& os, const std::vector<RateReport>& rows, bool zero_runtime);
void write_binary_csv(std::ostream& os, const std::vector<binary::BinarySweepRow>& rows,
                      bool timestamp);
void write_binary_json(std::ostream& os, const std::vector<binary::BinarySweepRow>& rows);

struct CdfTableRow {
    double s = 0.0, cdf = 0.0, err_est = 0.0;
};
std::vector<CdfTableRow> make_cdf_table_rows(const std::string& law, int k, double p_max,
                                             double s_min, double s_max, int points);
void write_cdf_csv(std::ostream& os, const std::vector<CdfTableRow>& rows, bool timestamp);
void write_cdf_json(std::ostream& os, const std::vector<CdfTableRow>& rows);

void write_bound_reports_csv(std::ostream& os, const std::vector<bounds::BoundReport>& rows,
                             bool timestamp);
void write_bound_reports_json(std::ostream& os, const std::vector<bounds::BoundReport>& rows);

}  // namespace lislim::experiments
