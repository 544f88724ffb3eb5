#include "lislim/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>

#include <json.hpp>

#include "lislim/brownian.hpp"
#include "lislim/gue_quadrature.hpp"
#include "lislim/lis_core.hpp"
#include "lislim/parallel.hpp"
#include "lislim/stats.hpp"

namespace lislim::experiments {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_timestamp(std::ostream& os) {
    const std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated " << buf << "\n";
}

int resolve_workers(const ExperimentConfig& cfg) {
    return cfg.workers > 0 ? cfg.workers : default_workers();
}

AlphabetDistribution distribution_from(const ExperimentConfig& cfg) {
    if (cfg.distribution.size() < 2) throw ConfigError("config: distribution needs >= 2 entries");
    Vec p(static_cast<Index>(cfg.distribution.size()));
    for (std::size_t i = 0; i < cfg.distribution.size(); ++i)
        p[static_cast<Index>(i)] = cfg.distribution[i];
    try {
        return build_distribution(p);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: bad distribution: ") + e.what());
    }
}

}  // namespace

std::vector<double> sample_statistic(const AlphabetDistribution& d, int n, long N,
                                     std::uint64_t seed, std::uint64_t cell_tag, int workers) {
    constexpr int kShards = 8;  // fixed so results do not depend on the pool size
    std::vector<std::vector<double>> parts(kShards);
    const double denom = std::sqrt(n * d.p_max);
    parallel_shards(kShards, workers, [&](int s) {
        const long count = N / kShards + (s < N % kShards ? 1 : 0);
        RandomStream rng(seed, cell_tag * 1009 + static_cast<std::uint64_t>(s));
        auto& out = parts[static_cast<std::size_t>(s)];
        out.reserve(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) {
            const int li = sample_lis(d, n, rng);
            out.push_back((li - n * d.p_max) / denom);
        }
    });
    std::vector<double> merged;
    merged.reserve(static_cast<std::size_t>(N));
    for (auto& part : parts) merged.insert(merged.end(), part.begin(), part.end());
    return merged;
}

std::function<double(double)> make_reference_cdf(const AlphabetDistribution& d,
                                                 const ExperimentConfig& cfg,
                                                 std::string* description) {
    const int k = d.k;
    const int m = d.m();
    const double p_max = d.p_max;
    const std::string mode = cfg.reference;
    auto describe = [&](const std::string& s) {
        if (description) *description = s;
    };

    const bool closed_available = (k == 1) || (m == 2 && k == 2);
    if (mode == "closed-form" || (mode == "auto" && closed_available)) {
        if (k == 1) {
            describe("closed-form normal, variance 1 - p_max");
            const double sd = std::sqrt(1.0 - p_max);
            return [sd](double x) { return stats::normal_cdf(x / sd); };
        }
        if (m == 2 && k == 2) {
            describe("closed-form binary limit law");
            return [](double x) { return static_cast<double>(binary::limit_cdf(x / std::sqrt(2.0))); };
        }
        throw ConfigError("reference: closed form only available for k = 1 or uniform binary");
    }

    const bool quad_available = k <= 4;
    if (mode == "quadrature" || (mode == "auto" && quad_available)) {
        if (!quad_available)
            throw ConfigError("reference: quadrature supports k <= 4; use monte-carlo");
        if (k == m) {
            describe("quadrature H_" + std::to_string(k) + " table");
            auto law = std::make_shared<quad::HkLaw>(quad::make_hk_law(k));
            return [law](double x) { return (*law)(x); };
        }
        describe("quadrature J_" + std::to_string(k) + " table");
        auto table = std::make_shared<quad::CdfTable>(quad::make_jk_table(k, p_max));
        return [table](double x) { return (*table)(x); };
    }

    // Monte Carlo reference: ECDF of functional_J samples
    describe("monte-carlo functional ECDF, N = " + std::to_string(cfg.mc_reference_samples));
    const long N = cfg.mc_reference_samples;
    constexpr int kShards = 8;
    std::vector<std::vector<double>> parts(kShards);
    const int workers = resolve_workers(cfg);
    parallel_shards(kShards, workers, [&](int s) {
        const long count = N / kShards + (s < N % kShards ? 1 : 0);
        RandomStream rng(cfg.seed, 0xEEFF00ULL + static_cast<std::uint64_t>(s));
        auto grid = brownian::make_grid(d, cfg.T);
        auto& out = parts[static_cast<std::size_t>(s)];
        out.reserve(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) {
            brownian::resample_grid(grid, rng);
            out.push_back(brownian::functional_J(grid, d));
        }
    });
    std::vector<double> merged;
    merged.reserve(static_cast<std::size_t>(N));
    for (auto& part : parts) merged.insert(merged.end(), part.begin(), part.end());
    if (!cfg.dump_samples.empty()) {
        std::ofstream dump(cfg.dump_samples);
        if (!dump) throw ConfigError("cannot open dump_samples path " + cfg.dump_samples);
        brownian::write_sample_dump(
            dump, merged,
            {{"law", "J_k reference"},
             {"seed", std::to_string(cfg.seed)},
             {"T", std::to_string(cfg.T)},
             {"k", std::to_string(k)},
             {"p_max", fmt(p_max)}});
    }
    auto ecdf = std::make_shared<stats::Ecdf>(stats::Ecdf::from_samples(std::move(merged)));
    return [ecdf](double x) { return (*ecdf)(x); };
}

namespace {

RateReport run_cell(const AlphabetDistribution& d, int n, const ExperimentConfig& cfg,
                    const std::function<double(double)>& ref, std::uint64_t cell_tag) {
    const auto start = std::chrono::steady_clock::now();
    RateReport rr;
    rr.n = n;
    rr.m = d.m();
    rr.k = d.k;
    rr.p_max = d.p_max;
    rr.seed = cfg.seed;
    auto samples =
        sample_statistic(d, n, cfg.samples, cfg.seed, cell_tag, resolve_workers(cfg));
    const auto ecdf = stats::Ecdf::from_samples(std::move(samples));
    rr.ks = stats::ks_distance(ecdf, ref);
    rr.bound = bounds::thm41_bound(n, d.m(), d.k, d.p_max, d.sigma_max(), cfg.c);
    rr.ratio = rr.ks * std::sqrt(static_cast<double>(n)) / std::log(static_cast<double>(n));
    rr.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    return rr;
}

}  // namespace

std::vector<RateReport> run_rate_sweep(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (cfg.n_grid.empty()) throw ConfigError("config: n_grid is required");
    const auto d = distribution_from(cfg);
    const auto ref = make_reference_cdf(d, cfg);
    std::vector<RateReport> rows;
    rows.reserve(cfg.n_grid.size());
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i)
        rows.push_back(run_cell(d, cfg.n_grid[i], cfg, ref, static_cast<std::uint64_t>(i)));
    return rows;
}

std::vector<RateReport> run_growing_m(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (cfg.n_grid.empty()) throw ConfigError("config: n_grid is required");
    const int k = cfg.k_target;
    if (k < 1) throw ConfigError("config: k must be >= 1");
    if (!cfg.m_grid.empty() && cfg.m_grid.size() != cfg.n_grid.size())
        throw ConfigError("config: m_grid must match n_grid length");

    std::vector<RateReport> rows;
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        const int n = cfg.n_grid[i];
        int m = cfg.m_grid.empty()
                    ? static_cast<int>(std::ceil(std::pow(static_cast<double>(n), cfg.m_exponent)))
                    : cfg.m_grid[i];
        m = std::max(m, k + 1);
        // schedule check: m should grow like o(n^{1/4} log^{-1/2} n)
        const double sched = m * std::sqrt(std::log(static_cast<double>(n))) /
                             std::pow(static_cast<double>(n), 0.25);
        if (sched > prev_ratio)
            std::cerr << "growing-m: warning: schedule ratio m sqrt(log n)/n^{1/4} "
                         "increases at n = "
                      << n << "\n";
        prev_ratio = sched;

        // k tied maximal symbols at twice the weight of the m-k others
        Vec p(m);
        for (int r = 0; r < m; ++r) p[r] = (r < k ? 2.0 : 1.0) / (m + k);
        const auto d = build_distribution(p);
        if (d.k != k) throw ConfigError("growing-m: schedule does not keep k fixed");
        if (!(1.0 / m <= d.p_max && d.p_max <= 1.0 / k + 1e-15))
            throw ConfigError("growing-m: p_max outside [1/m, 1/k]");
        if (d.sigma_max() * d.sigma_max() > 2.0 / m)
            std::cerr << "growing-m: note: sigma_max^2 = " << d.sigma_max() * d.sigma_max()
                      << " exceeds 2/m at m = " << m << "\n";

        ExperimentConfig cell_cfg = cfg;
        const auto ref = make_reference_cdf(d, cell_cfg);
        rows.push_back(run_cell(d, n, cell_cfg, ref, static_cast<std::uint64_t>(i)));
    }
    return rows;
}

std::vector<binary::BinarySweepRow> run_binary_sweep(int n_max) {
    if (n_max < 2) throw ConfigError("binary sweep: n_max >= 2");
    std::vector<binary::BinarySweepRow> rows;
    for (int n = 2; n <= n_max; n += 2) rows.push_back(binary::binary_sweep_row(n));
    return rows;
}

void write_rate_csv(std::ostream& os, const std::vector<RateReport>& rows, bool timestamp,
                    bool zero_runtime) {
    if (timestamp) write_timestamp(os);
    os << "n,m,k,p_max,ks,bound,ratio,seed,runtime_ms\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.m << ',' << r.k << ',' << fmt(r.p_max) << ',' << fmt(r.ks) << ','
           << fmt(r.bound) << ',' << fmt(r.ratio) << ',' << r.seed << ','
           << (zero_runtime ? 0 : r.runtime_ms) << "\n";
}

void write_rate_json(std::ostream& os, const std::vector<RateReport>& rows, bool zero_runtime) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"n", r.n},
                       {"m", r.m},
                       {"k", r.k},
                       {"p_max", r.p_max},
                       {"ks", r.ks},
                       {"bound", r.bound},
                       {"ratio", r.ratio},
                       {"seed", r.seed},
                       {"runtime_ms", zero_runtime ? 0 : r.runtime_ms}});
    os << arr.dump(2) << "\n";
}

void write_binary_csv(std::ostream& os, const std::vector<binary::BinarySweepRow>& rows,
                      bool timestamp) {
    if (timestamp) write_timestamp(os);
    os << "n,ks_exact,24_over_sqrt_n,be_sup,lemma52_sup,21_over_sqrt_n\n";
    for (const auto& r : rows)
        os << r.n << ',' << fmt(r.ks_exact) << ',' << fmt(r.bound24) << ',' << fmt(r.be_sup)
           << ',' << fmt(r.l52_sup) << ',' << fmt(r.bound21) << "\n";
}

void write_binary_json(std::ostream& os, const std::vector<binary::BinarySweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"n", r.n},
                       {"ks_exact", r.ks_exact},
                       {"24_over_sqrt_n", r.bound24},
                       {"be_sup", r.be_sup},
                       {"lemma52_sup", r.l52_sup},
                       {"21_over_sqrt_n", r.bound21}});
    os << arr.dump(2) << "\n";
}

std::vector<CdfTableRow> make_cdf_table_rows(const std::string& law, int k, double p_max,
                                             double s_min, double s_max, int points) {
    if (points < 2) throw ConfigError("cdf-table: points >= 2");
    if (!(s_max > s_min)) throw ConfigError("cdf-table: need s_max > s_min");
    std::vector<CdfTableRow> rows;
    rows.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double s = s_min + (s_max - s_min) * i / (points - 1);
        CdfTableRow row;
        row.s = s;
        if (law == "h") {
            const auto [val, err] = quad::h_cdf_with_error(k, s);
            row.cdf = val;
            row.err_est = err;
        } else if (law == "j") {
            row.cdf = quad::j_cdf(k, p_max, s);
            quad::QuadratureSpec halved;
            halved.nodes_per_dim = 64;
            row.err_est = std::fabs(row.cdf - quad::j_cdf(k, p_max, s, halved));
        } else {
            throw ConfigError("cdf-table: law must be h or j");
        }
        rows.push_back(row);
    }
    return rows;
}

void write_cdf_csv(std::ostream& os, const std::vector<CdfTableRow>& rows, bool timestamp) {
    if (timestamp) write_timestamp(os);
    os << "s,cdf,err_est\n";
    for (const auto& r : rows)
        os << fmt(r.s) << ',' << fmt(r.cdf) << ',' << fmt(r.err_est) << "\n";
}

void write_cdf_json(std::ostream& os, const std::vector<CdfTableRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"s", r.s}, {"cdf", r.cdf}, {"err_est", r.err_est}});
    os << arr.dump(2) << "\n";
}

void write_bound_reports_csv(std::ostream& os, const std::vector<bounds::BoundReport>& rows,
                             bool timestamp) {
    if (timestamp) write_timestamp(os);
    os << "name,params,bound,observed,holds\n";
    for (const auto& r : rows) {
        os << r.name << ",\"" << r.params << "\"," << fmt(r.bound) << ',';
        if (r.observed) os << fmt(*r.observed);
        os << ',' << (r.holds ? "true" : "false") << "\n";
    }
}

void write_bound_reports_json(std::ostream& os, const std::vector<bounds::BoundReport>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json obj = {{"name", r.name},
                              {"params", r.params},
                              {"bound", r.bound},
                              {"holds", r.holds}};
        if (r.observed) obj["observed"] = *r.observed;
        arr.push_back(obj);
    }
    os << arr.dump(2) << "\n";
}

}  // namespace lislim::experiments
