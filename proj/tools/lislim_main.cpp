#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "lislim/experiments.hpp"
#include "lislim/verify.hpp"

namespace {

using lislim::ConfigError;
using lislim::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfigError = 2;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string json_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool no_timestamp = false;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "flat key = value config file");
    cmd->add_option("--out", opts.out_path, "output CSV path (default stdout)");
    cmd->add_option("--json", opts.json_path, "also write a JSON mirror to this path");
    cmd->add_option("--seed", opts.seed, "master seed (overrides config)")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_flag("--no-timestamp", opts.no_timestamp,
                  "suppress the timestamp header and runtime columns for byte-identical reruns");
    cmd->add_option("--workers", opts.workers, "worker threads (default: LISLIM_WORKERS or cores)");
}

ExperimentConfig load_config(const CommonOpts& opts) {
    ExperimentConfig cfg;
    if (!opts.config_path.empty()) cfg = lislim::parse_config_file(opts.config_path);
    if (opts.seed_set) cfg.seed = opts.seed;
    if (opts.workers > 0) cfg.workers = opts.workers;
    return cfg;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot open output path " + path);
    return f;
}

template <class WriteCsv, class WriteJson>
void emit(const CommonOpts& opts, WriteCsv&& write_csv, WriteJson&& write_json) {
    if (opts.out_path.empty()) {
        write_csv(std::cout);
    } else {
        auto f = open_out(opts.out_path);
        write_csv(f);
    }
    if (!opts.json_path.empty()) {
        auto f = open_out(opts.json_path);
        write_json(f);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-alphabet LIS limit laws: simulation, exact laws, bound verification"};
    app.require_subcommand(1);

    CommonOpts rate_opts, grow_opts, binary_opts, cdf_opts, verify_opts;

    auto* rate = app.add_subcommand("rate", "Monte Carlo Kolmogorov-distance sweep over n");
    add_common(rate, rate_opts);

    auto* grow = app.add_subcommand("growing-m", "rate sweep along an m(n) schedule with fixed k");
    add_common(grow, grow_opts);

    auto* binary = app.add_subcommand("binary", "exact binary sweep: ks, Berry-Esseen, local limit");
    add_common(binary, binary_opts);
    int binary_nmax = 2000;
    binary->add_option("--n-max", binary_nmax, "largest even n (default 2000)");

    auto* cdf = app.add_subcommand("cdf-table", "quadrature CDF table for H_k or J_k");
    add_common(cdf, cdf_opts);
    std::string law = "h";
    int cdf_k = 2;
    double cdf_pmax = 0.4, s_min = 0.0, s_max = 6.0;
    int cdf_points = 121;
    cdf->add_option("--law", law, "h (traceless-GUE H_k) or j (J_k)");
    cdf->add_option("--k", cdf_k, "multiplicity k (2..4 for h, 1..4 for j)");
    cdf->add_option("--p-max", cdf_pmax, "p_max for law j");
    cdf->add_option("--s-min", s_min, "table start");
    cdf->add_option("--s-max", s_max, "table end");
    cdf->add_option("--points", cdf_points, "number of rows");

    auto* verify = app.add_subcommand("verify", "run the full verification suite");
    add_common(verify, verify_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (rate->parsed()) {
            auto cfg = load_config(rate_opts);
            const auto rows = lislim::experiments::run_rate_sweep(cfg);
            emit(
                rate_opts,
                [&](std::ostream& os) {
                    lislim::experiments::write_rate_csv(os, rows, !rate_opts.no_timestamp,
                                                        rate_opts.no_timestamp);
                },
                [&](std::ostream& os) {
                    lislim::experiments::write_rate_json(os, rows, rate_opts.no_timestamp);
                });
        } else if (grow->parsed()) {
            auto cfg = load_config(grow_opts);
            const auto rows = lislim::experiments::run_growing_m(cfg);
            emit(
                grow_opts,
                [&](std::ostream& os) {
                    lislim::experiments::write_rate_csv(os, rows, !grow_opts.no_timestamp,
                                                        grow_opts.no_timestamp);
                },
                [&](std::ostream& os) {
                    lislim::experiments::write_rate_json(os, rows, grow_opts.no_timestamp);
                });
        } else if (binary->parsed()) {
            if (binary_nmax % 2 != 0) throw ConfigError("binary: --n-max must be even");
            const auto rows = lislim::experiments::run_binary_sweep(binary_nmax);
            emit(
                binary_opts,
                [&](std::ostream& os) {
                    lislim::experiments::write_binary_csv(os, rows, !binary_opts.no_timestamp);
                },
                [&](std::ostream& os) { lislim::experiments::write_binary_json(os, rows); });
        } else if (cdf->parsed()) {
            const auto rows =
                lislim::experiments::make_cdf_table_rows(law, cdf_k, cdf_pmax, s_min, s_max,
                                                         cdf_points);
            emit(
                cdf_opts,
                [&](std::ostream& os) {
                    lislim::experiments::write_cdf_csv(os, rows, !cdf_opts.no_timestamp);
                },
                [&](std::ostream& os) { lislim::experiments::write_cdf_json(os, rows); });
        } else if (verify->parsed()) {
            lislim::verify::VerifyOptions opt;
            if (verify_opts.seed_set) opt.seed = verify_opts.seed;
            opt.workers = verify_opts.workers;
            const auto results = lislim::verify::run_verification_suite(opt);
            bool all_pass = true;
            std::vector<lislim::bounds::BoundReport> reports;
            for (const auto& res : results) {
                std::cout << (res.pass ? "PASS" : "FAIL") << "  criterion " << res.id << ": "
                          << res.name << "\n      " << res.detail << "\n";
                all_pass = all_pass && res.pass;
                for (const auto& rep : res.reports) reports.push_back(rep);
            }
            if (!verify_opts.out_path.empty()) {
                auto f = open_out(verify_opts.out_path);
                lislim::experiments::write_bound_reports_csv(f, reports,
                                                             !verify_opts.no_timestamp);
            }
            if (!verify_opts.json_path.empty()) {
                auto f = open_out(verify_opts.json_path);
                lislim::experiments::write_bound_reports_json(f, reports);
            }
            return all_pass ? kExitOk : kExitVerifyFail;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitOk;
}
