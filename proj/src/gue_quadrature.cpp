#include "lislim/gue_quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lislim::quad {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

int default_nodes(int dims) {
    switch (dims) {
        case 1: return 256;
        case 2: return 200;
        case 3: return 112;
        default: return 56;  // 4-dim tensors
    }
}

void check_spec(const QuadratureSpec& spec) {
    if (spec.R < 6.0) throw std::invalid_argument("QuadratureSpec: R must be >= 6");
    if (spec.nodes_per_dim != 0 && spec.nodes_per_dim < 16)
        throw std::invalid_argument("QuadratureSpec: nodes_per_dim must be >= 16");
}

int nodes_for(const QuadratureSpec& spec, int dims) {
    return spec.nodes_per_dim > 0 ? spec.nodes_per_dim : default_nodes(dims);
}

const std::pair<std::vector<long double>, std::vector<long double>>& cached_rule(int n) {
    static std::map<int, std::pair<std::vector<long double>, std::vector<long double>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::pair<std::vector<long double>, std::vector<long double>> rule;
        gauss_legendre(n, rule.first, rule.second);
        it = cache.emplace(n, std::move(rule)).first;
    }
    return it->second;
}

// Generic tensor integration over [lo, hi]^dims; f takes the point x.
template <class F>
long double tensor_integrate(int dims, long double lo, long double hi, int n, F&& f) {
    const auto& [t, w] = cached_rule(n);
    const long double mid = 0.5L * (lo + hi);
    const long double half = 0.5L * (hi - lo);
    std::vector<long double> node(static_cast<std::size_t>(n)), weight(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        node[static_cast<std::size_t>(i)] = mid + half * t[static_cast<std::size_t>(i)];
        weight[static_cast<std::size_t>(i)] = half * w[static_cast<std::size_t>(i)];
    }
    std::vector<long double> x(static_cast<std::size_t>(dims));
    long double total = 0.0L;
    // odometer over the tensor grid
    std::vector<int> idx(static_cast<std::size_t>(dims), 0);
    for (;;) {
        long double wp = 1.0L;
        for (int d = 0; d < dims; ++d) {
            x[static_cast<std::size_t>(d)] = node[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
            wp *= weight[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
        }
        total += wp * f(x);
        int d = dims - 1;
        while (d >= 0 && ++idx[static_cast<std::size_t>(d)] == n) {
            idx[static_cast<std::size_t>(d)] = 0;
            --d;
        }
        if (d < 0) break;
    }
    return total;
}

long double vandermonde_sq(const std::vector<long double>& x) {
    long double prod = 1.0L;
    const int k = static_cast<int>(x.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            prod *= x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
    return prod * prod;
}

// Simplex integral of e^{-|x|^2/2} Delta^2 over {x in L_k : max x_j <= s},
// mapped from the unit box by stick-breaking barycentric coordinates.
long double simplex_weight_integral(int k, long double s, int n) {
    const int dims = k - 1;
    const auto& [t, w] = cached_rule(n);
    std::vector<long double> node(static_cast<std::size_t>(n)), weight(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        node[static_cast<std::size_t>(i)] = 0.5L + 0.5L * t[static_cast<std::size_t>(i)];
        weight[static_cast<std::size_t>(i)] = 0.5L * w[static_cast<std::size_t>(i)];
    }
    std::vector<long double> u(static_cast<std::size_t>(dims));
    std::vector<long double> x(static_cast<std::size_t>(k));
    long double total = 0.0L;

    // rec over levels: rem = prod (1 - a_j) so far, sum_u = sum of u's so far
    auto rec = [&](auto&& self, int level, long double rem, long double sum_u,
                   long double wprod) -> void {
        if (level == dims) {
            long double sq = 0.0L;
            for (int i = 0; i < dims; ++i) {
                x[static_cast<std::size_t>(i)] = s * (1.0L - k * u[static_cast<std::size_t>(i)]);
            }
            x[static_cast<std::size_t>(dims)] = s * (1.0L - k * (1.0L - sum_u));
            for (int i = 0; i < k; ++i)
                sq += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
            total += wprod * std::exp(-0.5L * sq) * vandermonde_sq(x);
            return;
        }
        const int pw = dims - 1 - level;
        for (int i = 0; i < n; ++i) {
            const long double a = node[static_cast<std::size_t>(i)];
            long double jac = 1.0L;
            for (int q = 0; q < pw; ++q) jac *= (1.0L - a);
            u[static_cast<std::size_t>(level)] = a * rem;
            self(self, level + 1, rem * (1.0L - a), sum_u + a * rem,
                 wprod * weight[static_cast<std::size_t>(i)] * jac);
        }
    };
    rec(rec, 0, 1.0L, 0.0L, 1.0L);
    return total;
}

}  // namespace

void gauss_legendre(int n, std::vector<long double>& nodes, std::vector<long double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    nodes.assign(static_cast<std::size_t>(n), 0.0L);
    weights.assign(static_cast<std::size_t>(n), 0.0L);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        long double x = std::cos(kPi * (i + 0.75L) / (n + 0.5L));
        long double dp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_n(x) and P'_n(x)
            long double p0 = 1.0L, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const long double p2 = ((2.0L * j - 1.0L) * x * p1 - (j - 1.0L) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const long double wgt = 2.0L / ((1.0L - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = wgt;
        weights[static_cast<std::size_t>(n - 1 - i)] = wgt;
    }
}

double log_c0(int k) {
    if (k < 2) throw std::invalid_argument("c0_constant: k >= 2");
    double log_prod = 0.0;
    for (int i = 0; i < k; ++i) log_prod += std::lgamma(i + 1.0);
    return -0.5 * (k - 1) * std::log(2.0 * M_PI) - log_prod;
}

double c0_constant(int k) { return std::exp(log_c0(k)); }

double hyperplane_weight_integral(int k, const QuadratureSpec& spec) {
    check_spec(spec);
    if (k < 2 || k > 4) throw std::invalid_argument("hyperplane_weight_integral: 2 <= k <= 4");
    const int dims = k - 1;
    const int n = nodes_for(spec, dims);
    // Helmert orthonormal basis of {sum x = 0}: column j has j entries
    // 1/sqrt(j(j+1)) followed by -j/sqrt(j(j+1)).
    Mat basis = Mat::Zero(k, dims);
    for (int j = 1; j <= dims; ++j) {
        const double a = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
        for (int i = 0; i < j; ++i) basis(i, j - 1) = a;
        basis(j, j - 1) = -a * j;
    }
    std::vector<long double> x(static_cast<std::size_t>(k));
    const long double total = tensor_integrate(
        dims, -static_cast<long double>(spec.R), static_cast<long double>(spec.R), n,
        [&](const std::vector<long double>& u) {
            long double sq = 0.0L;
            for (int i = 0; i < k; ++i) {
                long double xi = 0.0L;
                for (int j = 0; j < dims; ++j)
                    xi += static_cast<long double>(basis(i, j)) * u[static_cast<std::size_t>(j)];
                x[static_cast<std::size_t>(i)] = xi;
                sq += xi * xi;
            }
            return std::exp(-0.5L * sq) * vandermonde_sq(x);
        });
    return static_cast<double>(total / std::tgamma(static_cast<long double>(k) + 1.0L));
}

double h_cdf(int k, double s, const QuadratureSpec& spec) {
    check_spec(spec);
    if (k < 2 || k > 4) throw std::invalid_argument("h_cdf: 2 <= k <= 4");
    if (s <= 0.0) return 0.0;
    const int dims = k - 1;
    const int n = nodes_for(spec, dims);
    const long double raw = simplex_weight_integral(k, s, n);
    // P = (c_k^0 / k!) * (k s)^{k-1} * sqrt(k) * integral over the unit simplex
    const long double log_norm = log_c0(k) - std::lgamma(static_cast<long double>(k) + 1.0L) +
                                 (k - 1) * std::log(static_cast<long double>(k) * s) +
                                 0.5L * std::log(static_cast<long double>(k));
    const long double val = std::exp(log_norm) * raw;
    return static_cast<double>(std::min(1.0L, std::max(0.0L, val)));
}

std::pair<double, double> h_cdf_with_error(int k, double s, const QuadratureSpec& spec) {
    const double full = h_cdf(k, s, spec);
    QuadratureSpec halved = spec;
    halved.nodes_per_dim = std::max(16, nodes_for(spec, k - 1) / 2);
    const double coarse = h_cdf(k, s, halved);
    return {full, std::fabs(full - coarse)};
}

double j_weight_normalization(int k, double beta, const QuadratureSpec& spec) {
    check_spec(spec);
    if (k < 1 || k > 4) throw std::invalid_argument("j_weight_normalization: 1 <= k <= 4");
    const int n = nodes_for(spec, k);
    const long double b = beta;
    return static_cast<double>(tensor_integrate(
        k, -static_cast<long double>(spec.R), static_cast<long double>(spec.R), n,
        [&](const std::vector<long double>& x) {
            long double sq = 0.0L, sum = 0.0L;
            for (const long double xi : x) {
                sq += xi * xi;
                sum += xi;
            }
            return std::exp(-0.5L * (sq + b * sum * sum)) * vandermonde_sq(x);
        }));
}

double j_cdf(int k, double p_max, double s, const QuadratureSpec& spec) {
    check_spec(spec);
    if (k == 1) {
        if (!(p_max < 1.0)) throw std::invalid_argument("j_cdf: p_max < 1 required");
        return 0.5 * std::erfc(-s / std::sqrt(2.0 * (1.0 - p_max)));
    }
    if (k < 1 || k > 4) throw std::invalid_argument("j_cdf: 1 <= k <= 4");
    if (!(k * p_max < 1.0))
        throw std::invalid_argument("j_cdf: k p_max < 1 required (k = m is h_cdf)");
    if (s <= -spec.R) return 0.0;
    const double beta = p_max / (1.0 - k * p_max);

    static std::map<std::tuple<int, double, double, int>, double> norm_cache;
    static std::mutex mtx;
    const int n = nodes_for(spec, k);
    double norm;
    {
        std::lock_guard<std::mutex> lock(mtx);
        const auto key = std::make_tuple(k, beta, spec.R, n);
        auto it = norm_cache.find(key);
        if (it == norm_cache.end())
            it = norm_cache.emplace(key, j_weight_normalization(k, beta, spec)).first;
        norm = it->second;
    }

    const long double hi = std::min(static_cast<long double>(s), static_cast<long double>(spec.R));
    const long double b = beta;
    const long double raw = tensor_integrate(
        k, -static_cast<long double>(spec.R), hi, n, [&](const std::vector<long double>& x) {
            long double sq = 0.0L, sum = 0.0L;
            for (const long double xi : x) {
                sq += xi * xi;
                sum += xi;
            }
            return std::exp(-0.5L * (sq + b * sum * sum)) * vandermonde_sq(x);
        });
    return static_cast<double>(std::min(1.0L, std::max(0.0L, raw / norm)));
}

double CdfTable::operator()(double xq) const {
    if (xq <= x.front()) return y.front();
    if (xq >= x.back()) return y.back();
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double h = x[i + 1] - x[i];
    const double t = (xq - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y[i] + h10 * h * slope[i] + h01 * y[i + 1] + h11 * h * slope[i + 1];
}

CdfTable make_monotone_table(std::vector<double> xs, std::vector<double> ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw std::invalid_argument("make_monotone_table: bad sizes");
    CdfTable t;
    t.x = std::move(xs);
    t.y = std::move(ys);
    t.slope.assign(n, 0.0);
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = t.x[i + 1] - t.x[i];
        if (!(h > 0.0)) throw std::invalid_argument("make_monotone_table: x not increasing");
        d[i] = (t.y[i + 1] - t.y[i]) / h;
    }
    // Fritsch-Carlson monotone slopes
    t.slope[0] = d[0];
    t.slope[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
        t.slope[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            t.slope[i] = t.slope[i + 1] = 0.0;
            continue;
        }
        const double a = t.slope[i] / d[i];
        const double b = t.slope[i + 1] / d[i];
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double tau = 3.0 / std::sqrt(r);
            t.slope[i] = tau * a * d[i];
            t.slope[i + 1] = tau * b * d[i];
        }
    }
    return t;
}

HkLaw make_hk_law(int k, const QuadratureSpec& spec, int table_points) {
    HkLaw law;
    law.k = k;
    law.c0 = c0_constant(k);
    const double s_hi = 2.0 * std::sqrt(static_cast<double>(k)) + 6.0;
    std::vector<double> xs, ys;
    xs.reserve(static_cast<std::size_t>(table_points));
    ys.reserve(static_cast<std::size_t>(table_points));
    for (int i = 0; i < table_points; ++i) {
        const double s = s_hi * i / (table_points - 1);
        xs.push_back(s);
        ys.push_back(h_cdf(k, s, spec));
    }
    law.cdf = make_monotone_table(std::move(xs), std::move(ys));
    return law;
}

CdfTable make_jk_table(int k, double p_max, const QuadratureSpec& spec, int table_points) {
    const double s_hi = 2.0 * std::sqrt(static_cast<double>(k)) + 6.0;
    const double s_lo = -s_hi;
    std::vector<double> xs, ys;
    for (int i = 0; i < table_points; ++i) {
        const double s = s_lo + (s_hi - s_lo) * i / (table_points - 1);
        xs.push_back(s);
        ys.push_back(j_cdf(k, p_max, s, spec));
    }
    return make_monotone_table(std::move(xs), std::move(ys));
}

}  // namespace lislim::quad
