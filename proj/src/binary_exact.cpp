#include "lislim/binary_exact.hpp"

#include <cmath>
#include <stdexcept>

namespace lislim::binary {

namespace {

constexpr long double kSqrt2Pi = 2.50662827463100050241576528481104525L;

long double phibar(long double z) { return 0.5L * std::erfc(z / std::sqrt(2.0L)); }

// P(S_n = -n + 2t) for t = 0..n, extended precision recurrence.
std::vector<long double> walk_pmf(int n) {
    std::vector<long double> pmf(static_cast<std::size_t>(n) + 1);
    pmf[0] = std::ldexp(1.0L, -n);
    for (int t = 0; t < n; ++t)
        pmf[static_cast<std::size_t>(t) + 1] =
            pmf[static_cast<std::size_t>(t)] * (n - t) / (t + 1);
    return pmf;
}

// tail[t] = P(S_n >= -n + 2t), accumulated from the small end.
std::vector<long double> walk_tail(const std::vector<long double>& pmf) {
    std::vector<long double> tail(pmf.size() + 1, 0.0L);
    for (std::size_t t = pmf.size(); t-- > 0;) tail[t] = tail[t + 1] + pmf[t];
    return tail;
}

// P(S_n >= j) from the tail table; j any integer.
long double tail_at(const std::vector<long double>& tail, int n, int j) {
    if (j <= -n) return 1.0L;
    if (j > n) return 0.0L;
    return tail[static_cast<std::size_t>((j + n + 1) / 2)];
}

std::vector<BigInt> binom_row(int n) {
    std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
    c[0] = 1;
    for (int t = 0; t < n; ++t)
        c[static_cast<std::size_t>(t) + 1] = c[static_cast<std::size_t>(t)] * (n - t) / (t + 1);
    return c;
}

// number of walks with S_n >= j
BigInt tail_count(const std::vector<BigInt>& row, int n, int j) {
    if (j <= -n) return BigInt(1) << n;
    if (j > n) return 0;
    BigInt acc = 0;
    for (int t = (j + n + 1) / 2; t <= n; ++t) acc += row[static_cast<std::size_t>(t)];
    return acc;
}

}  // namespace

long double ExactProb::value() const {
    return std::ldexp(num.convert_to<long double>(), -denom_log2);
}

double reflection_F(double m, double b) {
    if (!(m >= 0.0) || !(b <= m)) throw std::domain_error("reflection_F: need m >= 0, b <= m");
    return static_cast<double>(phibar(2.0L * m - b));
}

ExactProb reflection_Fn(int i, int j, int n) {
    if (n < 1 || n % 2 != 0) throw std::domain_error("reflection_Fn: n must be a positive even integer");
    if (i < 0 || j > i) throw std::domain_error("reflection_Fn: need i >= 0, j <= i");
    if (j % 2 != 0) throw std::domain_error("reflection_Fn: j must be even");
    const auto row = binom_row(n);
    return ExactProb{tail_count(row, n, 2 * i - j), n};
}

DiscreteDistribution exact_law(int n) {
    if (n < 2 || n % 2 != 0 || n > 10000)
        throw std::domain_error("exact_law: n must be even, 2 <= n <= 10^4");

    const auto pmf = walk_pmf(n);
    const auto tail = walk_tail(pmf);
    auto pm = [&](int j) {  // P(S_n = j)
        if (j < -n || j > n || (j + n) % 2 != 0) return 0.0L;
        return pmf[static_cast<std::size_t>((j + n) / 2)];
    };

    // P(V < l) = T(0) + T(2) - 2 T(2l) - (2l - 1) P(S_n = 2l), V = max - S_n/2.
    // The telescoped reflection double sum has 2l - 1 copies of the P(S_n = 2l)
    // block (i = 0..2l-2); verified exhaustively against dp_oracle.
    auto cdf_below = [&](int l) {
        return tail_at(tail, n, 0) + tail_at(tail, n, 2) - 2.0L * tail_at(tail, n, 2 * l) -
               (2.0L * l - 1.0L) * pm(2 * l);
    };

    const int lmax = n / 2;
    DiscreteDistribution out;
    const long double sqrt_n = std::sqrt(static_cast<long double>(n));
    long double prev = 0.0L;
    for (int l = 0; l <= lmax; ++l) {
        const long double next = cdf_below(l + 1);
        long double w = next - prev;
        if (w < 0.0L && w > -1e-18L) w = 0.0L;
        out.atoms.push_back(l / sqrt_n);
        out.masses.push_back(w);
        out.atom_keys.push_back(2 * l);
        prev = next;
    }

    if (n <= 64) {
        const auto row = binom_row(n);
        auto count_ge = [&](int j) { return tail_count(row, n, j); };
        auto count_eq = [&](int j) -> BigInt {
            if (j < -n || j > n || (j + n) % 2 != 0) return 0;
            return row[static_cast<std::size_t>((j + n) / 2)];
        };
        out.denom_log2 = n;
        BigInt prev_num = 0;
        for (int l = 0; l <= lmax; ++l) {
            const int lp = l + 1;
            BigInt next_num =
                count_ge(0) + count_ge(2) - 2 * count_ge(2 * lp) - (2 * lp - 1) * count_eq(2 * lp);
            out.mass_num.push_back(next_num - prev_num);
            prev_num = next_num;
        }
    }
    return out;
}

DiscreteDistribution dp_oracle(int n) {
    if (n < 1 || n > 2000) throw std::domain_error("dp_oracle: need 1 <= n <= 2000");

    // joint law of (running max, walk value) by forward DP; key = 2*max - S_n
    auto run = [&](auto zero, auto one) {
        using Count = decltype(zero);
        const int width = 2 * n + 1;  // s + n in [0, 2n]
        std::vector<Count> cur(static_cast<std::size_t>(n + 1) * width, zero);
        std::vector<Count> nxt(cur.size(), zero);
        auto at = [width](std::vector<Count>& buf, int mx, int s) -> Count& {
            return buf[static_cast<std::size_t>(mx) * width + (s + width / 2)];
        };
        at(cur, 0, 0) = one;
        for (int j = 0; j < n; ++j) {
            for (int mx = 0; mx <= j; ++mx) {
                for (int s = -j; s <= mx; s += 2) {  // s has the parity of j
                    Count& c = at(cur, mx, s);
                    if (c == zero) continue;
                    at(nxt, mx, s - 1) += c;
                    const int ns = s + 1;
                    at(nxt, ns > mx ? ns : mx, ns) += c;
                    c = zero;
                }
            }
            std::swap(cur, nxt);
        }
        std::vector<Count> by_key(static_cast<std::size_t>(2 * n) + 1, zero);
        for (int mx = 0; mx <= n; ++mx)
            for (int s = -n; s <= mx; s += 2) {  // s has the parity of n
                const Count& c = at(cur, mx, s);
                if (c == zero) continue;
                by_key[static_cast<std::size_t>(2 * mx - s)] += c;
            }
        return by_key;
    };

    DiscreteDistribution out;
    const long double sqrt_n = std::sqrt(static_cast<long double>(n));
    if (n <= 64) {
        auto by_key = run(BigInt(0), BigInt(1));
        out.denom_log2 = n;
        const long double scale = std::ldexp(1.0L, -n);
        for (int key = 0; key <= 2 * n; ++key) {
            const BigInt& c = by_key[static_cast<std::size_t>(key)];
            if (c == 0) continue;
            out.atoms.push_back(key / (2.0L * sqrt_n));
            out.masses.push_back(c.convert_to<long double>() * scale);
            out.atom_keys.push_back(key);
            out.mass_num.push_back(c);
        }
    } else {
        auto by_key = run(0.0L, std::ldexp(1.0L, -n));
        for (int key = 0; key <= 2 * n; ++key) {
            const long double c = by_key[static_cast<std::size_t>(key)];
            if (c == 0.0L) continue;
            out.atoms.push_back(key / (2.0L * sqrt_n));
            out.masses.push_back(c);
            out.atom_keys.push_back(key);
        }
    }
    return out;
}

long double limit_cdf(long double x) {
    if (x <= 0.0L) return 0.0L;
    return 1.0L - std::erfc(x * std::sqrt(2.0L)) -
           (4.0L * x / kSqrt2Pi) * std::exp(-2.0L * x * x);
}

long double limit_density(long double x) {
    if (x < 0.0L) return 0.0L;
    return (16.0L * x * x / kSqrt2Pi) * std::exp(-2.0L * x * x);
}

long double kolmogorov_distance(int n) {
    const auto law = exact_law(n);
    long double sup = 0.0L;
    long double cum = 0.0L;
    for (std::size_t i = 0; i < law.atoms.size(); ++i) {
        const long double f = limit_cdf(law.atoms[i]);
        sup = std::max(sup, std::fabs(cum - f));  // left limit of the step CDF
        cum += law.masses[i];
        sup = std::max(sup, std::fabs(cum - f));
    }
    return sup;
}

long double berry_esseen_check(int n) {
    if (n < 1) throw std::domain_error("berry_esseen_check: n >= 1");
    const auto pmf = walk_pmf(n);
    const auto tail = walk_tail(pmf);
    const long double sqrt_n = std::sqrt(static_cast<long double>(n));
    long double sup = 0.0L;
    // Phibar_n is constant on ((j-2)/sqrt(n), j/sqrt(n)]; compare both limits
    for (int j = -n; j <= n; j += 2) {
        const long double v = tail_at(tail, n, j);
        sup = std::max(sup, std::fabs(phibar(j / sqrt_n) - v));
        sup = std::max(sup, std::fabs(phibar((j - 2) / sqrt_n) - v));
    }
    if (!(sup <= 0.7975L / sqrt_n))
        throw std::logic_error("berry_esseen_check: 0.7975/sqrt(n) bound violated");
    return sup;
}

namespace {

FellerLocal feller_from_prob(int n, int l, long double prob) {
    const long double nn = n;
    const long double ll = l;
    FellerLocal out;
    out.prob = prob;
    out.epsilon_n = std::log(prob * (std::sqrt(nn) * kSqrt2Pi / 2.0L)) + 2.0L * ll * ll / nn;
    out.lower = -3.0L * ll * ll / (nn * nn) - 1.0L / (4.0L * nn) - 1.0L / (360.0L * nn * nn * nn);
    out.upper = 2.0L * ll * ll * ll * ll / (nn * nn * nn) - 1.0L / (4.0L * nn) +
                1.0L / (20.0L * nn * nn * nn);
    out.within_brackets = out.lower <= out.epsilon_n && out.epsilon_n <= out.upper;
    return out;
}

}  // namespace

FellerLocal feller_local(int n, int l) {
    if (n < 2 || n % 2 != 0) throw std::domain_error("feller_local: n must be even");
    if (l < 0 || 6 * l >= n) throw std::domain_error("feller_local: need 0 <= l < n/6");
    const auto row = binom_row(n);
    const ExactProb p{row[static_cast<std::size_t>(n / 2 + l)], n};
    return feller_from_prob(n, l, p.value());
}

std::vector<FellerLocal> feller_local_sweep(int n) {
    if (n < 2 || n % 2 != 0) throw std::domain_error("feller_local_sweep: n must be even");
    const auto row = binom_row(n);
    std::vector<FellerLocal> out;
    for (int l = 0; 6 * l < n; ++l) {
        const ExactProb p{row[static_cast<std::size_t>(n / 2 + l)], n};
        out.push_back(feller_from_prob(n, l, p.value()));
    }
    return out;
}

long double lemma52_sup(int n) {
    if (n < 2 || n % 2 != 0) throw std::domain_error("lemma52_sup: n must be even");
    const auto pmf = walk_pmf(n);
    auto pm = [&](int j) {  // P(S_n = j)
        if (j < -n || j > n || (j + n) % 2 != 0) return 0.0L;
        return pmf[static_cast<std::size_t>((j + n) / 2)];
    };
    auto cont = [](long double x) { return (4.0L * x / kSqrt2Pi) * std::exp(-2.0L * x * x); };
    const long double sqrt_n = std::sqrt(static_cast<long double>(n));
    long double sup = 0.0L;
    // discrete term constant on [l/sqrt(n), (l+1)/sqrt(n)); continuous term
    // unimodal with interior maximizer x = 1/2
    for (int l = 0; l <= n / 2 + 1; ++l) {
        const long double disc = (2.0L * l - 2.0L) * pm(2 * l);
        const long double x_lo = l / sqrt_n;
        const long double x_hi = (l + 1) / sqrt_n;
        sup = std::max(sup, std::fabs(cont(x_lo) - disc));
        sup = std::max(sup, std::fabs(cont(x_hi) - disc));
        if (x_lo < 0.5L && 0.5L < x_hi) sup = std::max(sup, std::fabs(cont(0.5L) - disc));
    }
    if (!(sup <= 21.0L / sqrt_n))
        throw std::logic_error("lemma52_sup: 21/sqrt(n) bound violated");
    return sup;
}

BinarySweepRow binary_sweep_row(int n) {
    BinarySweepRow row;
    row.n = n;
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    row.ks_exact = static_cast<double>(kolmogorov_distance(n));
    row.bound24 = 24.0 / sqrt_n;
    row.be_sup = static_cast<double>(berry_esseen_check(n));
    row.l52_sup = static_cast<double>(lemma52_sup(n));
    row.bound21 = 21.0 / sqrt_n;
    return row;
}

}  // namespace lislim::binary
