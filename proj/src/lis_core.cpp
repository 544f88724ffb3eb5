#include "lislim/lis_core.hpp"

#include <cmath>
#include <stdexcept>

#include "lislim/ordered_max.hpp"

namespace lislim {

namespace {

std::vector<double> cumulative(const AlphabetDistribution& d) {
    std::vector<double> cdf(static_cast<std::size_t>(d.m()));
    double acc = 0.0;
    for (int r = 0; r < d.m(); ++r) {
        acc += d.p[r];
        cdf[static_cast<std::size_t>(r)] = acc;
    }
    cdf.back() = 1.0;
    return cdf;
}

}  // namespace

Word sample_word(const AlphabetDistribution& d, int n, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_word: n must be >= 1");
    const auto cdf = cumulative(d);
    Word w;
    w.symbols.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        w.symbols[static_cast<std::size_t>(i)] = rng.discrete(cdf) + 1;
    return w;
}

Word sample_word(const AlphabetDistribution& d, int n, std::uint64_t seed) {
    RandomStream rng(seed);
    return sample_word(d, n, rng);
}

std::string to_debug_string(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.symbols.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(w.symbols[i]);
    }
    return out;
}

int lis_dp(const Word& w, int m) {
    // best[s] = longest weakly increasing subsequence ending in a symbol <= s+1
    std::vector<int> best(static_cast<std::size_t>(m), 0);
    for (const auto sym : w.symbols) {
        if (sym < 1 || sym > m) throw std::invalid_argument("lis_dp: symbol out of range");
        const int a = sym - 1;
        int pre = 0;
        for (int s = 0; s <= a; ++s) pre = std::max(pre, best[static_cast<std::size_t>(s)]);
        best[static_cast<std::size_t>(a)] = pre + 1;
    }
    int out = 0;
    for (const int v : best) out = std::max(out, v);
    return out;
}

int lis_breakpoints(const Word& w, int m) {
    const int n = w.n();
    // f[r] after scanning prefix j: best value of sum_{s<=r} counts with j_r = j,
    // updated incrementally; g[r] = max over j' <= j of (f[r-1](j') - N^r_{j'}).
    // Equivalent single pass: A_r(j) = N^r_j + max_{j'<=j} (A_{r-1}(j') - N^r_{j'}).
    std::vector<std::vector<int>> count(static_cast<std::size_t>(m + 1),
                                        std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
    for (int j = 1; j <= n; ++j) {
        const int sym = w.symbols[static_cast<std::size_t>(j - 1)];
        if (sym < 1 || sym > m) throw std::invalid_argument("lis_breakpoints: symbol out of range");
        for (int r = 1; r <= m; ++r)
            count[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                count[static_cast<std::size_t>(r)][static_cast<std::size_t>(j - 1)] + (sym == r ? 1 : 0);
    }
    std::vector<int> prev(static_cast<std::size_t>(n) + 1, 0);  // A_{r-1}
    std::vector<int> cur(static_cast<std::size_t>(n) + 1, 0);
    for (int r = 1; r <= m; ++r) {
        const auto& N = count[static_cast<std::size_t>(r)];
        int best = std::numeric_limits<int>::min();
        for (int j = 0; j <= n; ++j) {
            best = std::max(best, prev[static_cast<std::size_t>(j)] - N[static_cast<std::size_t>(j)]);
            cur[static_cast<std::size_t>(j)] = N[static_cast<std::size_t>(j)] + best;
        }
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(n)];
}

int sample_lis(const AlphabetDistribution& d, int n, RandomStream& rng) {
    const auto cdf = cumulative(d);
    const int m = d.m();
    std::vector<int> best(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < n; ++i) {
        const int a = rng.discrete(cdf);
        int pre = 0;
        for (int s = 0; s <= a; ++s) pre = std::max(pre, best[static_cast<std::size_t>(s)]);
        best[static_cast<std::size_t>(a)] = pre + 1;
    }
    int out = 0;
    for (const int v : best) out = std::max(out, v);
    return out;
}

WalkDecomposition walk_decomposition(const Word& w, const AlphabetDistribution& d) {
    const int m = d.m();
    const int n = w.n();
    for (const auto sym : w.symbols)
        if (sym < 1 || sym > m)
            throw std::invalid_argument("walk_decomposition: word does not match alphabet size");

    // W^r_j = sigma_r * S~^r_j = N^r_j - N^{r+1}_j - j mu_r
    Mat walk(m - 1, n + 1);
    {
        std::vector<int> diff(static_cast<std::size_t>(m - 1), 0);
        for (int r = 1; r <= m - 1; ++r) walk(r - 1, 0) = 0.0;
        for (int j = 1; j <= n; ++j) {
            const int sym = w.symbols[static_cast<std::size_t>(j - 1)];
            if (sym <= m - 1) diff[static_cast<std::size_t>(sym - 1)] += 1;
            if (sym >= 2 && sym - 2 <= m - 2) diff[static_cast<std::size_t>(sym - 2)] -= 1;
            for (int r = 1; r <= m - 1; ++r)
                walk(r - 1, j) = diff[static_cast<std::size_t>(r - 1)] - j * d.mu[r - 1];
        }
    }

    const double sqrt_n = std::sqrt(static_cast<double>(n));
    WalkDecomposition out;
    out.L_n = (lis_dp(w, m) - n * d.p_max) / sqrt_n;
    double drift = 0.0;
    for (int r = 1; r <= m - 1; ++r) drift += r * walk(r - 1, n);
    out.drift_term = -drift / (m * sqrt_n);
    const auto blocks = constraint_blocks(d);
    out.max_term =
        constrained_ordered_max(n, blocks, [&](int r, int j) { return walk(r - 1, j); }) / sqrt_n;
    out.E_n = out.L_n - out.drift_term - out.max_term;
    return out;
}

}  // namespace lislim
