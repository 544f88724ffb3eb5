#pragma once

// Test-only reference implementations, deliberately independent of the
// library code paths they check.

#include <algorithm>
#include <functional>
#include <limits>
#include <vector>

#include "lislim/alphabet.hpp"
#include "lislim/lis_core.hpp"

namespace oracles {

// Longest weakly increasing subsequence by exhaustive subset enumeration.
inline int lis_exhaustive(const lislim::Word& w) {
    const int n = w.n();
    int best = 0;
    for (long mask = 1; mask < (1L << n); ++mask) {
        int prev = 0, len = 0;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (!((mask >> i) & 1)) continue;
            if (w.symbols[static_cast<std::size_t>(i)] < prev) ok = false;
            prev = w.symbols[static_cast<std::size_t>(i)];
            ++len;
        }
        if (ok) best = std::max(best, len);
    }
    return best;
}

// Constrained ordered max by full enumeration of block index tuples.
inline double ordered_max_exhaustive(int T, const std::vector<lislim::ConstraintBlock>& blocks,
                                     const std::function<double(int, int)>& row) {
    double best = -std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, int, double)> rec = [&](std::size_t b, int lo, double acc) {
        if (b == blocks.size()) {
            best = std::max(best, acc);
            return;
        }
        const auto& blk = blocks[b];
        int from = lo, to = T;
        if (blk.pin_start) from = to = 0;
        if (blk.pin_end) from = to = T;
        for (int i = from; i <= to; ++i) {
            if (i < lo) return;  // pinned index below the running floor
            double v = 0.0;
            for (int r = blk.lo; r <= blk.hi; ++r) v += row(r, i);
            rec(b + 1, i, acc + v);
        }
    };
    rec(0, 0, 0.0);
    return best;
}

// All words of length n over m symbols, as a callback.
inline void for_each_word(int m, int n, const std::function<void(const lislim::Word&)>& fn) {
    lislim::Word w;
    w.symbols.assign(static_cast<std::size_t>(n), 1);
    long total = 1;
    for (int i = 0; i < n; ++i) total *= m;
    for (long code = 0; code < total; ++code) {
        long c = code;
        for (int i = 0; i < n; ++i) {
            w.symbols[static_cast<std::size_t>(i)] = static_cast<int>(c % m) + 1;
            c /= m;
        }
        fn(w);
    }
}

// 2*(max_k S_k - S_n/2) for the +-1 walk of a binary word (symbol 1 -> +1).
inline int binary_statistic_key(const lislim::Word& w) {
    int s = 0, mx = 0;
    for (const int sym : w.symbols) {
        s += (sym == 1) ? 1 : -1;
        mx = std::max(mx, s);
    }
    return 2 * mx - s;
}

inline lislim::Vec random_probability_vector(int m, lislim::RandomStream& rng) {
    lislim::Vec p(m);
    double sum = 0.0;
    for (int r = 0; r < m; ++r) {
        p[r] = 0.05 + rng.uniform01();
        sum += p[r];
    }
    return lislim::Vec(p / sum);
}

// Largest eigenvalue of an m x m traceless GUE drawn directly (diagonal
// N(0,1), off-diagonal re/im N(0,1/2), trace projected out). Exact in
// distribution; the grid-functional sampler is checked against this.
inline double traceless_gue_lambda_max(int m, lislim::RandomStream& rng) {
    Eigen::MatrixXcd y(m, m);
    for (int i = 0; i < m; ++i) {
        y(i, i) = std::complex<double>(rng.gaussian(), 0.0);
        for (int j = i + 1; j < m; ++j) {
            y(i, j) = std::complex<double>(rng.gaussian() * std::sqrt(0.5),
                                           rng.gaussian() * std::sqrt(0.5));
            y(j, i) = std::conj(y(i, j));
        }
    }
    const std::complex<double> shift = y.trace() / static_cast<double>(m);
    for (int i = 0; i < m; ++i) y(i, i) -= shift;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(y, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

}  // namespace oracles
