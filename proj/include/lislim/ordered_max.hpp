#pragma once

#include <limits>
#include <vector>

#include "lislim/alphabet.hpp"

namespace lislim {

// Maximum of sum_B V_B(i_B) over non-decreasing block indices 0 <= i_1 <=
// ... <= i_B <= T, where V_B(i) = sum of row(r, i) over the walks r tied
// into block B. Pinned blocks are forced to index 0 resp. T. One prefix-max
// pass per block, O(total walks * T).
template <class RowValue>
double constrained_ordered_max(int T, const std::vector<ConstraintBlock>& blocks,
                               RowValue&& row) {
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> f(static_cast<std::size_t>(T) + 1, 0.0);

    for (const auto& b : blocks) {
        auto value_at = [&](int i) {
            double v = 0.0;
            for (int r = b.lo; r <= b.hi; ++r) v += row(r, i);
            return v;
        };
        if (b.pin_start) {
            const double c = f[0] + value_at(0);
            std::fill(f.begin(), f.end(), c);
        } else if (b.pin_end) {
            const double c = f[static_cast<std::size_t>(T)] + value_at(T);
            std::fill(f.begin(), f.end(), neg_inf);
            f[static_cast<std::size_t>(T)] = c;
        } else {
            double running = neg_inf;
            for (int i = 0; i <= T; ++i) {
                const double cand = f[static_cast<std::size_t>(i)] + value_at(i);
                if (cand > running) running = cand;
                f[static_cast<std::size_t>(i)] = running;
            }
        }
    }
    return f[static_cast<std::size_t>(T)];
}

}  // namespace lislim
