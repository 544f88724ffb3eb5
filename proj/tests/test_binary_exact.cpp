#include <doctest.h>

#include <cmath>
#include <map>

#include "lislim/binary_exact.hpp"
#include "lislim/lis_core.hpp"
#include "oracles.hpp"

using namespace lislim;
using namespace lislim::binary;

namespace {

// brute-force joint tail P(max_k S_k >= i, S_n <= j) over all 2^n walks
long count_walks_with(int n, int i, int j) {
    long count = 0;
    for (long code = 0; code < (1L << n); ++code) {
        int s = 0, mx = 0;
        for (int t = 0; t < n; ++t) {
            s += ((code >> t) & 1) ? 1 : -1;
            mx = std::max(mx, s);
        }
        if (mx >= i && s <= j) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("reflection_F basics") {
    CHECK(reflection_F(0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    const double phibar1 = 0.5 * std::erfc(1.0 / std::sqrt(2.0));
    CHECK(reflection_F(1.0, 1.0) == doctest::Approx(phibar1).epsilon(1e-14));
    CHECK_THROWS_AS(reflection_F(-0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(reflection_F(0.5, 1.0), std::domain_error);
}

TEST_CASE("reflection_Fn small cases and exhaustive check") {
    const auto f = reflection_Fn(1, 0, 2);
    CHECK(f.num == 1);
    CHECK(f.denom_log2 == 2);  // P(S_2 >= 2) = 1/4
    const auto g = reflection_Fn(0, 0, 2);
    CHECK(g.num == 3);  // P(S_2 >= 0) = 3/4

    for (int n = 2; n <= 12; n += 2) {
        for (int i = 0; i <= n; ++i) {
            for (int j = i - (i % 2 == 0 ? 0 : 1); j >= -n; j -= 2) {
                const auto fn = reflection_Fn(i, j, n);
                REQUIRE(fn.num == count_walks_with(n, i, j));
            }
        }
    }
    CHECK_THROWS_AS(reflection_Fn(1, 1, 2), std::domain_error);   // odd j
    CHECK_THROWS_AS(reflection_Fn(0, 2, 2), std::domain_error);   // j > i
    CHECK_THROWS_AS(reflection_Fn(1, 0, 3), std::domain_error);   // odd n
}

TEST_CASE("exact_law(2) matches the four-word enumeration") {
    const auto law = exact_law(2);
    REQUIRE(law.atoms.size() == 2);
    CHECK(law.atoms[0] == doctest::Approx(0.0));
    CHECK(law.atoms[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(law.mass_num[0] == 1);
    CHECK(law.mass_num[1] == 3);
    CHECK(law.denom_log2 == 2);
    CHECK(static_cast<double>(law.masses[0]) == doctest::Approx(0.25));
    CHECK(static_cast<double>(law.masses[1]) == doctest::Approx(0.75));
}

TEST_CASE("exact_law masses are exact dyadic rationals summing to 1 for n <= 64") {
    for (int n = 2; n <= 64; n += 2) {
        const auto law = exact_law(n);
        REQUIRE(law.has_exact());
        BigInt total = 0;
        for (const auto& w : law.mass_num) {
            REQUIRE(w >= 0);
            total += w;
        }
        REQUIRE(total == BigInt(1) << n);
    }
}

TEST_CASE("extended-precision masses: positive, increasing atoms, sum within 1e-14") {
    for (const int n : {500, 1000, 2000}) {
        const auto law = exact_law(n);
        long double total = 0.0L;
        for (std::size_t i = 0; i < law.masses.size(); ++i) {
            REQUIRE(law.masses[i] >= 0.0L);
            if (i) REQUIRE(law.atoms[i] > law.atoms[i - 1]);
            total += law.masses[i];
        }
        CHECK(std::fabs(static_cast<double>(total) - 1.0) <= 1e-14);
    }
}

TEST_CASE("dp_oracle small cases") {
    const auto one = dp_oracle(1);
    REQUIRE(one.atoms.size() == 1);
    CHECK(one.atoms[0] == doctest::Approx(0.5));  // point mass at 1/2
    CHECK(static_cast<double>(one.masses[0]) == doctest::Approx(1.0));

    const auto a = exact_law(2);
    const auto b = dp_oracle(2);
    CHECK(a.atom_keys == b.atom_keys);
    CHECK(a.mass_num == b.mass_num);
}

TEST_CASE("exact_law == dp_oracle exactly for even n <= 20") {
    for (int n = 2; n <= 20; n += 2) {
        const auto a = exact_law(n);
        const auto b = dp_oracle(n);
        REQUIRE(a.atom_keys == b.atom_keys);
        REQUIRE(a.mass_num == b.mass_num);
    }
}

TEST_CASE("dp_oracle extended-precision path agrees with the exact path") {
    const auto exact = dp_oracle(60);
    const auto law = exact_law(60);
    REQUIRE(exact.atoms.size() == law.atoms.size());
    for (std::size_t i = 0; i < law.atoms.size(); ++i)
        CHECK(static_cast<double>(exact.masses[i]) ==
              doctest::Approx(static_cast<double>(law.masses[i])).epsilon(1e-15));
    // n = 100 exercises the long-double branch; compare against exact_law
    const auto big = dp_oracle(100);
    const auto ref = exact_law(100);
    REQUIRE(big.atom_keys == ref.atom_keys);
    for (std::size_t i = 0; i < big.masses.size(); ++i)
        CHECK(static_cast<double>(big.masses[i]) ==
              doctest::Approx(static_cast<double>(ref.masses[i])).epsilon(1e-13));
}

TEST_CASE("word-level identity: law of LI_n - n/2 over all words equals dp_oracle") {
    for (int n = 2; n <= 12; ++n) {
        std::map<int, long> hist;  // key = 2 (LI - n/2) = 2 LI - n
        oracles::for_each_word(2, n, [&](const Word& w) { hist[2 * lis_dp(w, 2) - n]++; });
        const auto law = dp_oracle(n);
        REQUIRE(law.atom_keys.size() == hist.size());
        for (std::size_t i = 0; i < law.atom_keys.size(); ++i) {
            REQUIRE(hist.count(law.atom_keys[i]) == 1);
            if (n <= 64)
                REQUIRE(law.mass_num[i] == hist[law.atom_keys[i]]);
        }
    }
}

TEST_CASE("limit law: cdf, density, normalization, derivative") {
    CHECK(limit_cdf(0.0L) == 0.0L);
    CHECK(limit_cdf(-1.0L) == 0.0L);
    CHECK(static_cast<double>(limit_cdf(8.0L)) == doctest::Approx(1.0).epsilon(1e-14));

    // density integrates to 1 (Simpson on [0, 8])
    const int steps = 1 << 16;
    long double acc = 0.0L;
    const long double h = 8.0L / steps;
    for (int i = 0; i <= steps; ++i) {
        const long double w = (i == 0 || i == steps) ? 1.0L : (i % 2 == 1 ? 4.0L : 2.0L);
        acc += w * limit_density(i * h);
    }
    acc *= h / 3.0L;
    CHECK(static_cast<double>(acc) == doctest::Approx(1.0).epsilon(1e-10));

    // density is the derivative of the cdf
    for (const double x : {0.2, 0.5, 1.0, 1.7}) {
        const long double step = 1e-5L;
        const long double fd = (limit_cdf(x + step) - limit_cdf(x - step)) / (2.0L * step);
        CHECK(static_cast<double>(fd) ==
              doctest::Approx(static_cast<double>(limit_density(x))).epsilon(1e-6));
    }

    // sqrt(2) f_{H_2}(sqrt(2) x) with f_{H_2}(s) = (4/sqrt(pi)) s^2 e^{-s^2}
    for (const double x : {0.3, 0.8, 1.4}) {
        const double via_h2 = std::sqrt(2.0) * (4.0 / std::sqrt(M_PI)) * 2.0 * x * x *
                              std::exp(-2.0 * x * x);
        CHECK(static_cast<double>(limit_density(x)) == doctest::Approx(via_h2).epsilon(1e-13));
    }
}

TEST_CASE("kolmogorov distance: bound, decay, and atom-grid sufficiency") {
    long double prev_scaled = 0.0L;
    for (int n = 2; n <= 200; n += 2) {
        const long double d = kolmogorov_distance(n);
        CHECK(static_cast<double>(d) <= 24.0 / std::sqrt(static_cast<double>(n)));
        prev_scaled = std::max(prev_scaled, d * std::sqrt(static_cast<long double>(n)));
    }
    CHECK(static_cast<double>(prev_scaled) <= 24.0);
    CHECK(static_cast<double>(kolmogorov_distance(2000)) <
          static_cast<double>(kolmogorov_distance(10)));

    // dense-grid sup never exceeds the atom-evaluated sup
    const int n = 10;
    const auto law = exact_law(n);
    const long double atom_sup = kolmogorov_distance(n);
    long double dense_sup = 0.0L;
    for (int g = 0; g <= 100000; ++g) {
        const long double x = 2.5L * g / 100000.0L;
        long double cum = 0.0L;
        for (std::size_t i = 0; i < law.atoms.size(); ++i)
            if (law.atoms[i] <= x) cum += law.masses[i];
        dense_sup = std::max(dense_sup, std::fabs(cum - limit_cdf(x)));
    }
    CHECK(static_cast<double>(dense_sup) <= static_cast<double>(atom_sup) + 1e-12);
}

TEST_CASE("berry-esseen sup") {
    // n = 1: the sup sits at the jump z = -1: Phibar(-1) - 1/2
    const double expect = 0.5 * std::erfc(-1.0 / std::sqrt(2.0)) - 0.5;
    CHECK(static_cast<double>(berry_esseen_check(1)) == doctest::Approx(expect).epsilon(1e-12));
    for (int n = 1; n <= 100; ++n) {
        const long double sup = berry_esseen_check(n);  // throws if bound violated
        CHECK(static_cast<double>(sup) > 0.0);
    }
}

TEST_CASE("feller local limit") {
    const auto f = feller_local(100, 0);
    // P(S_100 = 0) = C(100,50) 2^-100
    CHECK(static_cast<double>(f.prob) == doctest::Approx(0.0795892373871787).epsilon(1e-12));
    CHECK(f.within_brackets);  // l = 0 sits inside, margin ~ 1/(120 n^3)
    CHECK(static_cast<double>(f.epsilon_n) ==
          doctest::Approx(-0.25 / 100 + 1.0 / 24e6).epsilon(1e-6));
    CHECK_THROWS_AS(feller_local(100, 17), std::domain_error);  // l >= n/6
    CHECK_THROWS_AS(feller_local(99, 0), std::domain_error);

    // the printed brackets are exactly falsified at l >= 1: epsilon_n carries
    // a +2 l^2/n^2 term the upper bracket lacks
    const auto g = feller_local(100, 1);
    CHECK_FALSE(g.within_brackets);
    CHECK(static_cast<double>(g.epsilon_n) == doctest::Approx(-0.0023025856).epsilon(1e-6));
    CHECK(static_cast<double>(g.upper) == doctest::Approx(-0.0024979500).epsilon(1e-6));
    CHECK(static_cast<double>(g.epsilon_n - g.upper) ==
          doctest::Approx(2.0 * 1.0 / 1e4).epsilon(0.15));

    const auto sweep = feller_local_sweep(300);
    CHECK(sweep.size() == 50);
    // eq:term0 at this n
    CHECK(0.5 * static_cast<double>(sweep[0].prob) <= 0.8 / std::sqrt(300.0));
}

TEST_CASE("lemma52 sup: bound, interior maximizer, dense-grid agreement") {
    for (int n = 2; n <= 200; n += 2) {
        const long double sup = lemma52_sup(n);  // throws if 21/sqrt(n) violated
        CHECK(static_cast<double>(sup) > 0.0);
    }

    // the continuous term alone peaks at x = 1/2 with value (2/sqrt(2pi)) e^{-1/2}
    auto cont = [](double x) { return (4.0 * x / std::sqrt(2.0 * M_PI)) * std::exp(-2.0 * x * x); };
    double grid_max = 0.0;
    for (int g = 0; g <= 200000; ++g) grid_max = std::max(grid_max, cont(3.0 * g / 200000.0));
    const double peak = (2.0 / std::sqrt(2.0 * M_PI)) * std::exp(-0.5);
    CHECK(grid_max == doctest::Approx(peak).epsilon(1e-9));

    // breakpoint-grid sup dominates a dense-grid sup
    for (const int n : {6, 20, 48}) {
        const long double sup = lemma52_sup(n);
        // exact P(S_n = 2l) from dyadic reflection tails, computed once
        std::vector<long double> pm(static_cast<std::size_t>(n / 2) + 2, 0.0L);
        for (int l = 0; l <= n / 2; ++l)
            pm[static_cast<std::size_t>(l)] =
                reflection_Fn(l, 0, n).value() - reflection_Fn(l + 1, 0, n).value();
        long double dense = 0.0L;
        const long double sqrt_n = std::sqrt(static_cast<long double>(n));
        for (int g = 0; g <= 100000; ++g) {
            const long double x = 5.0L * g / 100000.0L;
            const int l = static_cast<int>(x * sqrt_n);
            const long double mass =
                l <= n / 2 ? pm[static_cast<std::size_t>(l)] : 0.0L;
            const long double c = (4.0L * x / 2.50662827463100050242L) * std::exp(-2.0L * x * x);
            dense = std::max(dense, std::fabs(c - (2.0L * l - 2.0L) * mass));
        }
        CHECK(static_cast<double>(dense) <= static_cast<double>(sup) + 1e-12);
    }
}
