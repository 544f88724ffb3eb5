#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace lislim::binary {

using BigInt = boost::multiprecision::cpp_int;

// Dyadic probability: num / 2^denom_log2.
struct ExactProb {
    BigInt num;
    int denom_log2 = 0;
    long double value() const;
};

// Finite support law. Atoms of exact_law / dp_oracle are the values of
// (max_k S_k - S_n/2) / sqrt(n); atom_keys holds the integer 2*(max - S_n/2)
// so laws for different n can be compared without touching floats. Exact
// dyadic masses (denominator 2^n) are kept when n <= 64.
struct DiscreteDistribution {
    std::vector<long double> atoms;   // strictly increasing
    std::vector<long double> masses;  // positive, sum 1 (within 1e-14)
    std::vector<int> atom_keys;
    std::vector<BigInt> mass_num;     // empty unless exact
    int denom_log2 = -1;              // -1: no exact masses
    bool has_exact() const { return denom_log2 >= 0; }
};

// Continuous joint tail P(max_{[0,1]} B >= m, B(1) <= b) = Phibar(2m - b),
// by the reflection principle; requires m >= 0, b <= m.
double reflection_F(double m, double b);

// Exact discrete analogue P(max_k S_k >= i, S_n <= j) = P(S_n >= 2i - j)
// for the simple symmetric walk; requires i >= 0, j <= i, j even, n even.
ExactProb reflection_Fn(int i, int j, int n);

// Law of (max_k S_k - S_n/2)/sqrt(n) for even n, assembled from the
// reflection-principle closed form; exact dyadic masses for n <= 64.
DiscreteDistribution exact_law(int n);

// Same law by dynamic programming over (position, walk value, running max);
// handles odd n as well. Exact path-count arithmetic for n <= 64, extended
// precision beyond (n <= 2000).
DiscreteDistribution dp_oracle(int n);

// Limit law of max B - B(1)/2: CDF 1 - 2 Phibar(2x) - (4x/sqrt(2 pi)) e^{-2x^2}
// and density (16 x^2/sqrt(2 pi)) e^{-2x^2} on x >= 0.
long double limit_cdf(long double x);
long double limit_density(long double x);

// Exact Kolmogorov distance between the law of (LI_n - n/2)/sqrt(n) and the
// limit law, evaluating both one-sided limits at every atom. Even n.
long double kolmogorov_distance(int n);

// Exact sup_z |Phibar(z) - Phibar_n(z)| for the symmetric +-1 walk; asserts
// the 0.7975/sqrt(n) Berry-Esseen bound.
long double berry_esseen_check(int n);

struct FellerLocal {
    long double prob;       // P(S_n = 2l), exact binomial
    long double epsilon_n;  // log correction to the local limit approximation
    long double lower, upper;
    bool within_brackets;   // epsilon_n inside [lower, upper]
};

// Local limit correction epsilon_n = log[P(S_n = 2l) * (sqrt(n) sqrt(2 pi)/2)
// * e^{2 l^2 / n}] together with the bracket values
// -3l^2/n^2 - 1/(4n) - 1/(360 n^3) and 2l^4/n^3 - 1/(4n) + 1/(20 n^3).
// The brackets hold at l = 0 but are exactly falsified for most l >= 1
// (epsilon_n picks up a +2l^2/n^2 contribution the upper bracket lacks, and
// the lower bracket misses the -(4/3) l^4/n^3 decay near l ~ n/6), so the
// result carries a flag instead of asserting. Requires even n, 0 <= l < n/6.
FellerLocal feller_local(int n, int l);

// All l = 0 .. ceil(n/6)-1 at once, sharing one binomial row.
std::vector<FellerLocal> feller_local_sweep(int n);

// Exact sup over x >= 0 of |(4x/sqrt(2 pi)) e^{-2x^2} -
// (2 floor(x sqrt n) - 2) P(S_n = 2 floor(x sqrt n))|, reduced to the
// breakpoint grid plus the interior maximizer; asserts the 21/sqrt(n) bound.
long double lemma52_sup(int n);

// One row of the binary sweep CSV.
struct BinarySweepRow {
    int n = 0;
    double ks_exact = 0.0;
    double bound24 = 0.0;
    double be_sup = 0.0;
    double l52_sup = 0.0;
    double bound21 = 0.0;
};

BinarySweepRow binary_sweep_row(int n);

}  // namespace lislim::binary
