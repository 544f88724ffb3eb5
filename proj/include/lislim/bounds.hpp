#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lislim/alphabet.hpp"

namespace lislim::bounds {

// One bound-verification result row (CSV/JSON schema: name, params, bound,
// observed, holds).
struct BoundReport {
    std::string name;
    std::string params;
    double bound = 0.0;
    std::optional<double> observed;
    bool holds = true;
};

// Sup-density bound for H_k:
// 2^{k^2/2} (k/(k-1))^{k^2} (k-1) (2 pi k^5 / e)^{k/2} sqrt(2e)/(4 pi), k >= 2.
double prop31_bound(int k);

// Sup-density bound for J_k: min of the Gaussian branch
// sqrt(k / (2 pi (1 - k p_max))) and prop31_bound(k) for 2 <= k <= m-1;
// exactly 1/sqrt(2 pi (1 - p_max)) for k = 1; prop31_bound(m) for k = m
// (the Gaussian branch is then infinite).
double prop32_bound(int k, double p_max, int m);

// The Kolmogorov-rate bound c (m-1) [ (m-1)^2 sigma_max^2 + min-branch ]
// log(n)/sqrt(n); the absolute constant c is caller-supplied.
double thm41_bound(int n, int m, int k, double p_max, double sigma_max, double c);

// min(2^{k^2/2}/sqrt(p_max), sqrt(k/(p_max (1 - k p_max)))) with the k = 1
// and k p_max >= 1 conventions of the rate theorem.
double thm41_min_branch(int k, double p_max);
// true when the 2^{k^2/2} branch attains the minimum, i.e.
// p_max >= (2^{k^2} - k) / (k 2^{k^2}).
bool thm41_min_uses_exponential_branch(int k, double p_max);

// Coupling tail bound (1 + (m-1)^2 sigma_max^2) eps/2 +
// exp(-xi eps sqrt(n)/(16(m-1))) sum_r (1 + sigma_r sqrt(n)/(1 - |mu_r|)).
double lemma43_bound(int n, const AlphabetDistribution& d, double eps, double xi);

// lambda_r = sigma_r sup{ lambda : lambda E|Z - mu|^3 e^{lambda |Z - mu|} <= Var Z },
// solved numerically; satisfies sigma_r/4 <= lambda_r <= sigma_r/(1 - |mu_r|).
double sakhanenko_lambda(const AlphabetDistribution& d, int r);

// Brownian modulus tail bound 4 (m-1) n exp(-eps^2 n / (8 sigma_max^2 (m-1)^2)).
double lemma44_bound(int n, int m, double sigma_max, double eps);

// Stieltjes electrostatic inequality (1/2) sum x^2 - sum_{i<j} log|x_i - x_j|
// >= (1/4) k(k-1)(1 + log 2) - (1/2) sum i log i; coincident points give an
// infinite left side and count as true.
bool stieltjes_check(const std::vector<double>& points);

// sum_{i=1}^{k-1} log i! = k log (k-1)! - sum_{i=1}^{k-1} i log i, to 1e-10,
// plus the Stirling sandwich for n = 1..200.
bool factorial_identity_check(int k);

// Stirling sandwich at a single n.
bool stirling_sandwich_holds(int n);

}  // namespace lislim::bounds
