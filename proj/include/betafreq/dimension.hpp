#pragma once

#include <string>
#include <vector>

#include "betafreq/field.hpp"
#include "betafreq/rational.hpp"

namespace betafreq {

/**
 * Hausdorff dimension of the set of points whose greedy expansion has digit
 * 1 with a prescribed frequency gamma: maximal metric entropy over
 * stationary Markov measures on the admissibility graph (states = current
 * 1-run length, runs capped at order-1) subject to the frequency
 * constraint, divided by the Lyapunov exponent log beta. Natural logs
 * throughout; the ratio is base-free.
 */
struct DimensionResult {
    Rat gamma = 0;
    double max_entropy = 0;  // nats
    double lyapunov = 0;     // log beta
    double dimension = 0;    // max_entropy / lyapunov
    std::vector<double> transitions;  // maximizing P(emit 1 | run r), r = 0..order-2
};

/// Largest digit-1 frequency the subshift supports: (n-1)/n, attained by
/// the periodic word (1^(n-1) 0)^inf.
Rat max_digit_frequency(const BetaParams& params);

/**
 * Constrained entropy maximization via convex duality: the tilted transfer
 * operator with weight z = e^lambda on 1-edges has spectral radius rho(z),
 * and h(gamma) = inf_lambda (log rho - lambda gamma). The infimum is found
 * by monotone bisection on the tilted frequency d log rho / d lambda. For
 * order 2 this reproduces the closed form (1-g) H(g/(1-g)) which tests pin
 * independently. Throws std::domain_error for gamma outside
 * [0, max_digit_frequency].
 */
DimensionResult dim_A_gamma(const Rat& gamma, const BetaParams& params, double tol = 1e-10);

/// Entropy (nats) and digit-1 frequency of the stationary Markov chain with
/// the given 1-emission probabilities; used for stationarity checks.
double markov_entropy(const std::vector<double>& p);
double markov_frequency(const std::vector<double>& p);

/**
 * The singularity certificate: the exact Bernoulli digit frequency, the
 * exact Lebesgue-typical frequency alpha(1), an exact strict-separation
 * verdict, and the resulting dimension bound < 1 for the level set at the
 * Bernoulli frequency.
 */
struct SingularityCertificate {
    int order = 2;
    Rat bernoulli_exact = 0;              // closed-form stationary frequency
    Rat bernoulli_lower = 0;              // independent blockwise interval
    Rat bernoulli_upper = 1;
    FieldElement alpha1;
    double alpha1_value = 0;
    bool separated = false;          // exact rational-vs-Q(beta) comparison
    int separation_sign = 0;         // sign of (bernoulli - alpha1)
    bool interval_separated = false; // the blockwise interval avoids alpha1 too
    double dimension_bound = 0;      // dim at the Bernoulli frequency
    double dimension_bound_sup = 0;  // sup of dim over the interval endpoints
    std::string verdict;
};

/// omega_L controls the blockwise validation interval's truncation length.
SingularityCertificate singularity_certificate(const BetaParams& params, int omega_L = 48);

}  // namespace betafreq
