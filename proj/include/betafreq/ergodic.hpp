#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "betafreq/field.hpp"
#include "betafreq/rational.hpp"
#include "betafreq/words.hpp"

namespace betafreq {

/**
 * The absolutely continuous invariant measure of the greedy map
 * T(x) = beta x (mod the digit), with density
 *
 *     rho(x) = C * sum_i beta^-i * 1[0, T^i(1)](x).
 *
 * For a multinacci base the orbit of 1 is finite: T^i(1) = beta^i -
 * beta^{i-1} - ... - 1 for i < n, T^{n-1}(1) = 1/beta and T^n(1) = 0, so
 * the density is a staircase over the orbit points, computed exactly in
 * Q(beta); the normalizer and both plateau constants are recomputed rather
 * than hard-coded.
 */
struct ParryMeasure {
    BetaParams params;
    std::vector<FieldElement> orbit;      // T^0(1) = 1 down to T^{n-1}(1) = 1/beta
    std::vector<FieldElement> densities;  // density on [orbit[i+1], orbit[i]), last on [0, 1/beta)
    FieldElement normalizer;              // C, with integral exactly 1
};

ParryMeasure parry_measure(const BetaParams& params);

/// mu([a, b]) for 0 <= a <= b <= 1/(beta-1), exact.
FieldElement parry_measure_of_interval(const ParryMeasure& mu, const FieldElement& a,
                                       const FieldElement& b);

/// mu([1/beta, 1]): the Lebesgue-typical frequency of digit 1. Equals
/// 1/(beta^2+1) for the golden mean.
FieldElement parry_digit_one_frequency(const BetaParams& params);

/**
 * One greedy step: digit 0 and beta*x on [0, 1/beta), digit 1 and beta*x-1
 * on [1/beta, 1/(beta-1)]; the branch point itself takes the upper branch.
 * Exact; throws std::domain_error when x is outside the attractor.
 */
std::pair<Bit, FieldElement> greedy_step(const FieldElement& x, const BetaParams& params);

/// First `length` greedy digits of x; the partial sums satisfy
/// |x - sum| <= beta^-length / (beta - 1) exactly.
BitWord greedy_expand(const FieldElement& x, std::size_t length, const BetaParams& params);

/**
 * Monte Carlo digit-frequency estimate with its references carried exactly.
 * stderr_ is the standard error over trials; seed makes runs reproducible
 * and is echoed so reports can be regenerated.
 */
struct FrequencyReport {
    double estimate = 0;
    double stderr_ = 0;
    std::int64_t length = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    int beta_order = 2;
    double reference_parry = 0;                  // exact alpha(1), rounded for display
    std::string reference_parry_exact;           // coefficient form in Q(beta)
    std::optional<Rat> reference_bernoulli;      // exact rational when available
};

/**
 * Frequency of digit 1 in normalized fair-coin words. Each trial draws
 * `length` coin flips, normalizes, and counts ones before the final raw
 * separator (digits after it are still provisional; the truncation bias is
 * O(1/length)). Deterministic for a fixed seed, independent of threads.
 */
FrequencyReport mc_frequency_bernoulli(std::int64_t length, int trials, std::uint64_t seed,
                                       const BetaParams& params, int threads = 1);

/**
 * Frequency of digit 1 in greedy expansions of Lebesgue-random starting
 * points. The orbit is iterated in double precision: each step incurs a
 * ~2^-53 relative perturbation, so the computed word is a pseudo-orbit
 * shadowed by a true orbit of a nearby point, which is what the frequency
 * statistic needs; exact dyadic-to-Q(beta) expansion stays available via
 * greedy_expand for moderate lengths and is cross-checked in tests.
 */
FrequencyReport mc_frequency_lebesgue(std::int64_t length, int trials, std::uint64_t seed,
                                      const BetaParams& params, int threads = 1);

namespace detail {

/// SplitMix64 keyed by (seed, stream, counter): a counter-based generator,
/// splittable across trials with no shared state. The stream id goes
/// through the avalanche mix before entering the key: raw xor keying makes
/// nearby streams walk the same splitmix orbit a few steps apart, which
/// silently correlates trials.
struct CounterRng {
    std::uint64_t key;
    std::uint64_t counter = 0;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key(mix(mix(seed + 0x9E3779B97F4A7C15ULL) ^ stream)) {}

    std::uint64_t next() { return mix(key + (++counter) * 0x9E3779B97F4A7C15ULL); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace detail
}  // namespace betafreq
