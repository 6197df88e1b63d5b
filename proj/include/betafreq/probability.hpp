#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "betafreq/normalize.hpp"
#include "betafreq/words.hpp"

namespace betafreq {

/**
 * Certified two-sided bound on a probability under the fair-coin measure.
 * lower counts cylinder mass on which the event surely holds, upper excludes
 * mass on which it surely fails, and undecided = upper - lower is the mass
 * of cylinders still open at the enumeration depth. All three are exact
 * rationals.
 */
struct ProbabilityBracket {
    Rat lower = 0;
    Rat upper = 1;
    Rat undecided = 1;
    int depth = 0;
    std::string event;

    bool contains(const Rat& p) const { return lower <= p && p <= upper; }
    Rat width() const { return upper - lower; }
};

/**
 * Predicate on k consecutive normalized digits. For future events the
 * digits are (y_1, ..., y_k); for past events the last k digits of the
 * normalized past, (y_{-k+1}, ..., y_0). The span is ordered left to right.
 */
struct DigitEvent {
    int arity = 1;
    std::function<bool(std::span<const Bit>)> pred;
    std::string name;
};

/// Builds the event "digit at offset i equals b for each constraint".
/// Offsets are 1-based positions for futures, 0-based non-positive
/// coordinates for pasts (0 = y_0, -1 = y_{-1}, ...).
DigitEvent future_event(const std::vector<std::pair<int, Bit>>& constraints);
DigitEvent past_event(const std::vector<std::pair<int, Bit>>& constraints);

/**
 * Probability that the first arity normalized digits of a random future
 * satisfy the event. Cylinders are decided by exact value bounds in
 * Q(beta): a digit is emitted once the whole cylinder's value interval lies
 * on one side of the relevant branch threshold, so the only cylinders left
 * open at depth d are the threshold-straddling spines of mass about 2^-d.
 * Throws std::invalid_argument if depth < 1 or depth < arity.
 */
ProbabilityBracket prob_future_digit(const DigitEvent& event, int depth,
                                     const BetaParams& params);

/**
 * Same for the last arity digits of the normalized past. A past window is
 * decided once the digits behind the leading 1-run of its normalization are
 * long enough to cover the query; those digits are invariant under every
 * left extension.
 */
ProbabilityBracket prob_past_digit(const DigitEvent& event, int depth,
                                   const BetaParams& params);

struct CenterDigitReport {
    ProbabilityBracket x0_one;    // digit at coordinate 0 after joining past and future
    ProbabilityBracket case_one;  // y_0 = 1 and y_1 = 0
    ProbabilityBracket case_two;  // y_{-1} = y_0 = 0 and y_1 = y_2 = 1
};

/**
 * Joint past/future enumeration of the center digit for the golden mean
 * (order 2); the join rule for higher orders is not derived here and other
 * orders throw std::invalid_argument. Requires depth >= 2.
 */
CenterDigitReport prob_center_digit(int depth, const BetaParams& params);

/// The five golden-mean digit probabilities, evaluated from the exact
/// geometric series (independent of the enumeration engine). Orders other
/// than 2 throw std::invalid_argument("closed forms not available").
struct GoldenClosedForms {
    Rat p_y1_one;        // 2/3
    Rat p_y1_y2_one;     // 1/3
    Rat p_y0_one;        // 1/3
    Rat p_ym1_y0_zero;   // 1/2
    Rat p_x0_one;        // 5/18
};
GoldenClosedForms golden_exact_digit_probabilities(const BetaParams& params);

/**
 * Exact limiting frequency of the digit 1 in normalized fair-coin
 * sequences, for any multinacci order:
 *
 *     (1/2) * (1 - (n-1) * 2^n / (2^n - 1)^2)
 *
 * which is 5/18 for n = 2 and 33/98 for n = 3. Derived from the stationary
 * distribution of the carry-chain automaton (see detail::chain_push): a
 * pushed 1 contributes one digit and a fired carry cascade of j chain units
 * retracts j*(n-1) of them, and the chain length is geometrically
 * distributed with ratio 2^-n in the stationary regime.
 */
Rat bernoulli_digit_frequency_exact(const BetaParams& params);

/**
 * Words on which normalization acts blockwise: a word belongs to the family
 * iff it ends with 0^n and contains no earlier run of n zeros. Their
 * cylinders partition the sequence space up to the null set of sequences
 * never completing a separator.
 */
struct OmegaEnumeration {
    std::vector<std::pair<BitWord, Rat>> words;  // listed only when L is small
    int truncation_length = 0;
    Rat captured_mass = 0;   // sum of 2^-|w| over words of length <= L
    Rat tail_mass = 0;       // 1 - captured_mass, exact
    Rat captured_length_sum = 0;  // sum of |w| 2^-|w| over captured words
    Rat expected_length = 0;      // exact E|w| from the hitting-time system
};

/// Requires L >= order + 1. Word lists are materialized only for
/// L <= list_limit (their count grows geometrically).
OmegaEnumeration enumerate_omega(const BetaParams& params, int L, int list_limit = 24);

enum class OmegaVariant {
    normalized_in_context,  // digit counts of the normalized image inside the stream
    normalized_standalone,  // digit counts of P(w) for the word in isolation
    raw_digits,             // digit counts of w itself (ratio is exactly 1/2)
};

/**
 * The blockwise frequency formula: sum of per-word weighted digit counts
 * divided by the expected word length, as a certified rational interval.
 * The aggregation runs an exact automaton-state dynamic program well past L
 * and widens the interval for the surviving mass (each unresolved digit
 * counts between 0 and 1), so the interval is sound at any L and its width
 * shrinks geometrically.
 */
struct OmegaFrequency {
    Rat lower = 0;
    Rat upper = 1;
    int truncation_length = 0;
    Rat expected_length = 0;
    Rat captured_mass = 0;
    OmegaVariant variant = OmegaVariant::normalized_in_context;
};
OmegaFrequency omega_frequency(const BetaParams& params, int L,
                               OmegaVariant variant = OmegaVariant::normalized_in_context);

namespace detail {

/**
 * Suffix state of a normal word driving carry propagation under appends:
 *
 *   lead      - the word is 1^m (m >= 0): a leading run, rewrite-exempt;
 *   chain(j)  - ends with j >= 1 maximal copies of 0 1^(n-1);
 *   dangling(j, r) - ends with (0 1^(n-1))^j 0 1^r, 0 <= r <= n-2.
 *
 * Appending 0 is always inert. Appending 1 to chain(j) fires a cascade of
 * exactly j rewrites (net digit-count change 1 - j(n-1)) and leaves a run
 * of j*n zeros.
 */
struct ChainState {
    enum Kind : std::uint8_t { lead, chain, dangling } kind = lead;
    long j = 0;
    int r = 0;

    bool operator==(const ChainState&) const = default;
    auto operator<=>(const ChainState&) const = default;
};

/// Advances the suffix state by one appended bit; returns the change in the
/// digit-1 count of the normalized word.
long chain_push(ChainState& s, Bit bit, int order);

}  // namespace detail
}  // namespace betafreq
