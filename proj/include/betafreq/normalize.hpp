#pragma once

#include <cstddef>

#include "betafreq/words.hpp"

namespace betafreq {

/**
 * Normalization to greedy form: repeatedly replace the leftmost occurrence
 * of 0 1^n with 1 0^n until none remains (n = order). The result has the
 * same length and the same value under evaluate_word, and satisfies
 * is_normal_form. Each rewrite removes n-1 ones, so the number of rewrites
 * is at most the number of ones in the input.
 */
BitWord normalize(const BitWord& w, const BetaParams& params);

/// In-place variant; returns the number of rewrites performed.
std::size_t normalize_in_place(BitWord& w, const BetaParams& params);

/**
 * parse_blocks, normalize each block independently, concatenate. Must agree
 * with normalize() whenever every non-first block starts with 0^n - which
 * parse_blocks guarantees - and the agreement is differential-tested rather
 * than assumed. With threads > 1 blocks are normalized in parallel; the
 * output is bit-identical to the sequential path.
 */
BitWord normalize_via_blocks(const BitWord& w, const BetaParams& params, int threads = 1);

/**
 * Digit at coordinate 0 after joining an already-normalized past y^- and
 * future y^+ and renormalizing (golden mean rule). Inputs are the last two
 * digits of the past (y_{-1}, y_0) and first two of the future (y_1, y_2).
 * Returns 1 iff (y0=1 and y1=0) or (y-1=0, y0=0, y1=1, y2=1).
 */
Bit center_digit_rule(Bit ym1, Bit y0, Bit y1, Bit y2);

struct TwoSidedNormalization {
    TwoSidedWord word;       // normalized window, origin preserved
    bool stable = false;     // all coordinates in [-radius, radius] are final
    bool any_final = false;  // the window contains at least two separator runs
    std::ptrdiff_t final_lo = 0;  // inclusive final-coordinate range when any_final
    std::ptrdiff_t final_hi = 0;
};

/**
 * Normalizes a two-sided window. A digit is final - equal to the
 * normalization of ANY two-sided extension of the window - iff some
 * complete separator run of the raw window starts at or before it and
 * another starts strictly after it; carries cannot cross a raw run of n
 * zeros. A window without separators is flagged fully unstable, with every
 * digit provisional.
 */
TwoSidedNormalization normalize_two_sided(const TwoSidedWord& w, const BetaParams& params,
                                          std::ptrdiff_t radius);

namespace detail {

/// Verbatim restart-from-the-start rewriting loop; the production scanner
/// resumes n positions back instead. Kept as a differential oracle.
BitWord normalize_restart_scan(const BitWord& w, const BetaParams& params);

/// Rightmost-first rewriting, for confluence checks.
BitWord normalize_rightmost(const BitWord& w, const BetaParams& params);

}  // namespace detail
}  // namespace betafreq
