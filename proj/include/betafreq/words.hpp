#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "betafreq/beta.hpp"
#include "betafreq/field.hpp"

namespace betafreq {

using Bit = std::uint8_t;

/// Finite word over {0,1}, one byte per symbol.
using BitWord = std::vector<Bit>;

/// Parses a string of '0'/'1'; anything else throws std::invalid_argument.
BitWord word_from_string(const std::string& s);
std::string word_to_string(const BitWord& w);

/**
 * Finite window of a two-sided sequence. bits[i] carries coordinate
 * i - origin + 1, so the first `origin` symbols are the past (coordinates
 * <= 0) and the rest the future (coordinates >= 1). Serialized as
 * "past|future" with '|' sitting between coordinates 0 and 1.
 */
struct TwoSidedWord {
    BitWord bits;
    std::ptrdiff_t origin = 0;

    std::ptrdiff_t coord_of_index(std::size_t i) const {
        return static_cast<std::ptrdiff_t>(i) - origin + 1;
    }
    /// Lowest and highest coordinate covered by the window (empty => none).
    std::ptrdiff_t min_coord() const { return 1 - origin; }
    std::ptrdiff_t max_coord() const { return static_cast<std::ptrdiff_t>(bits.size()) - origin; }
    bool has_coord(std::ptrdiff_t c) const { return c >= min_coord() && c <= max_coord(); }
    Bit at_coord(std::ptrdiff_t c) const {
        if (!has_coord(c)) throw std::out_of_range("coordinate outside the window");
        return bits[static_cast<std::size_t>(c + origin - 1)];
    }

    bool operator==(const TwoSidedWord&) const = default;
};

TwoSidedWord two_sided_from_string(const std::string& s);
std::string two_sided_to_string(const TwoSidedWord& w);

/// Relabels coordinates: coordinate c of w equals coordinate c - k of the
/// shifted word. Bits are untouched.
TwoSidedWord shift(const TwoSidedWord& w, std::ptrdiff_t k);

/// Lexicographic order on words of equal length; unequal lengths are
/// rejected with std::invalid_argument.
Ordering lex_compare(const BitWord& u, const BitWord& v);

/**
 * Greedy normal form test: true iff w has no factor 0 1^n (n = order), i.e.
 * every run of n or more consecutive ones occurs only as a prefix of w.
 */
bool is_normal_form(const BitWord& w, const BetaParams& params);

/**
 * Decomposition of a word at separator runs (maximal runs of >= n zeros).
 * A cut is placed at the start of every such run except one that reaches
 * the end of the word: trailing zeros stay with the final block, which is
 * always flagged incomplete (the window ends mid-block). Every block after
 * the first starts with 0^n, which is what makes blockwise normalization
 * agree with the direct one.
 */
struct BlockDecomposition {
    std::vector<BitWord> blocks;
    std::vector<std::size_t> cuts;  // start index of each block after the first
    bool last_incomplete = true;
};

BlockDecomposition parse_blocks(const BitWord& w, const BetaParams& params);

namespace detail {
/// Maximal runs of >= n zeros, as (start, length) pairs.
std::vector<std::pair<std::size_t, std::size_t>> zero_runs(const BitWord& w, int n);
}  // namespace detail

}  // namespace betafreq
