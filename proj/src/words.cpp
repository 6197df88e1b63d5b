#include "betafreq/words.hpp"

#include <stdexcept>

namespace betafreq {

BitWord word_from_string(const std::string& s) {
    BitWord w;
    w.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("word symbols must be 0 or 1");
        w.push_back(static_cast<Bit>(c - '0'));
    }
    return w;
}

std::string word_to_string(const BitWord& w) {
    std::string s;
    s.reserve(w.size());
    for (Bit b : w) s.push_back(static_cast<char>('0' + b));
    return s;
}

TwoSidedWord two_sided_from_string(const std::string& s) {
    const auto bar = s.find('|');
    if (bar == std::string::npos)
        throw std::invalid_argument("two-sided word needs a '|' origin marker");
    if (s.find('|', bar + 1) != std::string::npos)
        throw std::invalid_argument("two-sided word has more than one '|'");
    TwoSidedWord w;
    w.bits = word_from_string(s.substr(0, bar));
    const BitWord future = word_from_string(s.substr(bar + 1));
    w.origin = static_cast<std::ptrdiff_t>(w.bits.size());
    w.bits.insert(w.bits.end(), future.begin(), future.end());
    return w;
}

std::string two_sided_to_string(const TwoSidedWord& w) {
    if (w.origin < 0 || w.origin > static_cast<std::ptrdiff_t>(w.bits.size()))
        throw std::domain_error("origin outside the window, cannot place '|'");
    std::string s;
    s.reserve(w.bits.size() + 1);
    for (std::size_t i = 0; i < w.bits.size(); ++i) {
        if (static_cast<std::ptrdiff_t>(i) == w.origin) s.push_back('|');
        s.push_back(static_cast<char>('0' + w.bits[i]));
    }
    if (w.origin == static_cast<std::ptrdiff_t>(w.bits.size())) s.push_back('|');
    return s;
}

TwoSidedWord shift(const TwoSidedWord& w, std::ptrdiff_t k) {
    TwoSidedWord out = w;
    out.origin += k;
    return out;
}

Ordering lex_compare(const BitWord& u, const BitWord& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("lex_compare requires equal-length words");
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < v[i]) return Ordering::less;
        if (u[i] > v[i]) return Ordering::greater;
    }
    return Ordering::equal;
}

bool is_normal_form(const BitWord& w, const BetaParams& params) {
    const std::size_t n = static_cast<std::size_t>(params.order());
    std::size_t run = 0;
    bool seen_zero = false;
    for (Bit b : w) {
        if (b) {
            if (++run >= n && seen_zero) return false;
        } else {
            run = 0;
            seen_zero = true;
        }
    }
    return true;
}

namespace detail {

std::vector<std::pair<std::size_t, std::size_t>> zero_runs(const BitWord& w, int n) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t i = 0;
    while (i < w.size()) {
        if (w[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < w.size() && !w[j]) ++j;
        if (j - i >= static_cast<std::size_t>(n)) runs.emplace_back(i, j - i);
        i = j;
    }
    return runs;
}

}  // namespace detail

BlockDecomposition parse_blocks(const BitWord& w, const BetaParams& params) {
    BlockDecomposition out;
    const auto runs = detail::zero_runs(w, params.order());
    std::vector<std::size_t> cuts;
    for (const auto& [start, len] : runs) {
        if (start + len == w.size()) continue;  // trailing run stays with the last block
        if (start == 0) continue;               // empty first block is suppressed
        cuts.push_back(start);
    }
    std::size_t prev = 0;
    for (std::size_t cut : cuts) {
        out.blocks.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(prev),
                                w.begin() + static_cast<std::ptrdiff_t>(cut));
        prev = cut;
    }
    out.blocks.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(prev), w.end());
    out.cuts = std::move(cuts);
    out.last_incomplete = true;
    return out;
}

}  // namespace betafreq
