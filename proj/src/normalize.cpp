#include "betafreq/normalize.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace betafreq {

namespace {

// True iff w[i..i+n] == 0 1^n.
inline bool factor_at(const BitWord& w, std::size_t i, std::size_t n) {
    if (w[i]) return false;
    for (std::size_t j = 1; j <= n; ++j)
        if (!w[i + j]) return false;
    return true;
}

inline void rewrite_at(BitWord& w, std::size_t i, std::size_t n) {
    w[i] = 1;
    for (std::size_t j = 1; j <= n; ++j) w[i + j] = 0;
}

}  // namespace

std::size_t normalize_in_place(BitWord& w, const BetaParams& params) {
    const std::size_t n = static_cast<std::size_t>(params.order());
    if (w.size() <= n) return 0;
    std::size_t rewrites = 0;
    std::size_t i = 0;
    const std::size_t last = w.size() - n - 1;
    while (i <= last) {
        if (factor_at(w, i, n)) {
            rewrite_at(w, i, n);
            ++rewrites;
            // No factor can start left of i - n: cells below i are unchanged
            // and a factor fully inside the unchanged prefix would have been
            // found earlier. Resuming there keeps the leftmost-first order.
            i = (i >= n) ? i - n : 0;
        } else {
            ++i;
        }
    }
    return rewrites;
}

BitWord normalize(const BitWord& w, const BetaParams& params) {
    BitWord out = w;
    normalize_in_place(out, params);
    return out;
}

namespace detail {

BitWord normalize_restart_scan(const BitWord& w, const BetaParams& params) {
    const std::size_t n = static_cast<std::size_t>(params.order());
    BitWord out = w;
    if (out.size() <= n) return out;
    for (;;) {
        bool fired = false;
        for (std::size_t i = 0; i + n < out.size(); ++i) {
            if (factor_at(out, i, n)) {
                rewrite_at(out, i, n);
                fired = true;
                break;
            }
        }
        if (!fired) return out;
    }
}

BitWord normalize_rightmost(const BitWord& w, const BetaParams& params) {
    const std::size_t n = static_cast<std::size_t>(params.order());
    BitWord out = w;
    if (out.size() <= n) return out;
    for (;;) {
        bool fired = false;
        for (std::size_t i = out.size() - n; i-- > 0;) {
            if (factor_at(out, i, n)) {
                rewrite_at(out, i, n);
                fired = true;
                break;
            }
        }
        if (!fired) return out;
    }
}

}  // namespace detail

BitWord normalize_via_blocks(const BitWord& w, const BetaParams& params, int threads) {
    BlockDecomposition dec = parse_blocks(w, params);
    if (threads > 1 && dec.blocks.size() > 1) {
        const std::size_t nb = dec.blocks.size();
        std::vector<std::thread> pool;
        const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), nb);
        std::atomic<std::size_t> next{0};
        for (std::size_t t = 0; t < nt; ++t) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t k = next.fetch_add(1);
                    if (k >= nb) return;
                    normalize_in_place(dec.blocks[k], params);
                }
            });
        }
        for (auto& th : pool) th.join();
    } else {
        for (auto& block : dec.blocks) normalize_in_place(block, params);
    }
    BitWord out;
    out.reserve(w.size());
    for (const auto& block : dec.blocks) out.insert(out.end(), block.begin(), block.end());
    return out;
}

Bit center_digit_rule(Bit ym1, Bit y0, Bit y1, Bit y2) {
    if (y0 == 1 && y1 == 0) return 1;
    if (ym1 == 0 && y0 == 0 && y1 == 1 && y2 == 1) return 1;
    return 0;
}

TwoSidedNormalization normalize_two_sided(const TwoSidedWord& w, const BetaParams& params,
                                          std::ptrdiff_t radius) {
    TwoSidedNormalization out;
    out.word.origin = w.origin;
    out.word.bits = normalize(w.bits, params);

    const std::size_t n = static_cast<std::size_t>(params.order());
    const auto runs = detail::zero_runs(w.bits, params.order());
    if (!runs.empty()) {
        // A digit is final iff some complete 0^n starts at or before it and
        // another starts strictly after it. Within a run of length len the
        // separator starts range over [start, start + len - n].
        const std::ptrdiff_t first_sep = static_cast<std::ptrdiff_t>(runs.front().first);
        std::ptrdiff_t last_sep = 0;
        for (const auto& [start, len] : runs)
            last_sep = std::max(last_sep, static_cast<std::ptrdiff_t>(start + len - n));
        if (last_sep > first_sep) {
            out.any_final = true;
            out.final_lo = first_sep - w.origin + 1;
            out.final_hi = last_sep - w.origin;  // one index before last_sep
        }
    }
    if (out.any_final) {
        // Stability at the requested radius: a full separator strictly left
        // of -radius and one strictly right of +radius. Long runs host
        // separators at every offset, so both may come from one run.
        bool left = false, right = false;
        for (const auto& [start, len] : runs) {
            const std::ptrdiff_t first_sep_last_coord =
                static_cast<std::ptrdiff_t>(start + n) - w.origin;
            const std::ptrdiff_t last_sep_first_coord =
                static_cast<std::ptrdiff_t>(start + len - n) - w.origin + 1;
            if (first_sep_last_coord < -radius) left = true;
            if (last_sep_first_coord > radius) right = true;
        }
        out.stable = left && right;
    }
    return out;
}

}  // namespace betafreq
