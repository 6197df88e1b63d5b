#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <string>

#include "betafreq/ergodic.hpp"
#include "betafreq/field.hpp"
#include "betafreq/normalize.hpp"

using namespace betafreq;

namespace {
BitWord random_word(detail::CounterRng& rng, std::size_t max_len) {
    BitWord w(rng.next() % (max_len + 1));
    for (auto& b : w) b = static_cast<Bit>(rng.next() & 1u);
    return w;
}

std::string repeat(const std::string& s, int k) {
    std::string out;
    for (int i = 0; i < k; ++i) out += s;
    return out;
}

std::size_t count_ones(const BitWord& w) {
    return std::accumulate(w.begin(), w.end(), std::size_t{0});
}
}  // namespace

TEST_CASE("single rewrite and fixed points") {
    const BetaParams golden = BetaParams::multinacci(2);
    CHECK(word_to_string(normalize(word_from_string("011"), golden)) == "100");
    CHECK(word_to_string(normalize(word_from_string("0000"), golden)) == "0000");
    CHECK(normalize(word_from_string(""), golden).empty());

    const BetaParams tri = BetaParams::multinacci(3);
    CHECK(word_to_string(normalize(word_from_string("0111"), tri)) == "1000");
    CHECK(evaluate_word(word_from_string("0111"), tri) ==
          evaluate_word(word_from_string("1000"), tri));

    // Leading 1-runs have no zero in front and are preserved verbatim.
    CHECK(word_to_string(normalize(word_from_string("1111010"), golden)) == "1111010");
    CHECK(word_to_string(normalize(word_from_string("11110110"), golden)) == "11111000");
}

TEST_CASE("rewriting identity families") {
    const BetaParams golden = BetaParams::multinacci(2);
    for (int k = 0; k <= 8; ++k) {
        CHECK(word_to_string(normalize(word_from_string(repeat("01", k) + "1"), golden)) ==
              "1" + std::string(2 * static_cast<size_t>(k), '0'));
        const std::string fixed_point = repeat("01", k) + "00";
        CHECK(word_to_string(normalize(word_from_string(fixed_point), golden)) == fixed_point);
        CHECK(word_to_string(normalize(word_from_string("0" + repeat("1", 2 * k)), golden)) ==
              repeat("10", k) + "0");
        CHECK(word_to_string(normalize(word_from_string("0" + repeat("1", 2 * k + 1)), golden)) ==
              repeat("10", k) + "01");
    }
}

TEST_CASE("optimized scanner equals the restart-from-zero oracle") {
    detail::CounterRng rng(1001, 0);
    for (int n : {2, 3, 4}) {
        const BetaParams params = BetaParams::multinacci(n);
        for (int i = 0; i < 4000; ++i) {
            const BitWord w = random_word(rng, 120);
            CHECK(normalize(w, params) == detail::normalize_restart_scan(w, params));
        }
    }
}

TEST_CASE("resume-position scanning survives long words") {
    detail::CounterRng rng(700700, 0);
    for (int n : {2, 3}) {
        const BetaParams params = BetaParams::multinacci(n);
        BitWord w(20000);
        for (auto& b : w) b = static_cast<Bit>(rng.next() & 1u);
        CHECK(normalize(w, params) == detail::normalize_restart_scan(w, params));
    }
}

TEST_CASE("leftmost and rightmost strategies are confluent") {
    detail::CounterRng rng(2002, 0);
    for (int n : {2, 3}) {
        const BetaParams params = BetaParams::multinacci(n);
        for (int i = 0; i < 5000; ++i) {
            const BitWord w = random_word(rng, 80);
            CHECK(normalize(w, params) == detail::normalize_rightmost(w, params));
        }
    }
}

TEST_CASE("value preservation, idempotence, length, termination bound") {
    detail::CounterRng rng(3003, 0);
    for (int n = 2; n <= 5; ++n) {
        const BetaParams params = BetaParams::multinacci(n);
        for (int i = 0; i < 250; ++i) {
            const BitWord w = random_word(rng, 160);
            BitWord nf = w;
            const std::size_t rewrites = normalize_in_place(nf, params);
            CHECK(nf.size() == w.size());
            CHECK(rewrites <= count_ones(w));
            CHECK(is_normal_form(nf, params));
            CHECK(normalize(nf, params) == nf);
            CHECK(evaluate_word(w, params) == evaluate_word(nf, params));
        }
    }
}

TEST_CASE("blockwise normalization equals the direct one") {
    const BetaParams golden = BetaParams::multinacci(2);
    CHECK(normalize_via_blocks(word_from_string("0110011"), golden) ==
          normalize(word_from_string("0110011"), golden));
    // Single-block word: degenerate decomposition.
    CHECK(normalize_via_blocks(word_from_string("0111"), golden) ==
          normalize(word_from_string("0111"), golden));

    detail::CounterRng rng(4004, 0);
    for (int n : {2, 3}) {
        const BetaParams params = BetaParams::multinacci(n);
        for (int i = 0; i < 1000; ++i) {
            const BitWord w = random_word(rng, 200);
            const BitWord direct = normalize(w, params);
            CHECK(normalize_via_blocks(w, params) == direct);
            CHECK(normalize_via_blocks(w, params, 4) == direct);  // parallel path, identical
        }
    }
}

TEST_CASE("center digit rule") {
    // Case 1: a 1 followed by a 0 survives the join.
    CHECK(center_digit_rule(0, 1, 0, 0) == 1);
    CHECK(center_digit_rule(0, 1, 0, 1) == 1);
    // Case 2: 00 meeting 11 carries into the center.
    CHECK(center_digit_rule(0, 0, 1, 1) == 1);
    // The rewrite at (y-1, y0, y1) zeroes the center instead.
    CHECK(center_digit_rule(0, 1, 1, 0) == 0);
    CHECK(center_digit_rule(0, 1, 1, 1) == 0);
    CHECK(center_digit_rule(1, 0, 1, 1) == 0);
    CHECK(center_digit_rule(0, 0, 1, 0) == 0);
    CHECK(center_digit_rule(1, 0, 0, 0) == 0);

    // Against direct normalization of joined windows: pasts end with the
    // given two digits, futures start with them, both sides normal.
    const BetaParams golden = BetaParams::multinacci(2);
    const std::vector<std::string> pasts = {"10000", "10001", "10010"};
    const std::vector<std::string> futures = {"0000", "0100", "1000", "1100"};
    for (const auto& p : pasts) {
        for (const auto& f : futures) {
            REQUIRE(is_normal_form(word_from_string(p), golden));
            REQUIRE(is_normal_form(word_from_string(f), golden));
            const BitWord joined = word_from_string(p + f);
            const BitWord nf = normalize(joined, golden);
            const Bit expect = center_digit_rule(word_from_string(p)[p.size() - 2],
                                                 word_from_string(p)[p.size() - 1],
                                                 word_from_string(f)[0], word_from_string(f)[1]);
            CHECK(nf[p.size() - 1] == expect);
        }
    }

    // A long carry chain ends at the center but the rule still reads off
    // the four boundary digits.
    const BitWord joined = word_from_string("10101" "110000");
    const BitWord nf = normalize(joined, golden);
    CHECK(nf[4] == center_digit_rule(0, 1, 1, 1));
}

TEST_CASE("two-sided normalization: examples") {
    const BetaParams golden = BetaParams::multinacci(2);
    {
        // Separators on both sides of the origin: coordinate 0 is final.
        const TwoSidedWord w = two_sided_from_string("1001|0100");
        const TwoSidedNormalization res = normalize_two_sided(w, golden, 0);
        CHECK(res.any_final);
        CHECK(res.final_lo <= 0);
        CHECK(res.final_hi >= 0);
        CHECK(res.word.at_coord(0) == 1);  // Case 1: y0=1, y1=0 stays
        CHECK(res.stable);
    }
    {
        // All-zero window: unchanged and final well inside the radius.
        const TwoSidedWord w = two_sided_from_string("00000|00000");
        const TwoSidedNormalization res = normalize_two_sided(w, golden, 2);
        CHECK(res.word == w);
        CHECK(res.stable);
        CHECK(res.final_lo <= -2);
        CHECK(res.final_hi >= 2);
    }
    {
        // No separators at all: everything provisional.
        const TwoSidedWord w = two_sided_from_string("1101|1011");
        const TwoSidedNormalization res = normalize_two_sided(w, golden, 1);
        CHECK_FALSE(res.any_final);
        CHECK_FALSE(res.stable);
    }
}

TEST_CASE("two-sided finality survives all boundary extensions") {
    const BetaParams golden = BetaParams::multinacci(2);
    detail::CounterRng rng(5005, 0);
    int stable_windows = 0;
    for (int trial = 0; trial < 400; ++trial) {
        BitWord bits = random_word(rng, 28);
        if (bits.size() < 8) continue;
        TwoSidedWord w{bits, static_cast<std::ptrdiff_t>(bits.size() / 2)};
        const std::ptrdiff_t radius = 1;
        const TwoSidedNormalization res = normalize_two_sided(w, golden, radius);
        if (!res.stable) continue;
        ++stable_windows;
        for (int left = 0; left < 4; ++left) {
            for (int right = 0; right < 4; ++right) {
                BitWord ext;
                ext.push_back(static_cast<Bit>(left & 1));
                ext.push_back(static_cast<Bit>((left >> 1) & 1));
                ext.insert(ext.end(), bits.begin(), bits.end());
                ext.push_back(static_cast<Bit>(right & 1));
                ext.push_back(static_cast<Bit>((right >> 1) & 1));
                const BitWord nf = normalize(ext, golden);
                for (std::ptrdiff_t c = -radius; c <= radius; ++c) {
                    const std::size_t idx = static_cast<std::size_t>(c + w.origin - 1);
                    CHECK(nf[idx + 2] == res.word.bits[idx]);
                }
            }
        }
    }
    CHECK(stable_windows > 30);  // the property must not pass vacuously
}
