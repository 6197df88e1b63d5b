#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "betafreq/ergodic.hpp"
#include "betafreq/field.hpp"
#include "betafreq/probability.hpp"

using namespace betafreq;

namespace {
BitWord random_word(detail::CounterRng& rng, std::size_t max_len) {
    BitWord w(rng.next() % (max_len + 1));
    for (auto& b : w) b = static_cast<Bit>(rng.next() & 1u);
    return w;
}

std::size_t count_ones(const BitWord& w) {
    return std::accumulate(w.begin(), w.end(), std::size_t{0});
}
}  // namespace

TEST_CASE("carry-chain automaton tracks the digit count of full normalization") {
    detail::CounterRng rng(606060, 0);
    for (int n : {2, 3, 4}) {
        const BetaParams params = BetaParams::multinacci(n);
        for (int i = 0; i < 6000; ++i) {
            const BitWord w = random_word(rng, 20);

            // Standalone: the word in isolation, leading run exempt.
            detail::ChainState s;
            long total = 0;
            for (Bit b : w) total += detail::chain_push(s, b, n);
            CHECK(total == static_cast<long>(count_ones(normalize(w, params))));

            // In context: the word preceded by a separator, so its leading
            // ones are exposed to rewriting.
            detail::ChainState sc{detail::ChainState::dangling, 0, 0};
            long total_ctx = 0;
            for (Bit b : w) total_ctx += detail::chain_push(sc, b, n);
            BitWord seeded(static_cast<size_t>(n), 0);
            seeded.insert(seeded.end(), w.begin(), w.end());
            CHECK(total_ctx == static_cast<long>(count_ones(normalize(seeded, params))));
        }
    }
}

TEST_CASE("digits behind the leading run of a normalized window never move") {
    // The past engine decides a window once the queried digits sit behind
    // the leading 1-run of its normalization; left extensions are absorbed
    // while consuming that run and the zero ending it. Checked directly
    // against full normalization of extended windows.
    detail::CounterRng rng(515151, 0);
    for (int n : {2, 3}) {
        const BetaParams params = BetaParams::multinacci(n);
        for (int i = 0; i < 1500; ++i) {
            const BitWord w = random_word(rng, 16);
            const BitWord v = normalize(w, params);
            std::size_t lead = 0;
            while (lead < v.size() && v[lead]) ++lead;
            if (lead == v.size()) continue;  // nothing stable yet
            const BitWord stable(v.begin() + static_cast<std::ptrdiff_t>(lead), v.end());

            const BitWord u = random_word(rng, 10);
            BitWord ext = u;
            ext.insert(ext.end(), w.begin(), w.end());
            const BitWord nv = normalize(ext, params);
            const BitWord tail(nv.end() - static_cast<std::ptrdiff_t>(stable.size()), nv.end());
            REQUIRE(tail == stable);
        }
    }
}

TEST_CASE("golden closed forms") {
    const BetaParams golden = BetaParams::multinacci(2);
    const GoldenClosedForms cf = golden_exact_digit_probabilities(golden);
    CHECK(cf.p_y1_one == rat(2, 3));
    CHECK(cf.p_y1_y2_one == rat(1, 3));
    CHECK(cf.p_y0_one == rat(1, 3));
    CHECK(cf.p_ym1_y0_zero == rat(1, 2));
    CHECK(cf.p_x0_one == rat(5, 18));
    CHECK_THROWS_WITH_AS(golden_exact_digit_probabilities(BetaParams::multinacci(3)),
                         "closed forms not available", std::invalid_argument);
}

TEST_CASE("future brackets trap the closed forms") {
    const BetaParams golden = BetaParams::multinacci(2);
    const auto y1 = prob_future_digit(future_event({{1, 1}}), 40, golden);
    CHECK(y1.contains(rat(2, 3)));
    CHECK(y1.width() <= pow2(-20));
    CHECK(y1.undecided <= 2 * pow2(-40));

    const auto y12 = prob_future_digit(future_event({{1, 1}, {2, 1}}), 40, golden);
    CHECK(y12.contains(rat(1, 3)));
    CHECK(y12.width() <= pow2(-20));
    CHECK(y12.undecided <= 2 * pow2(-40));

    // Certain event: decided at depth 1 with zero gap.
    DigitEvent certain{1, [](std::span<const Bit>) { return true; }, "y1 in {0,1}"};
    const auto triv = prob_future_digit(certain, 1, golden);
    CHECK(triv.lower == 1);
    CHECK(triv.upper == 1);

    CHECK_THROWS_AS(prob_future_digit(future_event({{1, 1}}), 0, golden),
                    std::invalid_argument);
}

TEST_CASE("past brackets trap the closed forms") {
    const BetaParams golden = BetaParams::multinacci(2);
    const auto y0 = prob_past_digit(past_event({{0, 1}}), 40, golden);
    CHECK(y0.contains(rat(1, 3)));
    CHECK(y0.width() <= pow2(-20));
    CHECK(y0.undecided <= 2 * pow2(-40));

    const auto y00 = prob_past_digit(past_event({{-1, 0}, {0, 0}}), 40, golden);
    CHECK(y00.contains(rat(1, 2)));
    CHECK(y00.width() <= pow2(-20));
    CHECK(y00.undecided <= 2 * pow2(-40));

    // Complement of 1/3.
    const auto y0z = prob_past_digit(past_event({{0, 0}}), 40, golden);
    CHECK(y0z.contains(rat(2, 3)));
}

TEST_CASE("complementary events partition the mass exactly") {
    const BetaParams golden = BetaParams::multinacci(2);
    for (int depth : {6, 10, 14}) {
        const auto a = prob_future_digit(future_event({{1, 1}}), depth, golden);
        const auto b = prob_future_digit(future_event({{1, 0}}), depth, golden);
        CHECK(a.lower + b.upper == 1);
        CHECK(a.upper + b.lower == 1);
        CHECK(a.lower + a.undecided + (Rat(1) - a.upper) == 1);
        CHECK(a.lower >= 0);
        CHECK(a.lower <= a.upper);
        CHECK(a.upper <= 1);
        CHECK(a.upper - a.lower == a.undecided);
    }
}

TEST_CASE("bracket width is monotone in depth") {
    const BetaParams golden = BetaParams::multinacci(2);
    Rat prev_f = 2, prev_p = 2, prev_c = 2;
    for (int depth : {8, 12, 16, 20, 24}) {
        const Rat wf = prob_future_digit(future_event({{1, 1}}), depth, golden).width();
        const Rat wp = prob_past_digit(past_event({{0, 1}}), depth, golden).width();
        const Rat wc = prob_center_digit(depth, golden).x0_one.width();
        CHECK(wf <= prev_f);
        CHECK(wp <= prev_p);
        CHECK(wc <= prev_c);
        prev_f = wf;
        prev_p = wp;
        prev_c = wc;
    }
}

TEST_CASE("center digit bracket and the two contributing cases") {
    const BetaParams golden = BetaParams::multinacci(2);
    const CenterDigitReport rep = prob_center_digit(40, golden);
    CHECK(rep.x0_one.contains(rat(5, 18)));
    CHECK(rep.x0_one.width() <= pow2(-20));
    CHECK(rep.case_one.contains(rat(1, 9)));
    CHECK(rep.case_two.contains(rat(1, 6)));

    CHECK_THROWS_AS(prob_center_digit(40, BetaParams::multinacci(3)), std::invalid_argument);
    CHECK_THROWS_AS(prob_center_digit(1, golden), std::invalid_argument);
}

TEST_CASE("engine probabilities match sampled digit statistics") {
    // Statistical oracle, independent of the cylinder machinery: normalize
    // long random words and read digits directly.
    const BetaParams golden = BetaParams::multinacci(2);
    detail::CounterRng rng(909090, 0);
    const int samples = 20000;
    const std::size_t len = 160;
    int y1_ones = 0, y0_ones = 0;
    for (int i = 0; i < samples; ++i) {
        BitWord w(len);
        for (auto& b : w) b = static_cast<Bit>(rng.next() & 1u);
        const BitWord nf = normalize(w, golden);
        y1_ones += nf.front();
        // Last stable digit of the window read as a past: skip words whose
        // normalization is one giant leading run (probability ~2^-160).
        y0_ones += nf.back();
    }
    const double p1 = static_cast<double>(y1_ones) / samples;
    const double p0 = static_cast<double>(y0_ones) / samples;
    const double sigma = std::sqrt(0.25 / samples);
    CHECK(std::abs(p1 - 2.0 / 3.0) < 5 * sigma);
    CHECK(std::abs(p0 - 1.0 / 3.0) < 5 * sigma);
}

TEST_CASE("omega enumeration basics") {
    const BetaParams golden = BetaParams::multinacci(2);
    {
        const OmegaEnumeration en = enumerate_omega(golden, 2);
        REQUIRE(en.words.size() == 1);
        CHECK(word_to_string(en.words[0].first) == "00");
        CHECK(en.words[0].second == rat(1, 4));
        CHECK(en.captured_mass == rat(1, 4));
        CHECK(en.tail_mass == rat(3, 4));
    }
    {
        const OmegaEnumeration en = enumerate_omega(golden, 14);
        Rat mass = 0;
        for (const auto& [w, wt] : en.words) {
            // Each word ends at its first separator occurrence.
            REQUIRE(w.size() >= 2);
            CHECK(w[w.size() - 1] == 0);
            CHECK(w[w.size() - 2] == 0);
            const auto runs = detail::zero_runs(w, 2);
            REQUIRE(runs.size() == 1);
            CHECK(runs[0].first == w.size() - 2);
            CHECK(wt == pow2(-static_cast<long>(w.size())));
            mass += wt;
        }
        mass.canonicalize();
        CHECK(mass == en.captured_mass);
        CHECK(en.captured_mass + en.tail_mass == 1);
    }
    CHECK_THROWS_AS(enumerate_omega(golden, 1), std::invalid_argument);

    // Crude union bound on the tail at L = 40: completing a separator takes
    // at most two symbols with probability 1/4, so twenty shots remain.
    const OmegaEnumeration deep = enumerate_omega(golden, 40, 0);
    Rat bound = 1;
    for (int i = 0; i < 20; ++i) bound *= rat(3, 4);
    CHECK(deep.tail_mass <= bound);
    CHECK(deep.words.empty());  // listing suppressed above the limit
}

TEST_CASE("expected word length solves the waiting-time system") {
    // Hand-derived: E_z = 1 + (E_0 + E_{z+1})/2, E_n = 0 gives E_0 = 2^(n+1)-2.
    CHECK(enumerate_omega(BetaParams::multinacci(2), 8).expected_length == rat(6));
    CHECK(enumerate_omega(BetaParams::multinacci(3), 8).expected_length == rat(14));
    for (int n = 2; n <= 5; ++n) {
        const OmegaEnumeration en = enumerate_omega(BetaParams::multinacci(n), n + 4);
        CHECK(en.expected_length == pow2(n + 1) - 2);
    }
}

TEST_CASE("omega frequency interval is exact about the aggregate sums") {
    const BetaParams golden = BetaParams::multinacci(2);
    const OmegaFrequency fr = omega_frequency(golden, 40);
    // The exact expected length must come out of the dynamic program on the
    // nose: the partial sums plus tail expectations reproduce 2^(n+1)-2.
    CHECK(fr.expected_length == rat(6));
    CHECK(fr.lower <= fr.upper);
    CHECK(fr.lower.get_d() == doctest::Approx(5.0 / 18.0).epsilon(1e-6));

    const Rat target = rat(5, 18);
    CHECK(fr.lower <= target);
    CHECK(target <= fr.upper);
    CHECK(fr.upper - fr.lower <= rat(1, 10000));

    // Sound at tiny truncations too, just wider; L = order + 1 is the
    // degenerate minimum.
    for (int L : {3, 4}) {
        const OmegaFrequency small = omega_frequency(golden, L);
        CHECK(small.lower <= target);
        CHECK(target <= small.upper);
        CHECK(small.lower >= 0);
        CHECK(small.upper <= 1);
    }
}

TEST_CASE("omega frequency variants") {
    const BetaParams golden = BetaParams::multinacci(2);
    const Rat target = rat(5, 18);

    const OmegaFrequency raw = omega_frequency(golden, 40, OmegaVariant::raw_digits);
    CHECK(raw.lower <= rat(1, 2));
    CHECK(rat(1, 2) <= raw.upper);

    // Treating each word in isolation exempts its leading run from
    // rewriting and overcounts ones, so the ratio drifts above the
    // in-context value.
    const OmegaFrequency alone = omega_frequency(golden, 40, OmegaVariant::normalized_standalone);
    CHECK(alone.lower > target);
}

TEST_CASE("exact stationary frequency for every multinacci order") {
    CHECK(bernoulli_digit_frequency_exact(BetaParams::multinacci(2)) == rat(5, 18));
    CHECK(bernoulli_digit_frequency_exact(BetaParams::multinacci(3)) == rat(33, 98));
    for (int n = 2; n <= 5; ++n) {
        const BetaParams params = BetaParams::multinacci(n);
        const Rat exact = bernoulli_digit_frequency_exact(params);
        const OmegaFrequency fr = omega_frequency(params, 40);
        CHECK(fr.lower <= exact);
        CHECK(exact <= fr.upper);
    }
}
