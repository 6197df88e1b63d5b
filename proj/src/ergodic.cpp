#include "betafreq/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "betafreq/normalize.hpp"
#include "betafreq/probability.hpp"

namespace betafreq {

ParryMeasure parry_measure(const BetaParams& params) {
    const int n = params.order();
    ParryMeasure mu{params, {}, {}, FieldElement::zero(params)};

    // Orbit of 1: exact iteration. Every point before absorption sits in
    // [1/beta, 1], so the digit is always 1 and T^i(1) = beta T^{i-1}(1) - 1.
    FieldElement x = FieldElement::one(params);
    const FieldElement beta = FieldElement::beta(params);
    for (int i = 0; i < n; ++i) {
        mu.orbit.push_back(x);
        x = beta * x - FieldElement::one(params);
    }
    if (!x.is_zero()) throw std::logic_error("multinacci orbit of 1 must reach 0");

    // Density plateau between orbit[i+1] and orbit[i] collects the indicators
    // of every interval [0, T^j(1)] with T^j(1) >= orbit[i].
    const FieldElement binv = FieldElement::beta_inverse(params);
    std::vector<FieldElement> weights;  // beta^-i for i = 0..n-1
    FieldElement w = FieldElement::one(params);
    for (int i = 0; i < n; ++i) {
        weights.push_back(w);
        w = w * binv;
    }
    FieldElement cumulative = FieldElement::zero(params);
    FieldElement integral = FieldElement::zero(params);
    for (int i = 0; i < n; ++i) {
        cumulative = cumulative + weights[static_cast<size_t>(i)];
        const FieldElement upper = mu.orbit[static_cast<size_t>(i)];
        const FieldElement lower =
            (i + 1 < n) ? mu.orbit[static_cast<size_t>(i) + 1] : FieldElement::zero(params);
        mu.densities.push_back(cumulative);
        integral = integral + cumulative * (upper - lower);
    }
    mu.normalizer = FieldElement::one(params) / integral;
    for (auto& d : mu.densities) d = d * mu.normalizer;
    return mu;
}

FieldElement parry_measure_of_interval(const ParryMeasure& mu, const FieldElement& a,
                                       const FieldElement& b) {
    const BetaParams& params = mu.params;
    detail::RootEnclosure enc(params);
    const FieldElement zero = FieldElement::zero(params);
    auto clamp = [&](const FieldElement& v, const FieldElement& lo, const FieldElement& hi) {
        if (detail::compare_with(enc, v, lo) == Ordering::less) return lo;
        if (detail::compare_with(enc, v, hi) == Ordering::greater) return hi;
        return v;
    };
    FieldElement total = zero;
    const int n = params.order();
    for (int i = 0; i < n; ++i) {
        const FieldElement hi = mu.orbit[static_cast<size_t>(i)];
        const FieldElement lo =
            (i + 1 < n) ? mu.orbit[static_cast<size_t>(i) + 1] : zero;
        const FieldElement ca = clamp(a, lo, hi);
        const FieldElement cb = clamp(b, lo, hi);
        if (detail::compare_with(enc, cb, ca) == Ordering::greater)
            total = total + mu.densities[static_cast<size_t>(i)] * (cb - ca);
    }
    return total;
}

FieldElement parry_digit_one_frequency(const BetaParams& params) {
    const ParryMeasure mu = parry_measure(params);
    return parry_measure_of_interval(mu, FieldElement::beta_inverse(params),
                                     FieldElement::one(params));
}

std::pair<Bit, FieldElement> greedy_step(const FieldElement& x, const BetaParams& params) {
    detail::RootEnclosure enc(params);
    const FieldElement binv = FieldElement::beta_inverse(params);
    const FieldElement bmax =
        FieldElement::one(params) / (FieldElement::beta(params) - FieldElement::one(params));
    if (detail::compare_with(enc, x, FieldElement::zero(params)) == Ordering::less ||
        detail::compare_with(enc, x, bmax) == Ordering::greater)
        throw std::domain_error("greedy_step argument outside [0, 1/(beta-1)]");
    const FieldElement bx = FieldElement::beta(params) * x;
    if (detail::compare_with(enc, x, binv) == Ordering::less) return {0, bx};
    return {1, bx - FieldElement::one(params)};
}

BitWord greedy_expand(const FieldElement& x, std::size_t length, const BetaParams& params) {
    detail::RootEnclosure enc(params);
    const FieldElement beta = FieldElement::beta(params);
    const FieldElement binv = FieldElement::beta_inverse(params);
    const FieldElement one = FieldElement::one(params);
    const FieldElement bmax = one / (beta - one);
    if (detail::sign_with(enc, x) < 0 ||
        detail::compare_with(enc, x, bmax) == Ordering::greater)
        throw std::domain_error("greedy_expand argument outside [0, 1/(beta-1)]");
    BitWord out;
    out.reserve(length);
    FieldElement cur = x;
    for (std::size_t i = 0; i < length; ++i) {
        if (cur.is_zero()) {
            out.insert(out.end(), length - i, Bit(0));
            break;
        }
        if (detail::compare_with(enc, cur, binv) == Ordering::less) {
            out.push_back(0);
            cur = beta * cur;
        } else {
            out.push_back(1);
            cur = beta * cur - one;
        }
    }
    return out;
}

namespace {

double bernoulli_trial(std::int64_t length, std::uint64_t seed, std::uint64_t stream,
                       const BetaParams& params) {
    detail::CounterRng rng(seed, stream);
    BitWord w(static_cast<size_t>(length));
    std::size_t i = 0;
    while (i < w.size()) {
        std::uint64_t bits = rng.next();
        for (int b = 0; b < 64 && i < w.size(); ++b, ++i) w[i] = (bits >> b) & 1u;
    }
    normalize_in_place(w, params);

    // Count up to the final raw separator of the *input* stream; since the
    // word was normalized in place we use the normalized word's own last
    // run of n zeros, behind which nothing can change under extension.
    const auto runs = detail::zero_runs(w, params.order());
    std::size_t cutoff = w.size();
    if (!runs.empty()) cutoff = runs.back().first;
    if (cutoff == 0) return 0.0;
    std::size_t ones = 0;
    for (std::size_t k = 0; k < cutoff; ++k) ones += w[k];
    return static_cast<double>(ones) / static_cast<double>(cutoff);
}

double lebesgue_trial(std::int64_t length, std::uint64_t seed, std::uint64_t stream,
                      const BetaParams& params) {
    detail::CounterRng rng(seed, stream);
    const double beta = params.beta_double();
    const double binv = 1.0 / beta;
    const double bmax = 1.0 / (beta - 1.0);
    double x = rng.uniform();
    std::int64_t ones = 0;
    for (std::int64_t i = 0; i < length; ++i) {
        if (x >= binv) {
            ++ones;
            x = beta * x - 1.0;
        } else {
            x = beta * x;
        }
        if (x < 0.0) x = 0.0;
        if (x > bmax) x = bmax;
    }
    return static_cast<double>(ones) / static_cast<double>(length);
}

template <typename Trial>
FrequencyReport run_trials(Trial&& trial, std::int64_t length, int trials, std::uint64_t seed,
                           const BetaParams& params, int threads) {
    if (length < 1000) throw std::invalid_argument("length must be >= 1000");
    if (trials < 2) throw std::invalid_argument("need at least 2 trials for a stderr");

    std::vector<double> means(static_cast<size_t>(trials));
    const int nt = std::max(1, std::min(threads, trials));
    if (nt > 1) {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&]() {
                for (;;) {
                    const int k = next.fetch_add(1);
                    if (k >= trials) return;
                    means[static_cast<size_t>(k)] =
                        trial(length, seed, static_cast<std::uint64_t>(k), params);
                }
            });
        for (auto& th : pool) th.join();
    } else {
        for (int k = 0; k < trials; ++k)
            means[static_cast<size_t>(k)] =
                trial(length, seed, static_cast<std::uint64_t>(k), params);
    }

    double mean = 0;
    for (double m : means) mean += m;
    mean /= trials;
    double var = 0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= (trials - 1);

    FrequencyReport rep;
    rep.estimate = mean;
    rep.stderr_ = std::sqrt(var / trials);
    rep.length = length;
    rep.trials = trials;
    rep.seed = seed;
    rep.beta_order = params.order();
    const FieldElement alpha1 = parry_digit_one_frequency(params);
    rep.reference_parry = alpha1.to_double();
    rep.reference_parry_exact = alpha1.to_string();
    rep.reference_bernoulli = bernoulli_digit_frequency_exact(params);
    return rep;
}

}  // namespace

FrequencyReport mc_frequency_bernoulli(std::int64_t length, int trials, std::uint64_t seed,
                                       const BetaParams& params, int threads) {
    return run_trials(bernoulli_trial, length, trials, seed, params, threads);
}

FrequencyReport mc_frequency_lebesgue(std::int64_t length, int trials, std::uint64_t seed,
                                      const BetaParams& params, int threads) {
    return run_trials(lebesgue_trial, length, trials, seed, params, threads);
}

}  // namespace betafreq
