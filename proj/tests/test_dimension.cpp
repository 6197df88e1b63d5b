#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "betafreq/dimension.hpp"
#include "betafreq/ergodic.hpp"
#include "betafreq/probability.hpp"

using namespace betafreq;

namespace {
// Independent closed form for order 2: a Markov measure on the golden-mean
// graph with 1-probability p from state 0 has stationary weight 1/(1+p) on
// state 0, frequency p/(1+p) and entropy H(p)/(1+p); eliminating p at
// frequency g gives h(g) = (1-g) H(g/(1-g)).
double golden_entropy_closed_form(double g) {
    if (g <= 0 || g >= 0.5) return 0;
    const double p = g / (1 - g);
    const double H = -p * std::log(p) - (1 - p) * std::log(1 - p);
    return (1 - g) * H;
}
}  // namespace

TEST_CASE("golden-mean dimension against the closed form on a grid") {
    const BetaParams golden = BetaParams::multinacci(2);
    const double logb = std::log(golden.beta_double());
    for (int i = 1; i < 100; ++i) {
        const Rat g = rat(i, 200);  // spans (0, 1/2)
        const DimensionResult d = dim_A_gamma(g, golden);
        const double expect = golden_entropy_closed_form(g.get_d()) / logb;
        CHECK(std::abs(d.dimension - expect) < 1e-8);
    }
}

TEST_CASE("dimension at the Bernoulli frequency is pinned and below one") {
    const BetaParams golden = BetaParams::multinacci(2);
    const DimensionResult d = dim_A_gamma(rat(5, 18), golden);
    // Frozen from the closed form (13/18) H(5/13) / log beta.
    CHECK(std::abs(d.dimension - 0.9999777068) < 5e-7);
    CHECK(d.dimension < 1.0);
    CHECK(d.max_entropy == doctest::Approx(0.4812010973).epsilon(1e-9));
    // The maximizing transition parameter is g/(1-g) = 5/13.
    REQUIRE(d.transitions.size() == 1);
    CHECK(d.transitions[0] == doctest::Approx(5.0 / 13.0).epsilon(1e-9));
}

TEST_CASE("the level set at alpha(1) has full dimension") {
    for (int n : {2, 3, 4}) {
        const BetaParams params = BetaParams::multinacci(n);
        const double a1 = parry_digit_one_frequency(params).to_double();
        const DimensionResult d = dim_A_gamma(Rat(a1), params);
        CHECK(std::abs(d.dimension - 1.0) < 1e-10);
        CHECK(std::abs(d.max_entropy - std::log(params.beta_double())) < 1e-10);
    }
}

TEST_CASE("feasibility endpoints and errors") {
    const BetaParams golden = BetaParams::multinacci(2);
    CHECK(max_digit_frequency(golden) == rat(1, 2));
    CHECK(max_digit_frequency(BetaParams::multinacci(3)) == rat(2, 3));

    CHECK(dim_A_gamma(rat(0), golden).dimension == 0.0);
    CHECK(dim_A_gamma(rat(1, 2), golden).dimension == 0.0);
    CHECK_THROWS_WITH_AS(dim_A_gamma(rat(3, 5), golden),
                         "frequency outside subshift spectrum", std::domain_error);
    CHECK_THROWS_AS(dim_A_gamma(rat(-1, 10), golden), std::domain_error);
}

TEST_CASE("dimension is concave in the frequency") {
    const BetaParams golden = BetaParams::multinacci(2);
    std::vector<double> dims;
    const int grid = 50;
    for (int i = 0; i <= grid; ++i)
        dims.push_back(dim_A_gamma(rat(i, 2 * grid), golden).dimension);
    for (int i = 1; i + 1 <= grid; ++i)
        CHECK(dims[static_cast<size_t>(i)] >=
              0.5 * (dims[static_cast<size_t>(i) - 1] + dims[static_cast<size_t>(i) + 1]) - 1e-9);

    // The maximum over the grid sits where alpha(1) does.
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (dims[i] > dims[argmax]) argmax = i;
    const double a1 = parry_digit_one_frequency(golden).to_double();
    CHECK(std::abs(static_cast<double>(argmax) / (2 * grid) - a1) < 0.02);
}

TEST_CASE("returned transitions reproduce the constrained optimum") {
    for (int n : {2, 3, 4}) {
        const BetaParams params = BetaParams::multinacci(n);
        const Rat g = bernoulli_digit_frequency_exact(params);
        const DimensionResult d = dim_A_gamma(g, params);
        CHECK(markov_frequency(d.transitions) == doctest::Approx(g.get_d()).epsilon(1e-9));
        CHECK(markov_entropy(d.transitions) == doctest::Approx(d.max_entropy).epsilon(1e-9));
    }
}

TEST_CASE("stationarity of the Lagrangian at the returned point") {
    // Finite-difference check that grad h = lambda * grad f at the optimum,
    // with lambda estimated from the first coordinate.
    for (int n : {3, 4}) {
        const BetaParams params = BetaParams::multinacci(n);
        const DimensionResult d = dim_A_gamma(bernoulli_digit_frequency_exact(params), params);
        const double eps = 1e-6;
        std::vector<double> gh(d.transitions.size()), gf(d.transitions.size());
        for (std::size_t r = 0; r < d.transitions.size(); ++r) {
            auto up = d.transitions, dn = d.transitions;
            up[r] += eps;
            dn[r] -= eps;
            gh[r] = (markov_entropy(up) - markov_entropy(dn)) / (2 * eps);
            gf[r] = (markov_frequency(up) - markov_frequency(dn)) / (2 * eps);
        }
        const double lambda = -gh[0] / gf[0];
        for (std::size_t r = 0; r < gh.size(); ++r)
            CHECK(std::abs(gh[r] + lambda * gf[r]) < 1e-6);
    }
}

TEST_CASE("singularity certificates for the multinacci family") {
    {
        const BetaParams golden = BetaParams::multinacci(2);
        const SingularityCertificate c = singularity_certificate(golden);
        CHECK(c.bernoulli_exact == rat(5, 18));
        CHECK(c.separated);
        CHECK(c.separation_sign == 1);  // 5/18 > alpha(1)
        CHECK(c.interval_separated);
        CHECK(c.dimension_bound < 1.0);
        CHECK(c.dimension_bound == doctest::Approx(0.9999777068).epsilon(1e-6));
        CHECK(c.dimension_bound_sup < 1.0);
        CHECK(c.verdict.find("singular") != std::string::npos);
    }
    {
        const BetaParams tri = BetaParams::multinacci(3);
        const SingularityCertificate c = singularity_certificate(tri);
        CHECK(c.bernoulli_exact == rat(33, 98));
        CHECK(c.separated);
        CHECK(c.separation_sign == -1);  // here the coin-flip frequency sits below alpha(1)
        CHECK(c.interval_separated);
        CHECK(c.dimension_bound < 1.0);
        CHECK(c.dimension_bound_sup < 1.0);
    }
    for (int n : {4, 5}) {
        const SingularityCertificate c = singularity_certificate(BetaParams::multinacci(n));
        CHECK(c.separated);
        CHECK(c.interval_separated);
        CHECK(c.dimension_bound < 1.0);
        CHECK(c.verdict.find("singular") != std::string::npos);
    }
}
