#include "betafreq/dimension.hpp"

#include <cmath>
#include <stdexcept>

#include "betafreq/ergodic.hpp"
#include "betafreq/probability.hpp"

namespace betafreq {

namespace {

// Spectral radius of the tilted transfer operator: the unique x > max(1, z)^(...)
// with sum_{j=0}^{n-1} z^j x^-(j+1) = 1 (first-return expansion of the loop
// structure at state 0). Monotone decreasing in x; solved by bisection.
double tilted_radius(double z, int n) {
    auto f = [&](double x) {
        double s = 0, zj = 1, xi = 1.0 / x;
        for (int j = 0; j < n; ++j) {
            s += zj * xi;
            zj *= z;
            xi /= x;
        }
        return s;
    };
    double lo = 1e-12, hi = 2 * (1 + z);
    while (f(hi) > 1) hi *= 2;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 1)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// d log rho / d lambda at z = e^lambda, by implicit differentiation of
// F(x, z) = sum z^j x^-(j+1) - 1 = 0:  gamma = (z/rho) drho/dz = -z F_z / (rho F_x).
double tilted_frequency(double z, int n, double rho) {
    double fz = 0, fx = 0, zj = 1;
    for (int j = 0; j < n; ++j) {
        const double xpow = std::pow(rho, -(j + 1));
        if (j >= 1) fz += j * (zj / z) * xpow;
        fx += -(j + 1) * zj * xpow / rho;
        zj *= z;
    }
    return -z * fz / (rho * fx);
}

std::vector<double> maximizing_transitions(double z, int n, double rho) {
    // Right eigenvector: v_r = (v_0 + z v_{r+1}) / rho with v_{n-1} = v_0 / rho.
    std::vector<double> v(static_cast<size_t>(n));
    v[static_cast<size_t>(n) - 1] = 1.0 / rho;
    for (int r = n - 2; r >= 1; --r)
        v[static_cast<size_t>(r)] = (1.0 + z * v[static_cast<size_t>(r) + 1]) / rho;
    v[0] = 1.0;
    std::vector<double> p(static_cast<size_t>(n) - 1);
    for (int r = 0; r + 1 < n; ++r)
        p[static_cast<size_t>(r)] = z * v[static_cast<size_t>(r) + 1] / (rho * v[static_cast<size_t>(r)]);
    return p;
}

double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

}  // namespace

Rat max_digit_frequency(const BetaParams& params) {
    return rat(params.order() - 1, params.order());
}

double markov_entropy(const std::vector<double>& p) {
    const int n = static_cast<int>(p.size()) + 1;
    std::vector<double> pi(static_cast<size_t>(n));
    pi[0] = 1;
    double total = 1;
    for (int r = 1; r < n; ++r) {
        pi[static_cast<size_t>(r)] = pi[static_cast<size_t>(r) - 1] * p[static_cast<size_t>(r) - 1];
        total += pi[static_cast<size_t>(r)];
    }
    double h = 0;
    for (int r = 0; r + 1 < n; ++r) {
        const double pr = p[static_cast<size_t>(r)];
        h += (pi[static_cast<size_t>(r)] / total) * (-xlogx(pr) - xlogx(1 - pr));
    }
    return h;
}

double markov_frequency(const std::vector<double>& p) {
    const int n = static_cast<int>(p.size()) + 1;
    std::vector<double> pi(static_cast<size_t>(n));
    pi[0] = 1;
    double total = 1;
    for (int r = 1; r < n; ++r) {
        pi[static_cast<size_t>(r)] = pi[static_cast<size_t>(r) - 1] * p[static_cast<size_t>(r) - 1];
        total += pi[static_cast<size_t>(r)];
    }
    double f = 0;
    for (int r = 0; r + 1 < n; ++r) f += (pi[static_cast<size_t>(r)] / total) * p[static_cast<size_t>(r)];
    return f;
}

DimensionResult dim_A_gamma(const Rat& gamma, const BetaParams& params, double tol) {
    const int n = params.order();
    const double g = gamma.get_d();
    const Rat gmax = max_digit_frequency(params);
    if (sgn(gamma) < 0 || gamma > gmax)
        throw std::domain_error("frequency outside subshift spectrum");

    DimensionResult out;
    out.gamma = gamma;
    out.lyapunov = std::log(params.beta_double());
    out.transitions.assign(static_cast<size_t>(n) - 1, 0.0);

    if (sgn(gamma) == 0 || gamma == gmax) {
        // Zero-entropy endpoints: the fixed point 0^inf, resp. the single
        // periodic orbit of (1^(n-1) 0)^inf.
        out.max_entropy = 0;
        out.dimension = 0;
        if (gamma == gmax)
            for (auto& x : out.transitions) x = 1.0;
        return out;
    }

    // Bisection on lambda; the tilted frequency is strictly increasing.
    double lam_lo = -60, lam_hi = 60;
    for (int it = 0; it < 300; ++it) {
        const double lam = 0.5 * (lam_lo + lam_hi);
        const double z = std::exp(lam);
        const double rho = tilted_radius(z, n);
        if (tilted_frequency(z, n, rho) < g)
            lam_lo = lam;
        else
            lam_hi = lam;
        if (lam_hi - lam_lo < 1e-14) break;
    }
    const double lam = 0.5 * (lam_lo + lam_hi);
    const double z = std::exp(lam);
    const double rho = tilted_radius(z, n);
    out.max_entropy = std::log(rho) - lam * g;
    out.dimension = out.max_entropy / out.lyapunov;
    out.transitions = maximizing_transitions(z, n, rho);
    (void)tol;
    return out;
}

SingularityCertificate singularity_certificate(const BetaParams& params, int omega_L) {
    SingularityCertificate cert{
        .order = params.order(),
        .bernoulli_exact = bernoulli_digit_frequency_exact(params),
        .alpha1 = parry_digit_one_frequency(params),
        .verdict = {},
    };

    const OmegaFrequency of = omega_frequency(params, omega_L);
    cert.bernoulli_lower = of.lower;
    cert.bernoulli_upper = of.upper;
    cert.alpha1_value = cert.alpha1.to_double();

    // Exact separation: sign of (bernoulli_exact - alpha1) in Q(beta).
    const FieldElement diff =
        FieldElement::from_rational(params, cert.bernoulli_exact) - cert.alpha1;
    detail::RootEnclosure enc(params);
    cert.separation_sign = detail::sign_with(enc, diff);
    cert.separated = cert.separation_sign != 0;

    // Independent check: the blockwise interval must itself avoid alpha(1).
    const FieldElement lo_diff =
        FieldElement::from_rational(params, cert.bernoulli_lower) - cert.alpha1;
    const FieldElement hi_diff =
        FieldElement::from_rational(params, cert.bernoulli_upper) - cert.alpha1;
    const int slo = lo_diff.is_zero() ? 0 : detail::sign_with(enc, lo_diff);
    const int shi = hi_diff.is_zero() ? 0 : detail::sign_with(enc, hi_diff);
    cert.interval_separated = (slo > 0 && shi > 0) || (slo < 0 && shi < 0);

    const Rat gmax = max_digit_frequency(params);
    auto clamp_feasible = [&](Rat g) {
        if (sgn(g) < 0) g = 0;
        if (g > gmax) g = gmax;
        return g;
    };
    const DimensionResult at_exact = dim_A_gamma(cert.bernoulli_exact, params);
    cert.dimension_bound = at_exact.dimension;
    if (cert.interval_separated) {
        // Entropy is concave in the frequency with its maximum at alpha(1);
        // when the interval avoids alpha(1) the supremum over it sits at an
        // endpoint.
        const DimensionResult at_lo = dim_A_gamma(clamp_feasible(cert.bernoulli_lower), params);
        const DimensionResult at_hi = dim_A_gamma(clamp_feasible(cert.bernoulli_upper), params);
        cert.dimension_bound_sup = std::max(at_lo.dimension, at_hi.dimension);
    } else {
        cert.dimension_bound_sup = 1.0;
    }

    if (!cert.separated) {
        cert.verdict = "no separation, no certificate";
    } else {
        cert.verdict = "singular, dimension bound " + std::to_string(cert.dimension_bound) +
                       " < 1";
    }
    return cert;
}

}  // namespace betafreq
