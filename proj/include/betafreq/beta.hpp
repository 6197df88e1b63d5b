#pragma once

#include <memory>
#include <span>
#include <vector>

#include "betafreq/rational.hpp"

namespace betafreq {

/**
 * A multinacci base: the unique root beta in (1,2) of
 *
 *     x^n - x^(n-1) - ... - x - 1 = 0,   n >= 2.
 *
 * n = 2 is the golden mean, n = 3 the tribonacci number. The root is never
 * materialized as a float; the object carries the minimal polynomial plus a
 * certified rational enclosure of the root, which comparison routines refine
 * on demand (locally - a BetaParams is immutable and safe to share across
 * threads).
 *
 * Only multinacci polynomials are accepted. Other Pisot or algebraic bases
 * are out of scope and explicitly rejected at construction.
 */
class BetaParams {
public:
    static BetaParams multinacci(int order);

    /// Accepts integer coefficients c[0..n] of c[n] x^n + ... + c[0] and
    /// requires them to be exactly the multinacci polynomial; anything else
    /// throws std::invalid_argument("not supported: ...").
    static BetaParams from_min_poly(const std::vector<long>& coeffs);

    int order() const { return impl_->order; }

    /// Monic minimal polynomial, index i = coefficient of x^i, degree = order.
    const std::vector<Rat>& min_poly() const { return impl_->poly; }

    /// Certified enclosure [low, high] of beta, inside (1, 2), containing
    /// exactly one root of min_poly.
    const Rat& enclosure_low() const { return impl_->lo; }
    const Rat& enclosure_high() const { return impl_->hi; }

    /// Width target the stored enclosure was refined to at construction.
    const Rat& precision() const { return impl_->precision; }

    bool same_field(const BetaParams& other) const {
        return impl_ == other.impl_ || impl_->order == other.impl_->order;
    }

    /// Double approximation of beta (for reporting and Monte Carlo only).
    double beta_double() const { return impl_->beta_d; }

private:
    struct Impl {
        int order;
        std::vector<Rat> poly;
        Rat lo, hi;
        Rat precision;
        double beta_d;
    };
    explicit BetaParams(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

namespace detail {

/// Sign of min_poly(x) at an exact rational point.
int min_poly_sign(const BetaParams& params, const Rat& x);

/**
 * A locally refinable copy of the root enclosure. Comparison-heavy loops
 * (greedy orbits, cylinder enumeration) keep one of these so precision
 * gained for one sign certificate is reused for the next; the shared
 * BetaParams is never mutated.
 */
class RootEnclosure {
public:
    explicit RootEnclosure(const BetaParams& params);

    const Rat& low() const { return lo_; }
    const Rat& high() const { return hi_; }

    void refine_once();
    void refine_to_width(const Rat& width);

    /**
     * Certified sign of sum_i coeffs[i] * beta^i. The caller must rule out
     * the zero element (identically zero coefficients) beforehand; for a
     * nonzero element interval refinement always separates, but a hard cap
     * of max_bisections guards against misuse and throws std::runtime_error.
     */
    int certify_sign(std::span<const Rat> coeffs, int max_bisections = 4096);

private:
    BetaParams params_;
    Rat lo_, hi_;
};

}  // namespace detail
}  // namespace betafreq
