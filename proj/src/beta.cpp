#include "betafreq/beta.hpp"

#include <stdexcept>
#include <string>

namespace betafreq {

namespace {

std::vector<Rat> multinacci_poly(int order) {
    std::vector<Rat> poly(static_cast<size_t>(order) + 1, Rat(-1));
    poly[static_cast<size_t>(order)] = 1;
    return poly;
}

Rat poly_eval(const std::vector<Rat>& poly, const Rat& x) {
    Rat acc = 0;
    for (size_t i = poly.size(); i-- > 0;) {
        acc = acc * x + poly[i];
        acc.canonicalize();
    }
    return acc;
}

}  // namespace

namespace detail {

int min_poly_sign(const BetaParams& params, const Rat& x) {
    return sgn(poly_eval(params.min_poly(), x));
}

RootEnclosure::RootEnclosure(const BetaParams& params)
    : params_(params), lo_(params.enclosure_low()), hi_(params.enclosure_high()) {}

void RootEnclosure::refine_once() {
    Rat mid = (lo_ + hi_) / 2;
    mid.canonicalize();
    // p(lo) < 0 < p(hi) is an invariant of every enclosure we construct.
    if (min_poly_sign(params_, mid) < 0)
        lo_ = mid;
    else
        hi_ = mid;
}

void RootEnclosure::refine_to_width(const Rat& width) {
    while (hi_ - lo_ > width) refine_once();
}

int RootEnclosure::certify_sign(std::span<const Rat> coeffs, int max_bisections) {
    for (int iter = 0; iter <= max_bisections; ++iter) {
        // Powers of beta are monotone on [lo, hi] since lo >= 1.
        Rat plo = 1, phi = 1;
        Rat sum_min = 0, sum_max = 0;
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (i > 0) {
                plo *= lo_;
                phi *= hi_;
            }
            const int s = sgn(coeffs[i]);
            if (s > 0) {
                sum_min += coeffs[i] * plo;
                sum_max += coeffs[i] * phi;
            } else if (s < 0) {
                sum_min += coeffs[i] * phi;
                sum_max += coeffs[i] * plo;
            }
        }
        if (sgn(sum_min) > 0) return 1;
        if (sgn(sum_max) < 0) return -1;
        refine_once();
    }
    throw std::runtime_error("sign certification did not separate (zero element?)");
}

}  // namespace detail

BetaParams BetaParams::multinacci(int order) {
    if (order < 2) throw std::invalid_argument("multinacci order must be >= 2");
    if (order > 32) throw std::invalid_argument("multinacci order above 32 not supported");
    auto impl = std::make_shared<Impl>();
    impl->order = order;
    impl->poly = multinacci_poly(order);

    // p(3/2) = 2 - (3/2)^n < 0 for all n >= 2 and p(2) = 1 > 0, so [3/2, 2]
    // brackets the root; all other roots of the multinacci polynomial lie in
    // the open unit disk, hence the bracket isolates it. Bisect until the
    // enclosure is strictly inside (1, 2) and at the width target.
    impl->lo = rat(3, 2);
    impl->hi = rat(2);
    impl->precision = pow2(-64);
    {
        std::vector<Rat>& poly = impl->poly;
        auto sign_at = [&poly](const Rat& x) { return sgn(poly_eval(poly, x)); };
        while (impl->hi - impl->lo > impl->precision || impl->hi >= 2) {
            Rat mid = (impl->lo + impl->hi) / 2;
            mid.canonicalize();
            if (sign_at(mid) < 0)
                impl->lo = mid;
            else
                impl->hi = mid;
        }
    }
    impl->beta_d = (impl->lo.get_d() + impl->hi.get_d()) / 2;
    return BetaParams(std::move(impl));
}

BetaParams BetaParams::from_min_poly(const std::vector<long>& coeffs) {
    if (coeffs.size() < 3)
        throw std::invalid_argument("not supported: polynomial degree below 2");
    const int order = static_cast<int>(coeffs.size()) - 1;
    if (coeffs[static_cast<size_t>(order)] != 1)
        throw std::invalid_argument("not supported: polynomial is not monic");
    for (int i = 0; i < order; ++i)
        if (coeffs[static_cast<size_t>(i)] != -1)
            throw std::invalid_argument(
                "not supported: only multinacci minimal polynomials are accepted");
    return multinacci(order);
}

}  // namespace betafreq
