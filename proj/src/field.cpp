#include "betafreq/field.hpp"

#include <sstream>
#include <stdexcept>

namespace betafreq {

namespace {

// Folds entries of degree >= n down through beta^n = beta^{n-1} + ... + 1.
void reduce_in_place(std::vector<Rat>& c, int order) {
    const size_t n = static_cast<size_t>(order);
    for (size_t k = c.size(); k-- > n;) {
        if (sgn(c[k]) == 0) continue;
        Rat t = std::move(c[k]);
        c[k] = 0;
        for (size_t j = 1; j <= n; ++j) c[k - j] += t;
    }
    c.resize(n);
}

void canon(std::vector<Rat>& c) {
    for (auto& x : c) x.canonicalize();
}

// Polynomial helpers over Q[x] for the extended gcd behind inverse().
using Poly = std::vector<Rat>;

void poly_trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    canon(out);
    poly_trim(out);
    return out;
}

Poly poly_sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    canon(a);
    poly_trim(a);
    return a;
}

// Euclidean division: returns quotient, leaves remainder in a.
Poly poly_divmod(Poly& a, const Poly& b) {
    Poly q;
    if (a.size() < b.size()) return q;
    q.assign(a.size() - b.size() + 1, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat factor = a.back() / b.back();
        factor.canonicalize();
        size_t shift = a.size() - b.size();
        q[shift] = factor;
        for (size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= factor * b[i];
            a[shift + i].canonicalize();
        }
        poly_trim(a);
        if (a.size() <= shift) break;
    }
    poly_trim(q);
    return q;
}

}  // namespace

FieldElement::FieldElement(const BetaParams& params, std::vector<Rat> coeffs)
    : params_(params), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() > static_cast<size_t>(params_.order()))
        reduce_in_place(coeffs_, params_.order());
    coeffs_.resize(static_cast<size_t>(params_.order()), Rat(0));
    canon(coeffs_);
}

FieldElement FieldElement::zero(const BetaParams& params) {
    return FieldElement(params, {});
}

FieldElement FieldElement::one(const BetaParams& params) {
    return FieldElement(params, {Rat(1)});
}

FieldElement FieldElement::beta(const BetaParams& params) {
    return FieldElement(params, {Rat(0), Rat(1)});
}

FieldElement FieldElement::from_rational(const BetaParams& params, const Rat& r) {
    return FieldElement(params, {r});
}

FieldElement FieldElement::beta_inverse(const BetaParams& params) {
    // Divide beta^n = beta^{n-1} + ... + 1 by beta^n and rearrange.
    std::vector<Rat> c(static_cast<size_t>(params.order()), Rat(-1));
    c.back() = 1;
    return FieldElement(params, std::move(c));
}

bool FieldElement::is_zero() const {
    for (const auto& c : coeffs_)
        if (sgn(c) != 0) return false;
    return true;
}

bool FieldElement::operator==(const FieldElement& other) const {
    return coeffs_ == other.coeffs_;
}

FieldElement FieldElement::operator-() const {
    std::vector<Rat> c = coeffs_;
    for (auto& x : c) x = -x;
    return FieldElement(params_, std::move(c));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    std::vector<Rat> c = a.coeffs_;
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
    return FieldElement(a.params_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    std::vector<Rat> c = a.coeffs_;
    for (size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs_[i];
    return FieldElement(a.params_, std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const size_t n = a.coeffs_.size();
    std::vector<Rat> c(2 * n - 1, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (size_t j = 0; j < n; ++j) {
            if (sgn(b.coeffs_[j]) == 0) continue;
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return FieldElement(a.params_, std::move(c));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inverse();
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(beta)");
    // Extended Euclid in Q[x] against the (irreducible) minimal polynomial:
    // find u with u * this == 1 (mod min_poly).
    Poly r0 = params_.min_poly();
    Poly r1 = coeffs_;
    poly_trim(r1);
    Poly s0 = {};          // coefficient of `this` in r0
    Poly s1 = {Rat(1)};    // coefficient of `this` in r1
    while (!r1.empty()) {
        Poly rem = r0;
        Poly q = poly_divmod(rem, r1);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is now a nonzero constant gcd (min_poly is irreducible).
    if (r0.size() != 1) throw std::logic_error("gcd with minimal polynomial not constant");
    Rat inv_g = Rat(1) / r0[0];
    inv_g.canonicalize();
    for (auto& c : s0) {
        c *= inv_g;
        c.canonicalize();
    }
    return FieldElement(params_, std::move(s0));
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement acc = one(params_);
    FieldElement base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1UL) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

FieldElement FieldElement::operator*(const Rat& r) const {
    std::vector<Rat> c = coeffs_;
    for (auto& x : c) x *= r;
    return FieldElement(params_, std::move(c));
}

FieldElement FieldElement::operator+(const Rat& r) const {
    std::vector<Rat> c = coeffs_;
    c[0] += r;
    return FieldElement(params_, std::move(c));
}

FieldElement FieldElement::operator-(const Rat& r) const {
    std::vector<Rat> c = coeffs_;
    c[0] -= r;
    return FieldElement(params_, std::move(c));
}

double FieldElement::to_double() const {
    detail::RootEnclosure enc(params_);
    enc.refine_to_width(pow2(-80));
    // Monotone interval evaluation; midpoint of the exact bounds.
    Rat plo = 1, phi = 1, lo = 0, hi = 0;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i > 0) {
            plo *= enc.low();
            phi *= enc.high();
        }
        if (sgn(coeffs_[i]) >= 0) {
            lo += coeffs_[i] * plo;
            hi += coeffs_[i] * phi;
        } else {
            lo += coeffs_[i] * phi;
            hi += coeffs_[i] * plo;
        }
    }
    Rat mid = (lo + hi) / 2;
    mid.canonicalize();
    return mid.get_d();
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i > 0) os << " + ";
        os << rat_to_string(coeffs_[i]);
        if (i == 1) os << " b";
        if (i > 1) os << " b^" << i;
    }
    return os.str();
}

Ordering compare(const FieldElement& a, const FieldElement& b) {
    detail::RootEnclosure enc(a.params());
    return detail::compare_with(enc, a, b);
}

namespace detail {

Ordering compare_with(RootEnclosure& enc, const FieldElement& a, const FieldElement& b) {
    if (a == b) return Ordering::equal;
    const FieldElement d = a - b;
    return sign_with(enc, d) > 0 ? Ordering::greater : Ordering::less;
}

int sign_with(RootEnclosure& enc, const FieldElement& a) {
    if (a.is_zero()) return 0;
    return enc.certify_sign(a.coeffs());
}

}  // namespace detail

FieldElement evaluate_word(std::span<const std::uint8_t> w, const BetaParams& params) {
    const size_t n = static_cast<size_t>(params.order());
    // Horner scan: acc <- acc * beta + w_i, with multiply-by-beta done as a
    // coefficient shift plus one reduction step. Coefficients stay integral.
    std::vector<Rat> acc(n + 1, Rat(0));
    for (std::uint8_t bit : w) {
        for (size_t i = n; i-- > 0;) acc[i + 1] = std::move(acc[i]);
        acc[0] = 0;
        if (sgn(acc[n]) != 0) {
            Rat t = std::move(acc[n]);
            acc[n] = 0;
            for (size_t j = 0; j < n; ++j) acc[j] += t;
        }
        if (bit) acc[0] += 1;
    }
    acc.resize(n);
    FieldElement scaled(params, std::move(acc));
    return scaled * FieldElement::beta_inverse(params).pow(static_cast<long>(w.size()));
}

}  // namespace betafreq
