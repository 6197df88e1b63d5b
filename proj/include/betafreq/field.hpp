#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "betafreq/beta.hpp"
#include "betafreq/rational.hpp"

namespace betafreq {

enum class Ordering { less, equal, greater };

/**
 * Exact element of Q(beta), stored as rational coefficients
 * c0 + c1*beta + ... + c_{n-1}*beta^{n-1} reduced modulo the minimal
 * polynomial. Two elements are equal as real numbers iff their coefficient
 * vectors are equal, because the defining polynomial is minimal.
 *
 * Values are immutable after construction and safe to share across threads.
 */
class FieldElement {
public:
    FieldElement(const BetaParams& params, std::vector<Rat> coeffs);

    static FieldElement zero(const BetaParams& params);
    static FieldElement one(const BetaParams& params);
    static FieldElement beta(const BetaParams& params);
    static FieldElement from_rational(const BetaParams& params, const Rat& r);
    /// beta^(-1), with integer coefficients beta^{n-1} - beta^{n-2} - ... - 1.
    static FieldElement beta_inverse(const BetaParams& params);

    const std::vector<Rat>& coeffs() const { return coeffs_; }
    const BetaParams& params() const { return params_; }

    bool is_zero() const;
    bool operator==(const FieldElement& other) const;
    bool operator!=(const FieldElement& other) const { return !(*this == other); }

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    /// Throws std::domain_error on division by zero.
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);

    FieldElement inverse() const;
    FieldElement pow(long e) const;

    FieldElement operator*(const Rat& r) const;
    FieldElement operator+(const Rat& r) const;
    FieldElement operator-(const Rat& r) const;

    /// Double approximation (reporting only), correct to ~1e-16 relative.
    double to_double() const;

    /// "c0 + c1 b + c2 b^2" with exact rational coefficients.
    std::string to_string() const;

private:
    BetaParams params_;
    std::vector<Rat> coeffs_;
};

/// Certified real-number ordering: exact coefficient equality first, then
/// interval refinement of the root enclosure until the sign separates.
Ordering compare(const FieldElement& a, const FieldElement& b);

namespace detail {
/// Same as compare but reusing a caller-held enclosure for refinement.
Ordering compare_with(RootEnclosure& enc, const FieldElement& a, const FieldElement& b);
int sign_with(RootEnclosure& enc, const FieldElement& a);
}  // namespace detail

/**
 * Exact value sum_{i=1..|w|} w_i beta^{-i} of a finite 0/1 word, computed as
 * an integer combination of beta powers divided by beta^{|w|}.
 */
FieldElement evaluate_word(std::span<const std::uint8_t> w, const BetaParams& params);

}  // namespace betafreq
