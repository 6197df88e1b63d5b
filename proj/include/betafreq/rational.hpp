#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace betafreq {

/// Exact rational number. All probability masses, coefficients and bracket
/// endpoints in this library are carried as Rat; doubles appear only in
/// Monte Carlo estimates and in reporting.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Serializes as "p" or "p/q", always in lowest terms.
inline std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

/// k / 2^bits, the dyadic grid used for exact Lebesgue sampling.
inline Rat dyadic(const mpz_class& k, unsigned bits) {
    Rat r(k);
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
    r /= Rat(den);
    r.canonicalize();
    return r;
}

inline Rat pow2(long e) {
    Rat r = 1;
    mpz_class two = 2;
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned long>(e >= 0 ? e : -e));
    if (e >= 0) return Rat(p);
    r = Rat(1) / Rat(p);
    r.canonicalize();
    return r;
}

}  // namespace betafreq
