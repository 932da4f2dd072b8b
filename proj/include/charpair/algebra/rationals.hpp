#pragma once

// Arbitrary-precision integer and rational coefficient rings.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

#include "charpair/error.hpp"

namespace charpair {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline bool is_zero(const BigInt& a) { return a.is_zero(); }
inline bool is_zero(const Rational& a) { return a.is_zero(); }

inline std::string to_string(const BigInt& a) { return a.str(); }

/// Rationals print as "num/den", integral values as "num".
inline std::string to_string(const Rational& a) {
    const BigInt num = boost::multiprecision::numerator(a);
    const BigInt den = boost::multiprecision::denominator(a);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational inverse(const Rational& a) {
    if (a.is_zero()) throw DomainError("division by zero in QQ");
    return Rational(1) / a;
}

inline bool is_probable_prime_small(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// The ring of integers. Stateless handle.
struct IntegerRing {
    using value_type = BigInt;
    static constexpr bool is_field = false;

    BigInt zero() const { return BigInt(0); }
    BigInt one() const { return BigInt(1); }
    BigInt from_int(std::int64_t n) const { return BigInt(n); }
    BigInt from_integer(const BigInt& n) const { return n; }
    std::int64_t characteristic() const { return 0; }
    std::string name() const { return "ZZ"; }
    friend bool operator==(const IntegerRing&, const IntegerRing&) { return true; }
};

/// The field of rational numbers. Stateless handle.
struct RationalField {
    using value_type = Rational;
    static constexpr bool is_field = true;

    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational from_int(std::int64_t n) const { return Rational(n); }
    Rational from_integer(const BigInt& n) const { return Rational(n); }
    std::int64_t characteristic() const { return 0; }
    std::string name() const { return "QQ"; }
    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

}  // namespace charpair
