#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mullat {

using Integer = mpz_class;
using Rational = mpq_class;

Integer parse_integer(std::string_view text);
/// Accepts "a", "-a", "a/b".
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

bool is_prime(const Integer& n);
bool is_prime(std::uint64_t n);

/// Splits n = p^k * rest with p not dividing rest. n must be nonzero; p >= 2.
std::pair<unsigned, Integer> split_prime_power(Integer n, const Integer& p);

/// n with every factor p removed; identity when p == 0.
Integer strip_prime(const Integer& n, std::uint64_t p);

/// Prime factorization of |n| (n != 0) sorted by prime.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);

/// Positive divisors of n > 0, ascending.
std::vector<Integer> divisors(const Integer& n);

Integer pow(const Integer& base, unsigned exp);
Rational pow(const Rational& base, long exp);

/// Inverse of a modulo m (m >= 2, gcd(a, m) = 1).
Integer inverse_mod(const Integer& a, const Integer& m);

/// Representative of a in [0, m).
Integer mod(const Integer& a, const Integer& m);

bool fits_int64(const Integer& v);

}  // namespace mullat
