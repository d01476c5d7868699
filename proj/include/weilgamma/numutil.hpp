#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace weilgamma {

using Int = mpz_class;
using Rat = mpq_class;

long gcd_long(long a, long b);
long lcm_long(long a, long b);
bool is_prime_long(long n);

// n > 0 as sorted (prime, exponent) pairs.
std::vector<std::pair<long, long>> factorize_long(long n);

long euler_phi(long n);
long pow_mod_long(long base, long exp, long mod);

// multiplicative order of a modulo m; requires gcd(a, m) = 1
long mul_order(long a, long m);

// Returns a mod m in [0, m).
long mod_floor(long a, long m);

// Cyclotomic polynomial over the integers, constant coefficient first,
// monic of degree phi(m). Cached and thread-safe.
const std::vector<Int>& cyclotomic_poly(long m);

long smallest_primitive_root(long ell);

// Lexicographically smallest (by value of sum c_i ell^i over the non-leading
// coefficients) monic primitive polynomial of degree r over F_ell, constant
// coefficient first, size r+1. Its root generates F_{ell^r}^x.
const std::vector<long>& ff_defining_poly(long ell, long r);

Rat make_rat(const Int& num, const Int& den);

} // namespace weilgamma
