#pragma once

#include "cmap/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace cmap {

// Trial-division bound. Composites whose prime factors all exceed this are
// rejected with factor_too_large rather than silently stalling.
inline constexpr std::int64_t sieve_bound = 1'000'000;

// Largest cofactor accepted as a prime after trial division up to
// sieve_bound: below this bound, a cofactor with no prime factor up to
// sieve_bound must itself be prime.
inline constexpr std::int64_t prime_cofactor_bound = sieve_bound * sieve_bound;

// Primes up to sieve_bound, ascending. Built once, then read-only.
const std::vector<std::int32_t>& small_primes();

bool is_small_prime(std::int64_t p);

// Prime factorization of |n|, n != 0, primes ascending.
std::map<std::int64_t, int> factorize(const big_int& n);

// Signed factorization of a nonzero rational: exponents of the numerator
// minus exponents of the denominator.
std::map<std::int64_t, int> factorize(const rational& q);

} // namespace cmap
