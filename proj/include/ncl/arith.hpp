#pragma once

#include <cstdint>
#include <vector>

namespace ncl {

// Small integer helpers. Everything here works on desk-scale values.

bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Positive divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// base^exp, or 0 if the result exceeds limit.
std::uint64_t ipow_bounded(std::uint64_t base, unsigned exp, std::uint64_t limit);

std::int64_t mod_reduce(std::int64_t a, std::int64_t m);

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m);

/// Inverse of a modulo m, or 0 if gcd(a, m) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

std::int64_t mod_pow(std::int64_t a, std::uint64_t e, std::int64_t m);

/// Product of the distinct primes dividing m.
std::int64_t radical(std::int64_t m);

/// Moebius function.
int moebius(std::uint64_t n);

} // namespace ncl
