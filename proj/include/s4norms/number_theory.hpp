#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace s4norms {

struct PrimePower {
  mpz_class prime;
  int exponent = 0;
};

/// Miller-Rabin/BPSW via GMP; exact below 2^64.
bool is_prime(const mpz_class& n);

/// Prime factorization of |n| (n != 0), ascending primes. Trial division by
/// small primes, then Pollard-Brent rho. Throws std::runtime_error if a
/// cofactor resists `rho_budget` iterations.
std::vector<PrimePower> factor_integer(const mpz_class& n, std::uint64_t rho_budget = 1u << 24);

/// Smallest primitive root modulo the odd prime p; memoized per prime.
mpz_class smallest_primitive_root(const mpz_class& p);

/// a^e mod m for 64-bit operands.
std::uint64_t pow_mod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Inverse of a modulo m (gcd(a, m) = 1) for 64-bit operands.
std::uint64_t inverse_mod_u64(std::uint64_t a, std::uint64_t m);

}  // namespace s4norms
