#pragma once

// Local data of a rational number at the primes of Q: valuations, classes in
// Q_p*/Q_p*^4 and the finite set of places where a generator can fail to be
// a norm from every unramified-or-mildly-ramified algebra.

#include "s4norms/class_group.hpp"
#include "s4norms/mass_tables.hpp"
#include "s4norms/number_theory.hpp"

#include <gmpxx.h>

#include <string_view>
#include <vector>

namespace s4norms {

/// Nonzero rational with its numerator and denominator fully factored.
class RationalInput {
 public:
  /// Throws std::invalid_argument on zero, or when the numerator or
  /// denominator exceeds `max_bits` bits.
  explicit RationalInput(const mpq_class& value, unsigned max_bits = 128);
  static RationalInput parse(std::string_view text, unsigned max_bits = 128);

  const mpq_class& value() const { return value_; }
  int sign() const { return sgn(value_); }
  const std::vector<PrimePower>& numerator_factors() const { return num_; }
  const std::vector<PrimePower>& denominator_factors() const { return den_; }

  /// v_p(alpha) for any prime p.
  long valuation(const mpz_class& p) const;
  /// True iff alpha is in Q*^4: positive with every valuation divisible by 4.
  bool is_rational_fourth_power() const;

 private:
  mpq_class value_;
  std::vector<PrimePower> num_;
  std::vector<PrimePower> den_;
};

/// (v_p(alpha) mod 4, class of the unit part alpha p^{-v} mod p in
/// F_p*/F_p*^g), using the smallest primitive root of p as the generator
/// (or `generator`, when given, which must be a primitive root).
ClassGroupElement local_class(const RationalInput& alpha, const mpz_class& p);
ClassGroupElement local_class(const RationalInput& alpha, const mpz_class& p, const mpz_class& generator);

/// Unit residue alpha p^{-v_p(alpha)} mod p, in [1, p).
mpz_class unit_residue(const RationalInput& alpha, const mpz_class& p);

/// Euler-criterion classification of the unit part of alpha at p.
UnitKind unit_kind(const RationalInput& alpha, const mpz_class& p);

/// Exceptional places: 2, infinity, and every odd p with 4 not dividing v_p(alpha_i)
/// for some generator.
struct ExceptionalSet {
  std::vector<mpz_class> odd_primes;  // ascending
  bool contains_two = true;
  bool contains_infinity = true;

  /// All finite primes, ascending (2 first).
  std::vector<mpz_class> finite_primes() const;
  bool contains(const mpz_class& p) const;
};

ExceptionalSet exceptional_set(const std::vector<RationalInput>& generators);

}  // namespace s4norms
