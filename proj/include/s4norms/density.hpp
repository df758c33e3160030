#pragma once

// Global assembly over Q: the density lim N(X; A)/X and the proportion
// lim N(X; A)/N(X) as Euler products of local masses, truncated at a prime
// cutoff B with a rigorous bracket on everything omitted.

#include "s4norms/globalizer.hpp"
#include "s4norms/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace s4norms {

struct MassInterval {
  Mass lower;
  Mass upper;

  bool is_exact() const { return lower == upper; }
  static MassInterval exact(const Mass& m) { return {m, m}; }
};

/// Exact contribution of one exceptional place.
struct PlaceFactor {
  std::string place;  // "inf", "2", or the odd prime
  MassInterval factor;
};

struct DensityEstimate {
  double value = 0;
  double abs_error = 0;
  /// Decimal renderings from the extended-precision accumulator; abs_error
  /// is rounded upward.
  std::string value_text;
  std::string abs_error_text;
  /// Exact product over the exceptional places (an interval when the dyadic
  /// factor is only bracketed).
  MassInterval finite_part;
  std::vector<PlaceFactor> exceptional_factors;
  std::uint64_t cutoff = 0;
  std::uint64_t primes_sieved = 0;
  /// True when every factor beyond the exceptional places is exactly 1.
  bool exact = false;
};

struct DensityOptions {
  std::uint64_t cutoff = 1'000'000;
  std::optional<std::filesystem::path> sieve_cache;
};

constexpr std::uint64_t kMinCutoff = 100;

/// Lower bound for any dyadic mass: the mass of the trivial symbols at q = 2.
Mass dyadic_trivial_mass();

/// m_{alpha,p} / m_{1,p} at an odd prime, from the tables.
mpq_class ratio_factor(const RationalInput& alpha, const mpz_class& p);

/// Mass of the subgroup generated by `generators` at an odd prime, by enumeration.
Mass subgroup_local_mass_odd(const mpz_class& p, const std::vector<RationalInput>& generators);

/// Dyadic table value when one generator's dyadic class generates all the others
/// in Q_2*/Q_2*^4, otherwise [11/16, min_i dyadic_mass(class_i)].
MassInterval dyadic_subgroup_mass(const std::vector<RationalInput>& generators);

/// Archimedean mass of the subgroup: 5/12 if every generator is positive, else 7/24.
Mass archimedean_subgroup_mass(const std::vector<RationalInput>& generators);

/// prod_p m_{A,p}/m_{1,p}. Throws std::invalid_argument for cutoff < 100 or no generators.
DensityEstimate proportion(const std::vector<RationalInput>& generators, const DensityOptions& options = {});

/// (1/2) prod_p m_{A,p} (Res zeta_Q = 1).
DensityEstimate absolute_density(const std::vector<RationalInput>& generators, const DensityOptions& options = {});

/// Rational upper bound sum_{n<=64} 1/n^2 + 2/129 for zeta(2).
Mass zeta2_upper_bound();

/// (1/2) zeta_S(2) prod_{p in S} m_{alpha,p}, with zeta_S(2) bounded above by
/// zeta2_upper_bound() * prod_{p in S finite} (1 - p^-2).
Mass density_upper_bound(const RationalInput& alpha);

}  // namespace s4norms
