#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace s4norms {

/// Residue field size q of a nonarchimedean local field of odd residue
/// characteristic. Any odd q >= 3 is accepted; only prime powers are
/// meaningful.
class ResidueSize {
 public:
  explicit ResidueSize(const mpz_class& q);
  explicit ResidueSize(unsigned long q) : ResidueSize(mpz_class(q)) {}

  const mpz_class& value() const { return q_; }
  /// g = gcd(4, q - 1), the order of the unit part of k*/k*^4.
  int g() const { return g_; }
  bool is_1_mod_4() const { return g_ == 4; }
  /// q mod m for small m.
  unsigned long mod(unsigned long m) const;
  /// Discrete-log class of -1, i.e. (q - 1)/2 mod g.
  int minus_one_class() const { return minus_one_; }

  friend bool operator==(const ResidueSize& a, const ResidueSize& b) { return a.q_ == b.q_; }

 private:
  mpz_class q_;
  int g_ = 2;
  int minus_one_ = 1;
};

/// Class of u * pi^v in k*/k*^4 = Z/4 x Z/g, with the unit part recorded as
/// a discrete log of its residue modulo g (generator zeta -> 1).
struct ClassGroupElement {
  int v = 0;
  int c = 0;
  auto operator<=>(const ClassGroupElement&) const = default;
};

/// Reduces an arbitrary (valuation, unit log) pair into canonical ranges.
ClassGroupElement make_class(long long v, long long c, int g);

ClassGroupElement add(const ClassGroupElement& a, const ClassGroupElement& b, int g);

std::string to_string(const ClassGroupElement& x);

/// A subgroup of Z/4 x Z/g, fully materialized as a membership mask over the
/// (at most 16) group elements.
class NormGroup {
 public:
  /// Subgroup generated by `generators`; empty list gives the trivial group.
  NormGroup(int g, std::span<const ClassGroupElement> generators);
  static NormGroup full(int g);

  int g() const { return g_; }
  const std::vector<ClassGroupElement>& generators() const { return generators_; }
  std::vector<ClassGroupElement> elements() const;
  std::size_t order() const;
  /// [Z/4 x Z/g : N].
  std::size_t index() const { return static_cast<std::size_t>(4 * g_) / order(); }
  bool contains(const ClassGroupElement& x) const;

  /// Subgroup generated by the union of both groups.
  NormGroup join(const NormGroup& other) const;

  bool operator==(const NormGroup& other) const { return g_ == other.g_ && mask_ == other.mask_; }

 private:
  NormGroup(int g, std::uint16_t mask, std::vector<ClassGroupElement> generators)
      : g_(g), mask_(mask), generators_(std::move(generators)) {}
  static std::uint16_t closure(int g, std::span<const ClassGroupElement> generators);

  int g_;
  std::uint16_t mask_;
  std::vector<ClassGroupElement> generators_;
};

bool contains_class(const NormGroup& group, const ClassGroupElement& x);

}  // namespace s4norms
