#pragma once

#include "s4norms/class_group.hpp"
#include "s4norms/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace s4norms {

/// One factor f^e of a splitting symbol: inertia degree f, ramification index e.
struct SymbolPart {
  int f = 1;
  int e = 1;
  auto operator<=>(const SymbolPart&) const = default;
};

/// Splitting symbol (f1^e1 ... fr^er) of a quartic etale algebra, kept in
/// canonical order (descending e, then descending f) so that permuted
/// spellings compare equal.
class SplittingSymbol {
 public:
  /// Throws std::invalid_argument unless every part is positive and sum e*f == 4.
  explicit SplittingSymbol(std::vector<SymbolPart> parts);

  const std::vector<SymbolPart>& parts() const { return parts_; }
  int degree() const;

  /// Full norm group for every algebra with this symbol.
  bool is_trivial() const;
  /// (1^2 1^2), (2^2) or (1^4).
  bool is_overramified() const;

  /// e.g. "(1^2 2)".
  std::string to_string() const;

  auto operator<=>(const SplittingSymbol&) const = default;

 private:
  std::vector<SymbolPart> parts_;
};

/// Parses "1^2 2", "(1^2 1^2)", "2 1 1", "1111" (single-digit parts may be run together).
SplittingSymbol parse_symbol(const std::string& text);

/// The 11 quartic symbols in the order (1111), (112), (13), (22), (4),
/// (1^2 11), (1^2 2), (1^2 1^2), (2^2), (1^3 1), (1^4).
const std::vector<SplittingSymbol>& all_quartic_symbols();

/// Exponent sum f_i (e_i - 1) of q in the tame discriminant.
int disc_exponent(const SplittingSymbol& sigma);

/// (prod f_i) * #{permutations of the parts fixing the multiset}.
long aut_count(const SplittingSymbol& sigma);

/// 1 / (q^disc_exponent * aut_count): pre-mass of all algebras with symbol sigma.
Mass symbol_pre_mass(const SplittingSymbol& sigma, const ResidueSize& q);

}  // namespace s4norms
