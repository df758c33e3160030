#pragma once

// Brute-force side of the local mass computation: every quartic etale algebra
// over a local field with odd residue size q is listed explicitly, its norm
// group is computed from the norms of a uniformiser and of the roots of
// unity, and masses are summed algebra by algebra. Nothing here consults the
// closed-form tables.

#include "s4norms/class_group.hpp"
#include "s4norms/rational.hpp"
#include "s4norms/symbol.hpp"

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace s4norms {

/// Field component F_f(beta), beta^e = zeta_{q^f-1}^j * pi, where F_f is the
/// unramified extension of degree f. j is the least member of its Frobenius
/// orbit in [0, gcd(e, q^f - 1)).
struct TameComponent {
  int e = 1;
  int f = 1;
  int j = 0;
  auto operator<=>(const TameComponent&) const = default;
};

class TameEtaleAlgebra {
 public:
  /// Components are sorted; throws unless sum e*f == 4 and every j is a valid
  /// orbit representative for q.
  TameEtaleAlgebra(ResidueSize q, std::vector<TameComponent> components);

  const ResidueSize& q() const { return q_; }
  const std::vector<TameComponent>& components() const { return components_; }
  SplittingSymbol symbol() const;
  int disc_exponent() const;
  /// #Aut(L/k): product of component automorphism counts times the
  /// permutations of identical components.
  long aut_count() const;
  std::string to_string() const;

  bool operator==(const TameEtaleAlgebra& other) const {
    return q_ == other.q_ && components_ == other.components_;
  }

 private:
  ResidueSize q_;
  std::vector<TameComponent> components_;
};

/// gcd(e, q^f - 1): number of ramification twists of F_f.
int twist_count(const ResidueSize& q, int e, int f);

/// Isomorphism classes of degree e*f tame fields with invariants (e, f),
/// as orbit representatives j.
std::vector<int> component_twists(const ResidueSize& q, int e, int f);

/// #Aut(F_f(beta)/F) = #{k in [0, f) : j (q^k - 1) = 0 mod gcd(e, q^f - 1)} * gcd(e, q^f - 1).
long component_aut_count(const ResidueSize& q, const TameComponent& comp);

/// Every isomorphism class with splitting symbol sigma, duplicate-free.
std::vector<TameEtaleAlgebra> enumerate_tame_algebras(const ResidueSize& q, const SplittingSymbol& sigma);

/// All quartic tame algebras over the field, symbol by symbol in all_quartic_symbols() order.
std::vector<TameEtaleAlgebra> enumerate_all_tame_algebras(const ResidueSize& q);

NormGroup component_norm_group(const ResidueSize& q, const TameComponent& comp);

/// N_{L/k}(L*) k*^4 / k*^4; the join of the component norm groups.
NormGroup norm_group(const TameEtaleAlgebra& algebra);

/// ((q-1)/q) * sum of 1/(q^disc * #Aut) over algebras whose norm group
/// contains every class. Pass {(0,0)} for the unconstrained mass.
Mass oracle_local_mass(const ResidueSize& q, std::span<const ClassGroupElement> classes);

/// Same sum without the (q-1)/q factor, restricted to one symbol.
Mass oracle_symbol_pre_mass(const ResidueSize& q, const SplittingSymbol& sigma,
                            std::span<const ClassGroupElement> classes);

}  // namespace s4norms
