#pragma once

// Closed-form local masses m_{alpha,p}: polynomial tables in q for odd
// residue size, literal data for Q_2, and the archimedean values.

#include "s4norms/class_group.hpp"
#include "s4norms/rational.hpp"

#include <array>
#include <iosfwd>
#include <string_view>

namespace s4norms {

/// Status of the unit part u mod p. For q = 3 (mod 4) every square is a
/// fourth power and only `square` / `nonsquare` are meaningful; for
/// q = 1 (mod 4) only `fourth_power` / `square_not_fourth` / `nonsquare`.
enum class UnitKind { fourth_power, square_not_fourth, square, nonsquare };

std::string_view to_string(UnitKind kind);

struct OddMassKey {
  ResidueSize q;
  int r_mod_4 = 0;
  UnitKind unit_kind = UnitKind::fourth_power;
};

/// Unit kind of the discrete-log class c (mod g) for residue size q.
UnitKind unit_kind_of_class(const ResidueSize& q, int c);

/// A representative class (mod g) of the given kind. Throws if the kind does
/// not exist for q.
int class_of_unit_kind(const ResidueSize& q, UnitKind kind);

/// The unit kinds that index table rows for q, in table order.
std::vector<UnitKind> unit_kinds_for(const ResidueSize& q);

/// Table entry for (q, r mod 4, unit kind). Throws std::invalid_argument for
/// a kind that is not a row of the table for q.
Mass odd_mass(const OddMassKey& key);

/// m_{1,p} = (q^3 + q^2 + 2q + 1)(q - 1)/q^4.
Mass trivial_class_mass(const ResidueSize& q);

struct DyadicMassKey {
  int r_mod_4 = 0;
  int u_mod_16 = 1;
  auto operator<=>(const DyadicMassKey&) const = default;
};

struct DyadicEntry {
  DyadicMassKey key;
  Mass mass;
};

using DyadicTable = std::array<DyadicEntry, 32>;

/// Text of the shipped table file, 32 lines "r u numerator denominator".
std::string_view dyadic_table_text();

/// Parses and validates the table file format: exactly 32 lines, every
/// (r, u) with r in 0..3 and odd u in 1..15 once, positive fractions.
DyadicTable parse_dyadic_table(std::istream& in);

/// The built-in table, parsed once from the embedded file text.
const DyadicTable& dyadic_table();

Mass dyadic_mass(const DyadicMassKey& key);

/// (v_2(alpha) mod 4, odd part of alpha mod 16). Throws on alpha == 0.
DyadicMassKey reduce_dyadic_class(const mpq_class& alpha);

enum class ArchimedeanPlace { positive_real, negative_real, complex_place };

Mass archimedean_mass(ArchimedeanPlace place);

}  // namespace s4norms
