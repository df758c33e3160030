#include "s4norms/mass_tables.hpp"

#include "dyadic_table_data.hpp"

#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace s4norms {

namespace {

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ull;
  }
  return h;
}

static_assert(fnv1a(kDyadicTableText) == 0x3da4949b6f39e409ull,
              "data/dyadic_masses.txt does not match the recorded checksum");

mpq_class frac(const mpz_class& num, const mpz_class& den) {
  mpq_class x(num, den);
  x.canonicalize();
  return x;
}

}  // namespace

std::string_view to_string(UnitKind kind) {
  switch (kind) {
    case UnitKind::fourth_power: return "fourth-power";
    case UnitKind::square_not_fourth: return "square-not-fourth";
    case UnitKind::square: return "square";
    case UnitKind::nonsquare: return "nonsquare";
  }
  return "?";
}

UnitKind unit_kind_of_class(const ResidueSize& q, int c) {
  const int g = q.g();
  c = ((c % g) + g) % g;
  if (c % 2 == 1) return UnitKind::nonsquare;
  if (g == 2) return UnitKind::square;
  return c == 0 ? UnitKind::fourth_power : UnitKind::square_not_fourth;
}

int class_of_unit_kind(const ResidueSize& q, UnitKind kind) {
  if (q.is_1_mod_4()) {
    switch (kind) {
      case UnitKind::fourth_power: return 0;
      case UnitKind::square_not_fourth: return 2;
      case UnitKind::nonsquare: return 1;
      case UnitKind::square: break;
    }
  } else {
    switch (kind) {
      case UnitKind::square: return 0;
      case UnitKind::nonsquare: return 1;
      default: break;
    }
  }
  throw std::invalid_argument("unit kind '" + std::string(to_string(kind)) + "' is not a table row for q = " +
                              q.value().get_str());
}

std::vector<UnitKind> unit_kinds_for(const ResidueSize& q) {
  if (q.is_1_mod_4()) return {UnitKind::fourth_power, UnitKind::square_not_fourth, UnitKind::nonsquare};
  return {UnitKind::square, UnitKind::nonsquare};
}

Mass trivial_class_mass(const ResidueSize& q) {
  const mpz_class& x = q.value();
  return frac((x * x * x + x * x + 2 * x + 1) * (x - 1), x * x * x * x);
}

Mass odd_mass(const OddMassKey& key) {
  const ResidueSize& q = key.q;
  const int r = ((key.r_mod_4 % 4) + 4) % 4;
  (void)class_of_unit_kind(q, key.unit_kind);  // validates the row
  const mpz_class& x = q.value();
  const mpz_class x2 = x * x, x3 = x2 * x, x4 = x3 * x;
  const bool nonsquare = key.unit_kind == UnitKind::nonsquare;

  // Odd valuation: independent of u.
  if (r % 2 == 1) {
    const int c = q.is_1_mod_4() ? 2 : 4;
    return frac((5 * x3 + 8 * x2 + 11 * x + c) * (x - 1), 8 * x4);
  }
  if (nonsquare) {
    if (r == 0) return frac((4 * x2 + 4 * x + 5) * (x - 1), 4 * x3);
    return frac((3 * x2 + 4 * x + 6) * (x - 1), 4 * x3);
  }
  if (r == 0) {
    if (key.unit_kind == UnitKind::square_not_fourth) return frac((x2 + x + 2) * (x - 1), x3);
    return frac((x3 + x2 + 2 * x + 1) * (x - 1), x4);
  }
  // r = 2, square unit.
  if (q.is_1_mod_4()) return frac((x2 + x + 2) * (3 * x + 1) * (x - 1), 4 * x4);
  return frac((3 * x3 + 4 * x2 + 7 * x + 4) * (x - 1), 4 * x4);
}

std::string_view dyadic_table_text() { return kDyadicTableText; }

DyadicTable parse_dyadic_table(std::istream& in) {
  DyadicTable table{};
  bool seen[4][16] = {};
  std::size_t count = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    int r = -1, u = -1;
    std::string num, den, extra;
    if (!(ls >> r >> u >> num >> den) || (ls >> extra))
      throw std::runtime_error("dyadic table: malformed line '" + line + "'");
    if (r < 0 || r > 3 || u < 1 || u > 15 || u % 2 == 0)
      throw std::runtime_error("dyadic table: key out of range in '" + line + "'");
    if (seen[r][u]) throw std::runtime_error("dyadic table: duplicate key in '" + line + "'");
    if (count == table.size()) throw std::runtime_error("dyadic table: more than 32 entries");
    const mpq_class m = parse_rational(num + "/" + den);
    if (m <= 0) throw std::runtime_error("dyadic table: nonpositive mass in '" + line + "'");
    seen[r][u] = true;
    table[count++] = {{r, u}, m};
  }
  if (count != table.size()) throw std::runtime_error("dyadic table: expected 32 entries, got " + std::to_string(count));
  return table;
}

const DyadicTable& dyadic_table() {
  static const DyadicTable table = [] {
    std::istringstream in{std::string(kDyadicTableText)};
    return parse_dyadic_table(in);
  }();
  return table;
}

Mass dyadic_mass(const DyadicMassKey& key) {
  for (const auto& entry : dyadic_table())
    if (entry.key == key) return entry.mass;
  throw std::invalid_argument("no dyadic mass for (" + std::to_string(key.r_mod_4) + ", " +
                              std::to_string(key.u_mod_16) + ")");
}

DyadicMassKey reduce_dyadic_class(const mpq_class& alpha) {
  if (alpha == 0) throw std::invalid_argument("dyadic class of zero");
  mpz_class num = alpha.get_num();
  mpz_class den = alpha.get_den();
  long v = 0;
  v += static_cast<long>(mpz_scan1(num.get_mpz_t(), 0));
  mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(v));
  const auto vd = static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
  mpz_fdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(vd));
  v -= vd;
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(16).get_mpz_t());
  mpz_class u = num * inv;
  const auto u16 = static_cast<int>(mpz_fdiv_ui(u.get_mpz_t(), 16));
  return {static_cast<int>(((v % 4) + 4) % 4), u16};
}

Mass archimedean_mass(ArchimedeanPlace place) {
  switch (place) {
    case ArchimedeanPlace::positive_real: return mpq_class(5, 12);
    case ArchimedeanPlace::negative_real: return mpq_class(7, 24);
    case ArchimedeanPlace::complex_place: return mpq_class(1, 24);
  }
  throw std::invalid_argument("unknown archimedean place");
}

}  // namespace s4norms
