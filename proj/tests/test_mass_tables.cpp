#include "s4norms/mass_tables.hpp"
#include "s4norms/tame.hpp"

#include <doctest.h>

#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace s4norms;

namespace {

mpq_class frac(long n, long d) { return mpq_class(n, d); }

std::string table_with_line_replaced(int index, const std::string& line) {
  std::istringstream in{std::string(dyadic_table_text())};
  std::string out, l;
  for (int i = 0; std::getline(in, l); ++i) out += (i == index ? line : l) + "\n";
  return out;
}

}  // namespace

TEST_CASE("odd tables: spot values") {
  CHECK(odd_mass({ResidueSize(5), 0, UnitKind::fourth_power}) == frac(644, 625));
  CHECK(odd_mass({ResidueSize(5), 0, UnitKind::nonsquare}) == 1);
  CHECK(odd_mass({ResidueSize(3), 1, UnitKind::square}) == frac(61, 81));
  CHECK(odd_mass({ResidueSize(7), 1, UnitKind::square}) == frac(1641, 2401));
  CHECK(trivial_class_mass(ResidueSize(5)) == frac(644, 625));
  // The valuation is only read mod 4.
  CHECK(odd_mass({ResidueSize(5), 4, UnitKind::nonsquare}) == odd_mass({ResidueSize(5), 0, UnitKind::nonsquare}));
  CHECK(odd_mass({ResidueSize(7), -1, UnitKind::square}) == odd_mass({ResidueSize(7), 3, UnitKind::square}));
}

TEST_CASE("odd tables: rows that do not exist are rejected") {
  CHECK_THROWS_AS(odd_mass({ResidueSize(7), 0, UnitKind::square_not_fourth}), std::invalid_argument);
  CHECK_THROWS_AS(odd_mass({ResidueSize(7), 0, UnitKind::fourth_power}), std::invalid_argument);
  CHECK_THROWS_AS(odd_mass({ResidueSize(5), 0, UnitKind::square}), std::invalid_argument);
  CHECK_THROWS_AS(class_of_unit_kind(ResidueSize(11), UnitKind::square_not_fourth), std::invalid_argument);
}

TEST_CASE("unit kinds and classes agree") {
  for (unsigned long qv : {3ul, 5ul, 7ul, 9ul, 13ul, 25ul}) {
    const ResidueSize q(qv);
    const auto kinds = unit_kinds_for(q);
    CHECK(kinds.size() == (q.is_1_mod_4() ? 3u : 2u));
    for (const auto k : kinds) CHECK(unit_kind_of_class(q, class_of_unit_kind(q, k)) == k);
  }
  CHECK(unit_kind_of_class(ResidueSize(13), 2) == UnitKind::square_not_fourth);
  CHECK(unit_kind_of_class(ResidueSize(13), 3) == UnitKind::nonsquare);
}

TEST_CASE("prime-power residue fields: tables match enumeration") {
  for (unsigned long qv : {9ul, 25ul, 27ul, 49ul}) {
    const ResidueSize q(qv);
    for (const auto k : unit_kinds_for(q))
      for (int r = 0; r < 4; ++r) {
        const ClassGroupElement cls[] = {{0, 0}, make_class(r, class_of_unit_kind(q, k), q.g())};
        CHECK(oracle_local_mass(q, cls) == odd_mass({q, r, k}));
      }
  }
}

TEST_CASE("dyadic table") {
  CHECK(dyadic_mass({1, 1}) == frac(6523, 8192));
  CHECK(dyadic_mass({0, 1}) == frac(17, 16));
  CHECK(dyadic_mass({0, 3}) == frac(65, 64));
  CHECK(dyadic_mass({0, 5}) == frac(535, 512));
  std::set<DyadicMassKey> keys;
  for (const auto& e : dyadic_table()) {
    keys.insert(e.key);
    CHECK(e.mass > 0);
  }
  CHECK(keys.size() == 32);
  CHECK_THROWS_AS(dyadic_mass({0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(dyadic_mass({4, 1}), std::invalid_argument);
}

TEST_CASE("dyadic reduction") {
  CHECK(reduce_dyadic_class(2) == DyadicMassKey{1, 1});
  CHECK(reduce_dyadic_class(16) == DyadicMassKey{0, 1});
  CHECK(reduce_dyadic_class(48) == DyadicMassKey{0, 3});
  CHECK(reduce_dyadic_class(-1) == DyadicMassKey{0, 15});
  CHECK(reduce_dyadic_class(mpq_class(1, 2)) == DyadicMassKey{3, 1});
  CHECK(reduce_dyadic_class(mpq_class(3, 5)) == DyadicMassKey{0, 7});  // 3 * 5^-1 = 3 * 13 = 39 = 7 mod 16
  CHECK_THROWS_AS(reduce_dyadic_class(0), std::invalid_argument);
}

TEST_CASE("dyadic table file parser") {
  {
    std::istringstream in{std::string(dyadic_table_text())};
    const auto t = parse_dyadic_table(in);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(t[i].key == dyadic_table()[i].key);
      CHECK(t[i].mass == dyadic_table()[i].mass);
    }
  }
  auto rejects = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS(parse_dyadic_table(in));
  };
  rejects("");
  rejects(table_with_line_replaced(0, "0 1 17"));
  rejects(table_with_line_replaced(0, "0 1 17 0"));
  rejects(table_with_line_replaced(0, "0 1 -17 16"));
  rejects(table_with_line_replaced(0, "0 2 17 16"));
  rejects(table_with_line_replaced(0, "5 1 17 16"));
  rejects(table_with_line_replaced(1, "0 1 17 16"));  // duplicate key, missing (0, 3)
  rejects(std::string(dyadic_table_text()) + "0 1 17 16\n");
}

TEST_CASE("archimedean masses") {
  CHECK(archimedean_mass(ArchimedeanPlace::positive_real) == frac(5, 12));
  CHECK(archimedean_mass(ArchimedeanPlace::negative_real) == frac(7, 24));
  CHECK(archimedean_mass(ArchimedeanPlace::complex_place) == frac(1, 24));
}

TEST_CASE("valuation-zero rows stay below 1 + 1/q^2") {
  for (unsigned long qv = 3; qv < 200; qv += 2) {
    const ResidueSize q(qv);
    const mpq_class cap = 1 + mpq_class(1, qv * qv);
    for (const auto k : unit_kinds_for(q)) {
      const Mass m = odd_mass({q, 0, k});
      CHECK(m < cap);
      CHECK(m <= trivial_class_mass(q));
    }
  }
}
