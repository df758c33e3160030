#include "s4norms/globalizer.hpp"

#include <doctest.h>

#include <set>
#include <stdexcept>

using namespace s4norms;

namespace {

// The set of fourth powers mod p, by brute force.
std::set<unsigned long> fourth_powers(unsigned long p) {
  std::set<unsigned long> s;
  for (unsigned long x = 1; x < p; ++x) s.insert(x * x % p * x % p * x % p);
  return s;
}

std::set<unsigned long> squares(unsigned long p) {
  std::set<unsigned long> s;
  for (unsigned long x = 1; x < p; ++x) s.insert(x * x % p);
  return s;
}

}  // namespace

TEST_CASE("rational inputs") {
  const auto a = RationalInput::parse("-48/625");
  CHECK(a.sign() == -1);
  CHECK(a.valuation(2) == 4);
  CHECK(a.valuation(3) == 1);
  CHECK(a.valuation(5) == -4);
  CHECK(a.valuation(7) == 0);
  CHECK_FALSE(a.is_rational_fourth_power());
  CHECK(RationalInput::parse("16/81").is_rational_fourth_power());
  CHECK_FALSE(RationalInput::parse("-16").is_rational_fourth_power());
  CHECK_FALSE(RationalInput::parse("4").is_rational_fourth_power());
  CHECK_THROWS_AS(RationalInput::parse("0"), std::invalid_argument);
  CHECK_THROWS_AS(RationalInput::parse("0/5"), std::invalid_argument);
  CHECK_THROWS_AS(RationalInput::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(RationalInput::parse("340282366920938463463374607431768211457"), std::invalid_argument);  // 2^128 + 1
  CHECK_NOTHROW(RationalInput::parse("340282366920938463463374607431768211455"));
}

TEST_CASE("unit kinds follow residue brute force") {
  for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 29ul, 31ul, 37ul, 41ul}) {
    const auto f4 = fourth_powers(p), f2 = squares(p);
    for (long n = -40; n <= 40; ++n) {
      if (n == 0) continue;
      const RationalInput a{mpq_class(n)};
      const mpz_class P(p);
      const unsigned long u = unit_residue(a, P).get_ui();
      const UnitKind k = unit_kind(a, P);
      if (!f2.count(u))
        CHECK(k == UnitKind::nonsquare);
      else if (p % 4 == 3)
        CHECK(k == UnitKind::square);
      else if (f4.count(u))
        CHECK(k == UnitKind::fourth_power);
      else
        CHECK(k == UnitKind::square_not_fourth);
      CHECK(unit_kind_of_class(ResidueSize(p), local_class(a, P).c) == k);
    }
  }
}

TEST_CASE("local classes") {
  const mpz_class p = 13;
  CHECK(local_class(RationalInput(mpq_class(13)), p) == ClassGroupElement{1, 0});
  CHECK(local_class(RationalInput(mpq_class(1, 13)), p) == ClassGroupElement{3, 0});
  CHECK(local_class(RationalInput(mpq_class(2)), p) == ClassGroupElement{0, 1});  // 2 is the smallest primitive root
  CHECK(local_class(RationalInput(mpq_class(-1)), p).c == 2);
  // Another generator relabels by a unit of Z/4: 6 = 2^5, so logs are multiplied by 5^-1 = 1 mod 4.
  CHECK(local_class(RationalInput(mpq_class(2)), p, 6) == ClassGroupElement{0, 1});
  CHECK(local_class(RationalInput(mpq_class(2)), p, 7) == ClassGroupElement{0, 3});  // 7 = 2^11
  CHECK_THROWS_AS(local_class(RationalInput(mpq_class(2)), p, 3), std::invalid_argument);
  CHECK_THROWS_AS(local_class(RationalInput(mpq_class(2)), 2), std::invalid_argument);
  CHECK_THROWS_AS(local_class(RationalInput(mpq_class(2)), 9), std::invalid_argument);
  CHECK(unit_residue(RationalInput(mpq_class(26, 3)), p) == 5);  // 2 * 3^-1 = 2 * 9 mod 13
}

TEST_CASE("exceptional sets") {
  auto s = exceptional_set({RationalInput(mpq_class(2)), RationalInput(mpq_class(3 * 3 * 3 * 3 * 5, 7))});
  CHECK(s.odd_primes == std::vector<mpz_class>{5, 7});
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(3));
  CHECK(s.finite_primes() == std::vector<mpz_class>{2, 5, 7});
  CHECK(exceptional_set({RationalInput(mpq_class(-1))}).odd_primes.empty());
}
