#include "s4norms/number_theory.hpp"
#include "s4norms/sieve.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <unistd.h>

using namespace s4norms;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class product(const std::vector<PrimePower>& fs) {
  mpz_class n = 1;
  for (const auto& f : fs) {
    mpz_class t;
    mpz_pow_ui(t.get_mpz_t(), f.prime.get_mpz_t(), static_cast<unsigned long>(f.exponent));
    n *= t;
  }
  return n;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("s4norms_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("primality agrees with trial division") {
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(mpz_class(static_cast<unsigned long>(n))) == trial_prime(n));
  CHECK(is_prime(mpz_class("170141183460469231731687303715884105727")));  // 2^127 - 1
  CHECK_FALSE(is_prime(mpz_class("3825123056546413051")));                // strong pseudoprime to bases 2..23
}

TEST_CASE("factorisation") {
  CHECK(factor_integer(1).empty());
  auto f = factor_integer(720);
  REQUIRE(f.size() == 3);
  CHECK(f[0].prime == 2);
  CHECK(f[0].exponent == 4);
  CHECK(f[2].prime == 5);
  CHECK(factor_integer(-12).size() == 2);
  const mpz_class semi = mpz_class("1000000007") * mpz_class("998244353");
  f = factor_integer(semi);
  REQUIRE(f.size() == 2);
  CHECK(f[0].prime == mpz_class("998244353"));
  const mpz_class sq = mpz_class("4294967311") * mpz_class("4294967311");
  f = factor_integer(sq * 81);
  REQUIRE(f.size() == 2);
  CHECK(f[1].exponent == 2);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const mpz_class n(static_cast<unsigned long>(rng() >> 4));
    if (n == 0) continue;
    const auto fs = factor_integer(n);
    CHECK(product(fs) == n);
    for (const auto& p : fs) CHECK(is_prime(p.prime));
  }
}

TEST_CASE("primitive roots") {
  for (unsigned long p : {3ul, 5ul, 7ul, 13ul, 17ul, 29ul, 41ul, 1000003ul}) {
    const mpz_class g = smallest_primitive_root(p);
    // order of g is p - 1: g^((p-1)/l) != 1 for every prime l | p - 1.
    for (const auto& l : factor_integer(p - 1)) CHECK(pow_mod_u64(g.get_ui(), (p - 1) / l.prime.get_ui(), p) != 1);
    for (unsigned long h = 2; h < g.get_ui(); ++h) {
      bool primitive = true;
      for (const auto& l : factor_integer(p - 1))
        if (pow_mod_u64(h, (p - 1) / l.prime.get_ui(), p) == 1) primitive = false;
      CHECK_FALSE(primitive);
    }
  }
  CHECK(smallest_primitive_root(7) == 3);
  CHECK(smallest_primitive_root(41) == 6);
}

TEST_CASE("64-bit modular helpers") {
  const std::uint64_t p = 18446744073709551557ull;  // largest prime below 2^64
  CHECK(pow_mod_u64(2, p - 1, p) == 1);
  const std::uint64_t a = 1234567890123456789ull;
  CHECK(static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * inverse_mod_u64(a, p) % p) == 1);
}

TEST_CASE("sieve matches trial division") {
  const PrimeSieve s(100'003);
  for (std::uint64_t n = 0; n <= 100'003; ++n) {
    if (n % 97 != 0 && n > 2000) continue;
    CHECK(s.is_prime(n) == trial_prime(n));
  }
  CHECK(s.primes(100'000).size() == 9592);
  CHECK_THROWS_AS(s.is_prime(100'004), std::out_of_range);
  CHECK(PrimeSieve(2).primes(2) == std::vector<std::uint64_t>{2});
  CHECK(PrimeSieve(1'000'000).primes(1'000'000).size() == 78498);
}

TEST_CASE("congruence filters") {
  const PrimeSieve s(200);
  const auto ones = s.primes(200, {8, {1}});
  CHECK(ones == std::vector<std::uint64_t>{17, 41, 73, 89, 97, 113, 137, 193});
  CHECK_THROWS_AS(prime_stream(100, CongruenceFilter{0, {0}}, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(prime_stream(1, std::nullopt, std::nullopt), std::invalid_argument);
}

TEST_CASE("sieve cache round trip and corruption") {
  const auto path = temp_path("sieve.bin");
  std::filesystem::remove(path);
  const auto built = PrimeSieve::load_or_build(50'000, path);
  REQUIRE(std::filesystem::exists(path));
  auto loaded = PrimeSieve::load(path, 50'000);
  REQUIRE(loaded.has_value());
  CHECK(loaded->primes(50'000) == built.primes(50'000));
  CHECK_FALSE(PrimeSieve::load(path, 60'000).has_value());  // too small for the request

  // Larger cache serves a smaller request.
  CHECK(PrimeSieve::load(path, 10'000)->bound() == 50'000);

  // Flip a payload byte: checksum rejects it and load_or_build rebuilds.
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40);
    f.put('\x5a');
  }
  CHECK_FALSE(PrimeSieve::load(path, 1).has_value());
  CHECK(PrimeSieve::load_or_build(50'000, path).primes(50'000) == built.primes(50'000));
  CHECK(PrimeSieve::load(path, 1).has_value());

  // Truncated and garbage files.
  std::filesystem::resize_file(path, 20);
  CHECK_FALSE(PrimeSieve::load(path, 1).has_value());
  { std::ofstream(path) << "not a sieve"; }
  CHECK_FALSE(PrimeSieve::load(path, 1).has_value());
  CHECK_FALSE(PrimeSieve::load(temp_path("missing.bin"), 1).has_value());
  std::filesystem::remove(path);
}

TEST_CASE("cache path from the environment") {
  ::setenv("S4NORMS_SIEVE_CACHE", "/tmp/x.bin", 1);
  CHECK(default_sieve_cache_path() == std::filesystem::path("/tmp/x.bin"));
  ::unsetenv("S4NORMS_SIEVE_CACHE");
  CHECK_FALSE(default_sieve_cache_path().has_value());
}
