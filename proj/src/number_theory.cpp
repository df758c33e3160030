#include "s4norms/number_theory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace s4norms {

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

constexpr unsigned long kTrialLimit = 1u << 16;

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
mpz_class pollard_brent(const mpz_class& n, unsigned long c, std::uint64_t budget) {
  mpz_class y = 2, x, ys, q = 1, g = 1, t;
  auto step = [&](mpz_class& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  std::uint64_t r = 1, used = 0;
  constexpr std::uint64_t m = 128;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(m, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        step(y);
        t = x - y;
        q = q * abs(t);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += lim;
      used += lim;
      if (used > budget) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      step(ys);
      t = x - ys;
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? mpz_class(0) : g;
}

void split(const mpz_class& n, std::vector<mpz_class>& primes, std::uint64_t budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    split(s, primes, budget);
    split(s, primes, budget);
    return;
  }
  for (unsigned long c = 1; c < 64; ++c) {
    const mpz_class d = pollard_brent(n, c, budget);
    if (d != 0) {
      split(d, primes, budget);
      split(n / d, primes, budget);
      return;
    }
  }
  throw std::runtime_error("could not factor " + n.get_str() + " within the iteration budget");
}

}  // namespace

std::vector<PrimePower> factor_integer(const mpz_class& n_in, std::uint64_t rho_budget) {
  if (n_in == 0) throw std::invalid_argument("factor_integer(0)");
  mpz_class n = abs(n_in);
  std::vector<PrimePower> out;
  auto take = [&](unsigned long p) {
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) out.push_back({mpz_class(p), e});
  };
  take(2);
  for (unsigned long p = 3; p < kTrialLimit && n > 1; p += 2) {
    if (mpz_cmp_ui(n.get_mpz_t(), p * p) < 0) break;
    take(p);
  }
  if (n > 1) {
    std::vector<mpz_class> primes;
    split(n, primes, rho_budget);
    std::sort(primes.begin(), primes.end());
    for (const auto& p : primes) {
      if (!out.empty() && out.back().prime == p)
        ++out.back().exponent;
      else
        out.push_back({p, 1});
    }
  }
  return out;
}

mpz_class smallest_primitive_root(const mpz_class& p) {
  static std::mutex mu;
  static std::map<mpz_class, mpz_class> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(p); it != cache.end()) return it->second;
  }
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("primitive root requested for non-odd-prime " + p.get_str());
  const mpz_class order = p - 1;
  const auto factors = factor_integer(order);
  mpz_class z = 2, t, e;
  for (;; ++z) {
    bool generator = true;
    for (const auto& f : factors) {
      e = order / f.prime;
      mpz_powm(t.get_mpz_t(), z.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
      if (t == 1) {
        generator = false;
        break;
      }
    }
    if (generator) break;
  }
  std::lock_guard lock(mu);
  cache.emplace(p, z);
  return z;
}

std::uint64_t pow_mod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 result = 1 % m, base = a % m;
  while (e) {
    if (e & 1) result = result * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t inverse_mod_u64(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    const __int128 quot = r / new_r;
    t -= quot * new_t;
    std::swap(t, new_t);
    r -= quot * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::invalid_argument("not invertible");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

}  // namespace s4norms
