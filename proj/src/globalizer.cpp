#include "s4norms/globalizer.hpp"

#include "s4norms/rational.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace s4norms {

RationalInput::RationalInput(const mpq_class& value, unsigned max_bits) : value_(value) {
  value_.canonicalize();
  if (value_ == 0) throw std::invalid_argument("generator must be nonzero");
  if (mpz_sizeinbase(value_.get_num_mpz_t(), 2) > max_bits || mpz_sizeinbase(value_.get_den_mpz_t(), 2) > max_bits)
    throw std::invalid_argument("generator " + value_.get_str() + " exceeds the " + std::to_string(max_bits) +
                                "-bit input bound");
  num_ = factor_integer(value_.get_num());
  if (value_.get_den() != 1) den_ = factor_integer(value_.get_den());
}

RationalInput RationalInput::parse(std::string_view text, unsigned max_bits) {
  return RationalInput(parse_rational(text), max_bits);
}

long RationalInput::valuation(const mpz_class& p) const {
  for (const auto& f : num_)
    if (f.prime == p) return f.exponent;
  for (const auto& f : den_)
    if (f.prime == p) return -f.exponent;
  return 0;
}

bool RationalInput::is_rational_fourth_power() const {
  if (sign() < 0) return false;
  auto all4 = [](const std::vector<PrimePower>& fs) {
    return std::all_of(fs.begin(), fs.end(), [](const PrimePower& f) { return f.exponent % 4 == 0; });
  };
  return all4(num_) && all4(den_);
}

namespace {

void require_odd_prime(const mpz_class& p) {
  if (p == 2) throw std::invalid_argument("local class at 2 is handled by the dyadic table");
  if (p < 3 || !is_prime(p)) throw std::invalid_argument(p.get_str() + " is not an odd prime");
}

}  // namespace

mpz_class unit_residue(const RationalInput& alpha, const mpz_class& p) {
  require_odd_prime(p);
  mpz_class num = alpha.value().get_num();
  mpz_class den = alpha.value().get_den();
  mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class u = num * inv;
  mpz_mod(u.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
  return u;
}

ClassGroupElement local_class(const RationalInput& alpha, const mpz_class& p) {
  require_odd_prime(p);
  return local_class(alpha, p, smallest_primitive_root(p));
}

ClassGroupElement local_class(const RationalInput& alpha, const mpz_class& p, const mpz_class& generator) {
  require_odd_prime(p);
  const ResidueSize q(p);
  const int g = q.g();
  const long v = alpha.valuation(p);
  const mpz_class u = unit_residue(alpha, p);
  // Compare u^{(p-1)/g} against the powers of the g-th root of unity z^{(p-1)/g}.
  const mpz_class e = (p - 1) / g;
  mpz_class w, root, power = 1;
  mpz_powm(w.get_mpz_t(), u.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  mpz_powm(root.get_mpz_t(), generator.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  for (int c = 0; c < g; ++c) {
    if (power == w) return make_class(v, c, g);
    power = power * root % p;
  }
  throw std::invalid_argument(generator.get_str() + " is not a primitive root modulo " + p.get_str());
}

UnitKind unit_kind(const RationalInput& alpha, const mpz_class& p) {
  require_odd_prime(p);
  const ResidueSize q(p);
  const mpz_class u = unit_residue(alpha, p);
  mpz_class t;
  const mpz_class half = (p - 1) / 2;
  mpz_powm(t.get_mpz_t(), u.get_mpz_t(), half.get_mpz_t(), p.get_mpz_t());
  if (t != 1) return UnitKind::nonsquare;
  if (!q.is_1_mod_4()) return UnitKind::square;
  const mpz_class quarter = (p - 1) / 4;
  mpz_powm(t.get_mpz_t(), u.get_mpz_t(), quarter.get_mpz_t(), p.get_mpz_t());
  return t == 1 ? UnitKind::fourth_power : UnitKind::square_not_fourth;
}

std::vector<mpz_class> ExceptionalSet::finite_primes() const {
  std::vector<mpz_class> out;
  if (contains_two) out.emplace_back(2);
  out.insert(out.end(), odd_primes.begin(), odd_primes.end());
  return out;
}

bool ExceptionalSet::contains(const mpz_class& p) const {
  if (p == 2) return contains_two;
  return std::binary_search(odd_primes.begin(), odd_primes.end(), p);
}

ExceptionalSet exceptional_set(const std::vector<RationalInput>& generators) {
  std::set<mpz_class> odd;
  for (const auto& a : generators) {
    for (const auto* fs : {&a.numerator_factors(), &a.denominator_factors()})
      for (const auto& f : *fs)
        if (f.prime != 2 && f.exponent % 4 != 0) odd.insert(f.prime);
  }
  ExceptionalSet s;
  s.odd_primes.assign(odd.begin(), odd.end());
  return s;
}

}  // namespace s4norms
