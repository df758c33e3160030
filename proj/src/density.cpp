#include "s4norms/density.hpp"

#include "s4norms/mass_tables.hpp"
#include "s4norms/sieve.hpp"
#include "s4norms/tame.hpp"

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>

namespace s4norms {

namespace {

constexpr mpfr_prec_t kPrecision = 128;

class Real {
 public:
  Real() { mpfr_init2(x_, kPrecision); mpfr_set_ui(x_, 0, MPFR_RNDN); }
  explicit Real(const mpq_class& q, mpfr_rnd_t rnd = MPFR_RNDN) : Real() { mpfr_set_q(x_, q.get_mpq_t(), rnd); }
  Real(const Real& o) : Real() { mpfr_set(x_, o.x_, MPFR_RNDN); }
  Real& operator=(const Real& o) {
    mpfr_set(x_, o.x_, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(x_); }

  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

 private:
  mpfr_t x_;
};

std::string format(const Real& x, const char* fmt) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, fmt, x.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

enum class Mode { ratio, absolute };

// Rank of the subgroup of Z/g generated by unit classes: the subgroups form a
// chain, so the join of several is the largest of them.
int kind_rank(UnitKind k) {
  switch (k) {
    case UnitKind::fourth_power:
    case UnitKind::square: return 0;
    case UnitKind::square_not_fourth: return 1;
    case UnitKind::nonsquare: return 2;
  }
  return 0;
}

UnitKind euler_kind(std::uint64_t u, std::uint64_t p) {
  if (pow_mod_u64(u, (p - 1) / 2, p) != 1) return UnitKind::nonsquare;
  if (p % 4 == 3) return UnitKind::square;
  return pow_mod_u64(u, (p - 1) / 4, p) == 1 ? UnitKind::fourth_power : UnitKind::square_not_fourth;
}

// Unit kind of the subgroup generated by the generators at a non-exceptional
// odd prime p (all valuations divisible by 4).
UnitKind joint_unit_kind(const std::vector<RationalInput>& gens, std::uint64_t p) {
  UnitKind best = p % 4 == 1 ? UnitKind::fourth_power : UnitKind::square;
  for (const auto& a : gens) {
    const unsigned long n = mpz_fdiv_ui(a.value().get_num_mpz_t(), p);
    const unsigned long d = mpz_fdiv_ui(a.value().get_den_mpz_t(), p);
    UnitKind k;
    if (n == 0 || d == 0)
      k = unit_kind(a, mpz_class(static_cast<unsigned long>(p)));
    else
      k = euler_kind(static_cast<std::uint64_t>(static_cast<unsigned __int128>(n) * inverse_mod_u64(d, p) % p), p);
    if (kind_rank(k) > kind_rank(best)) best = k;
  }
  return best;
}

void validate(const std::vector<RationalInput>& generators, const DensityOptions& options) {
  if (generators.empty()) throw std::invalid_argument("at least one generator is required");
  if (options.cutoff < kMinCutoff)
    throw std::invalid_argument("cutoff must be at least " + std::to_string(kMinCutoff));
}

mpq_class canonical(mpq_class x) {
  x.canonicalize();
  return x;
}

MassInterval scale(const MassInterval& a, const mpq_class& s) {
  return {canonical(a.lower * s), canonical(a.upper * s)};
}

MassInterval multiply(const MassInterval& a, const MassInterval& b) {
  return {canonical(a.lower * b.lower), canonical(a.upper * b.upper)};
}

DensityEstimate assemble(const std::vector<RationalInput>& generators, const DensityOptions& options, Mode mode) {
  validate(generators, options);
  const ExceptionalSet S = exceptional_set(generators);
  const bool all_fourth_powers = std::all_of(generators.begin(), generators.end(),
                                             [](const RationalInput& a) { return a.is_rational_fourth_power(); });
  DensityEstimate est;
  est.cutoff = options.cutoff;

  // Exceptional places, exactly.
  const Mass arch = archimedean_subgroup_mass(generators);
  const Mass arch_trivial = archimedean_mass(ArchimedeanPlace::positive_real);
  MassInterval finite = MassInterval::exact(mode == Mode::absolute ? mpq_class(1, 2) : mpq_class(1));

  const MassInterval arch_factor = MassInterval::exact(mode == Mode::ratio ? canonical(arch / arch_trivial) : arch);
  est.exceptional_factors.push_back({"inf", arch_factor});
  finite = multiply(finite, arch_factor);

  const Mass m12 = dyadic_mass({0, 1});
  MassInterval dyadic = dyadic_subgroup_mass(generators);
  if (mode == Mode::ratio) dyadic = scale(dyadic, canonical(1 / m12));
  est.exceptional_factors.push_back({"2", dyadic});
  finite = multiply(finite, dyadic);

  for (const auto& p : S.odd_primes) {
    Mass m = subgroup_local_mass_odd(p, generators);
    if (mode == Mode::ratio) m = canonical(m / trivial_class_mass(ResidueSize(p)));
    est.exceptional_factors.push_back({p.get_str(), MassInterval::exact(m)});
    finite = multiply(finite, MassInterval::exact(m));
  }
  est.finite_part = finite;

  // Non-exceptional odd primes up to the cutoff, ascending.
  Real product(mpq_class(1));
  std::uint64_t roundings = 0;
  const auto primes = prime_stream(options.cutoff, std::nullopt, options.sieve_cache);
  for (const std::uint64_t p : primes) {
    if (p == 2) continue;
    ++est.primes_sieved;
    if (S.contains(mpz_class(static_cast<unsigned long>(p)))) continue;
    const ResidueSize q(static_cast<unsigned long>(p));
    const UnitKind kind = joint_unit_kind(generators, p);
    Mass factor;
    if (mode == Mode::ratio) {
      if (kind_rank(kind) == 0) continue;
      factor = canonical(odd_mass({q, 0, kind}) / trivial_class_mass(q));
    } else {
      factor = odd_mass({q, 0, kind});
    }
    Real f(factor);
    mpfr_mul(product.get(), product.get(), f.get(), MPFR_RNDN);
    roundings += 2;
  }

  // |computed/true - 1| <= (1 + u)^roundings - 1 <= 1.01 * roundings * u.
  Real delta;
  mpfr_set_ui(delta.get(), static_cast<unsigned long>(roundings), MPFR_RNDU);
  mpfr_mul_d(delta.get(), delta.get(), 1.01, MPFR_RNDU);
  mpfr_mul_2si(delta.get(), delta.get(), -kPrecision, MPFR_RNDU);

  // Tail beyond the cutoff: each ratio factor lies in [1 - 1/p^2, 1] and
  // m_{1,p} in (1, 1 + 1/p^2), so log(tail) is in [-2/B, 0] for ratios and
  // [-2/B, 1/B] for masses; sum_{n > B} 1/n^2 < 1/B.
  Real tail_lo(mpq_class(1)), tail_hi(mpq_class(1));
  const Real inv_b(mpq_class(1, static_cast<unsigned long>(options.cutoff)), MPFR_RNDU);
  if (!all_fourth_powers) {
    mpfr_mul_si(tail_lo.get(), inv_b.get(), -2, MPFR_RNDU);
    mpfr_exp(tail_lo.get(), tail_lo.get(), MPFR_RNDD);
  }
  if (mode == Mode::absolute) mpfr_exp(tail_hi.get(), inv_b.get(), MPFR_RNDU);

  Real lo(finite.lower, MPFR_RNDD), hi(finite.upper, MPFR_RNDU), t;
  mpfr_ui_sub(t.get(), 1, delta.get(), MPFR_RNDD);
  mpfr_mul(t.get(), t.get(), product.get(), MPFR_RNDD);
  mpfr_mul(lo.get(), lo.get(), t.get(), MPFR_RNDD);
  mpfr_mul(lo.get(), lo.get(), tail_lo.get(), MPFR_RNDD);
  mpfr_add_ui(t.get(), delta.get(), 1, MPFR_RNDU);
  mpfr_mul(t.get(), t.get(), product.get(), MPFR_RNDU);
  mpfr_mul(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  mpfr_mul(hi.get(), hi.get(), tail_hi.get(), MPFR_RNDU);

  Real mid, err, other;
  mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  mpfr_sub(err.get(), hi.get(), mid.get(), MPFR_RNDU);
  mpfr_sub(other.get(), mid.get(), lo.get(), MPFR_RNDU);
  mpfr_max(err.get(), err.get(), other.get(), MPFR_RNDU);

  est.exact = all_fourth_powers && mode == Mode::ratio && finite.is_exact() && mpfr_zero_p(err.get());
  est.value = mid.to_double();
  est.abs_error = mpfr_get_d(err.get(), MPFR_RNDU);
  est.value_text = format(mid, "%.20Rg");
  est.abs_error_text = format(err, "%.6RUe");
  return est;
}

}  // namespace

Mass dyadic_trivial_mass() {
  const mpq_class q = 2;
  return canonical((q - 1) / q * (5 * q * q + 8 * q + 8) / (8 * q * q));
}

mpq_class ratio_factor(const RationalInput& alpha, const mpz_class& p) {
  const ResidueSize q(p);
  const long v = alpha.valuation(p);
  const Mass m = odd_mass({q, static_cast<int>(((v % 4) + 4) % 4), unit_kind(alpha, p)});
  return canonical(m / trivial_class_mass(q));
}

Mass subgroup_local_mass_odd(const mpz_class& p, const std::vector<RationalInput>& generators) {
  const ResidueSize q(p);
  std::vector<ClassGroupElement> classes;
  classes.reserve(generators.size() + 1);
  classes.push_back({0, 0});
  for (const auto& a : generators) classes.push_back(local_class(a, p));
  return oracle_local_mass(q, classes);
}

MassInterval dyadic_subgroup_mass(const std::vector<RationalInput>& generators) {
  std::vector<DyadicMassKey> classes;
  for (const auto& a : generators) {
    const auto c = reduce_dyadic_class(a.value());
    if (c != DyadicMassKey{0, 1} && std::find(classes.begin(), classes.end(), c) == classes.end()) classes.push_back(c);
  }
  if (classes.empty()) return MassInterval::exact(dyadic_mass({0, 1}));

  auto generated = [](const DyadicMassKey& c) {
    std::vector<DyadicMassKey> out;
    DyadicMassKey x{0, 1};
    for (int k = 0; k < 4; ++k) {
      out.push_back(x);
      x = {(x.r_mod_4 + c.r_mod_4) % 4, (x.u_mod_16 * c.u_mod_16) % 16};
    }
    return out;
  };
  for (const auto& c : classes) {
    const auto span = generated(c);
    if (std::all_of(classes.begin(), classes.end(),
                    [&](const DyadicMassKey& d) { return std::find(span.begin(), span.end(), d) != span.end(); }))
      return MassInterval::exact(dyadic_mass(c));
  }
  Mass upper = dyadic_mass(classes.front());
  for (const auto& c : classes) upper = std::min(upper, dyadic_mass(c));
  return {dyadic_trivial_mass(), upper};
}

Mass archimedean_subgroup_mass(const std::vector<RationalInput>& generators) {
  const bool negative = std::any_of(generators.begin(), generators.end(), [](const auto& a) { return a.sign() < 0; });
  return archimedean_mass(negative ? ArchimedeanPlace::negative_real : ArchimedeanPlace::positive_real);
}

DensityEstimate proportion(const std::vector<RationalInput>& generators, const DensityOptions& options) {
  return assemble(generators, options, Mode::ratio);
}

DensityEstimate absolute_density(const std::vector<RationalInput>& generators, const DensityOptions& options) {
  return assemble(generators, options, Mode::absolute);
}

Mass zeta2_upper_bound() {
  // 1/n^2 < 1/(n - 1/2) - 1/(n + 1/2), so the tail past N is below 1/(N + 1/2).
  constexpr long N = 64;
  mpq_class s = 0;
  for (long n = 1; n <= N; ++n) s += mpq_class(1, n * n);
  s += mpq_class(2, 2 * N + 1);
  return canonical(s);
}

Mass density_upper_bound(const RationalInput& alpha) {
  const std::vector<RationalInput> gens = {alpha};
  const ExceptionalSet S = exceptional_set(gens);
  mpq_class bound = mpq_class(1, 2) * archimedean_subgroup_mass(gens) * dyadic_mass(reduce_dyadic_class(alpha.value()));
  mpq_class zeta = zeta2_upper_bound();
  for (const auto& p : S.finite_primes()) {
    if (p != 2) bound *= subgroup_local_mass_odd(p, gens);
    zeta *= 1 - mpq_class(mpz_class(1), mpz_class(p * p));
  }
  return canonical(bound * zeta);
}

}  // namespace s4norms
