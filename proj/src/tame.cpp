#include "s4norms/tame.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace s4norms {

namespace {

// q^k mod m for small m.
unsigned long pow_mod_small(const ResidueSize& q, int k, unsigned long m) {
  unsigned long r = 1 % m;
  const unsigned long base = q.mod(m);
  for (int i = 0; i < k; ++i) r = (r * base) % m;
  return r;
}

long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// All non-decreasing sequences of length m over [0, n).
void multisets(int n, int m, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int i = cur.empty() ? 0 : cur.back(); i < n; ++i) {
    cur.push_back(i);
    multisets(n, m, cur, out);
    cur.pop_back();
  }
}

}  // namespace

int twist_count(const ResidueSize& q, int e, int f) {
  const auto e_ul = static_cast<unsigned long>(e);
  const unsigned long qf_minus_1 = (pow_mod_small(q, f, e_ul) + e_ul - 1) % e_ul;
  return std::gcd(e, static_cast<int>(qf_minus_1));
}

std::vector<int> component_twists(const ResidueSize& q, int e, int f) {
  const int n = twist_count(q, e, f);
  const int qn = static_cast<int>(q.mod(static_cast<unsigned long>(n)));
  std::vector<int> reps;
  for (int j = 0; j < n; ++j) {
    int least = j;
    int x = j;
    for (int k = 1; k < f; ++k) {
      x = (x * qn) % n;
      least = std::min(least, x);
    }
    if (least == j) reps.push_back(j);
  }
  return reps;
}

long component_aut_count(const ResidueSize& q, const TameComponent& comp) {
  const int n = twist_count(q, comp.e, comp.f);
  long stabilizer = 0;
  for (int k = 0; k < comp.f; ++k) {
    const auto qk_minus_1 = static_cast<int>((pow_mod_small(q, k, static_cast<unsigned long>(n)) + n - 1) % n);
    if ((comp.j * qk_minus_1) % n == 0) ++stabilizer;
  }
  return stabilizer * n;
}

TameEtaleAlgebra::TameEtaleAlgebra(ResidueSize q, std::vector<TameComponent> components)
    : q_(std::move(q)), components_(std::move(components)) {
  int degree = 0;
  for (const auto& c : components_) {
    if (c.e < 1 || c.f < 1) throw std::invalid_argument("tame component with nonpositive e or f");
    const auto reps = component_twists(q_, c.e, c.f);
    if (std::find(reps.begin(), reps.end(), c.j) == reps.end())
      throw std::invalid_argument("twist index j=" + std::to_string(c.j) + " is not a class representative");
    degree += c.e * c.f;
  }
  if (degree != 4) throw std::invalid_argument("tame etale algebra is not quartic");
  std::sort(components_.begin(), components_.end());
}

SplittingSymbol TameEtaleAlgebra::symbol() const {
  std::vector<SymbolPart> parts;
  for (const auto& c : components_) parts.push_back({c.f, c.e});
  return SplittingSymbol(std::move(parts));
}

int TameEtaleAlgebra::disc_exponent() const {
  int d = 0;
  for (const auto& c : components_) d += c.f * (c.e - 1);
  return d;
}

long TameEtaleAlgebra::aut_count() const {
  long aut = 1;
  std::map<TameComponent, int> multiplicity;
  for (const auto& c : components_) {
    aut *= component_aut_count(q_, c);
    ++multiplicity[c];
  }
  for (const auto& [c, m] : multiplicity) aut *= factorial(m);
  return aut;
}

std::string TameEtaleAlgebra::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) s += " x ";
    const auto& c = components_[i];
    s += "F" + std::to_string(c.f);
    if (c.e > 1) s += "(" + std::to_string(c.e) + "rt(z^" + std::to_string(c.j) + " pi))";
  }
  return s;
}

std::vector<TameEtaleAlgebra> enumerate_tame_algebras(const ResidueSize& q, const SplittingSymbol& sigma) {
  // Group equal parts; identical components commute, so each group picks a
  // multiset of twists.
  std::map<SymbolPart, int> groups;
  for (const auto& p : sigma.parts()) ++groups[p];

  std::vector<std::vector<TameComponent>> partial = {{}};
  for (const auto& [part, m] : groups) {
    const auto twists = component_twists(q, part.e, part.f);
    std::vector<std::vector<int>> choices;
    std::vector<int> cur;
    multisets(static_cast<int>(twists.size()), m, cur, choices);
    std::vector<std::vector<TameComponent>> next;
    for (const auto& prefix : partial) {
      for (const auto& choice : choices) {
        auto comps = prefix;
        for (int idx : choice) comps.push_back({part.e, part.f, twists[static_cast<std::size_t>(idx)]});
        next.push_back(std::move(comps));
      }
    }
    partial = std::move(next);
  }

  std::vector<TameEtaleAlgebra> out;
  out.reserve(partial.size());
  for (auto& comps : partial) out.emplace_back(q, std::move(comps));
  return out;
}

std::vector<TameEtaleAlgebra> enumerate_all_tame_algebras(const ResidueSize& q) {
  std::vector<TameEtaleAlgebra> out;
  for (const auto& sigma : all_quartic_symbols()) {
    auto algebras = enumerate_tame_algebras(q, sigma);
    out.insert(out.end(), algebras.begin(), algebras.end());
  }
  return out;
}

NormGroup component_norm_group(const ResidueSize& q, const TameComponent& comp) {
  // k_f* is generated by beta, the roots of unity and 1-units (which norm
  // into k*^4). N(beta) = (-1)^{(e+1) f} zeta_{q-1}^j pi^f, N(zeta_{q^f-1}) = zeta_{q-1}^e.
  const int g = q.g();
  const ClassGroupElement gens[] = {
      make_class(comp.f, comp.j + static_cast<long long>(comp.e + 1) * comp.f * q.minus_one_class(), g),
      make_class(0, comp.e, g),
  };
  return NormGroup(g, gens);
}

NormGroup norm_group(const TameEtaleAlgebra& algebra) {
  const int g = algebra.q().g();
  NormGroup group(g, {});
  for (const auto& c : algebra.components()) group = group.join(component_norm_group(algebra.q(), c));
  return group;
}

namespace {

Mass sum_pre_mass(const ResidueSize& q, const std::vector<TameEtaleAlgebra>& algebras,
                  std::span<const ClassGroupElement> classes) {
  Mass total = 0;
  for (const auto& L : algebras) {
    const auto N = norm_group(L);
    if (!std::all_of(classes.begin(), classes.end(), [&](const auto& x) { return N.contains(x); })) continue;
    total += 1 / (rational_pow(q.value(), static_cast<unsigned long>(L.disc_exponent())) * mpq_class(L.aut_count()));
  }
  total.canonicalize();
  return total;
}

}  // namespace

Mass oracle_symbol_pre_mass(const ResidueSize& q, const SplittingSymbol& sigma,
                            std::span<const ClassGroupElement> classes) {
  return sum_pre_mass(q, enumerate_tame_algebras(q, sigma), classes);
}

Mass oracle_local_mass(const ResidueSize& q, std::span<const ClassGroupElement> classes) {
  Mass m = mpq_class(mpz_class(q.value() - 1), q.value());
  m.canonicalize();
  m *= sum_pre_mass(q, enumerate_all_tame_algebras(q), classes);
  m.canonicalize();
  return m;
}

}  // namespace s4norms
