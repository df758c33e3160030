#include "s4norms/class_group.hpp"

#include <bit>
#include <stdexcept>

namespace s4norms {

ResidueSize::ResidueSize(const mpz_class& q) : q_(q) {
  if (q_ < 3 || mpz_even_p(q_.get_mpz_t()))
    throw std::invalid_argument("residue size must be an odd integer >= 3, got " + q_.get_str());
  const unsigned long r4 = mod(4);
  g_ = (r4 == 1) ? 4 : 2;
  // (q-1)/2 mod g: q = 1 mod 8 -> 0, q = 5 mod 8 -> 2, q = 3 mod 4 -> 1.
  const unsigned long r8 = mod(8);
  minus_one_ = (g_ == 2) ? 1 : (r8 == 1 ? 0 : 2);
}

unsigned long ResidueSize::mod(unsigned long m) const {
  return mpz_fdiv_ui(q_.get_mpz_t(), m);
}

ClassGroupElement make_class(long long v, long long c, int g) {
  auto red = [](long long x, long long m) { return static_cast<int>(((x % m) + m) % m); };
  return {red(v, 4), red(c, g)};
}

ClassGroupElement add(const ClassGroupElement& a, const ClassGroupElement& b, int g) {
  return make_class(a.v + b.v, a.c + b.c, g);
}

std::string to_string(const ClassGroupElement& x) {
  return "(" + std::to_string(x.v) + "," + std::to_string(x.c) + ")";
}

namespace {

int slot(const ClassGroupElement& x) { return x.v * 4 + x.c; }

}  // namespace

std::uint16_t NormGroup::closure(int g, std::span<const ClassGroupElement> generators) {
  std::uint16_t mask = 1;  // identity
  bool grew = true;
  while (grew) {
    grew = false;
    for (int v = 0; v < 4; ++v) {
      for (int c = 0; c < g; ++c) {
        if (!(mask >> slot({v, c}) & 1)) continue;
        for (const auto& s : generators) {
          const auto t = add({v, c}, make_class(s.v, s.c, g), g);
          if (!(mask >> slot(t) & 1)) {
            mask |= static_cast<std::uint16_t>(1u << slot(t));
            grew = true;
          }
        }
      }
    }
  }
  return mask;
}

NormGroup::NormGroup(int g, std::span<const ClassGroupElement> generators)
    : g_(g), mask_(0), generators_(generators.begin(), generators.end()) {
  if (g != 2 && g != 4) throw std::invalid_argument("class group unit order must be 2 or 4");
  for (auto& s : generators_) s = make_class(s.v, s.c, g);
  mask_ = closure(g, generators_);
}

NormGroup NormGroup::full(int g) {
  const ClassGroupElement gens[] = {{1, 0}, {0, 1}};
  return NormGroup(g, gens);
}

std::vector<ClassGroupElement> NormGroup::elements() const {
  std::vector<ClassGroupElement> out;
  for (int v = 0; v < 4; ++v)
    for (int c = 0; c < g_; ++c)
      if (mask_ >> slot({v, c}) & 1) out.push_back({v, c});
  return out;
}

std::size_t NormGroup::order() const { return static_cast<std::size_t>(std::popcount(mask_)); }

bool NormGroup::contains(const ClassGroupElement& x) const {
  const auto y = make_class(x.v, x.c, g_);
  return mask_ >> slot(y) & 1;
}

NormGroup NormGroup::join(const NormGroup& other) const {
  if (g_ != other.g_) throw std::invalid_argument("joining norm groups of different class groups");
  std::vector<ClassGroupElement> gens = generators_;
  gens.insert(gens.end(), other.generators_.begin(), other.generators_.end());
  return NormGroup(g_, gens);
}

bool contains_class(const NormGroup& group, const ClassGroupElement& x) { return group.contains(x); }

}  // namespace s4norms
