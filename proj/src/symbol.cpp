#include "s4norms/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace s4norms {

namespace {

bool canonical_less(const SymbolPart& a, const SymbolPart& b) {
  if (a.e != b.e) return a.e > b.e;
  return a.f > b.f;
}

long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

SplittingSymbol::SplittingSymbol(std::vector<SymbolPart> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("empty splitting symbol");
  for (const auto& p : parts_)
    if (p.e < 1 || p.f < 1) throw std::invalid_argument("splitting symbol parts must be positive");
  if (degree() != 4) throw std::invalid_argument("splitting symbol is not quartic: " + to_string());
  std::sort(parts_.begin(), parts_.end(), canonical_less);
}

int SplittingSymbol::degree() const {
  int d = 0;
  for (const auto& p : parts_) d += p.e * p.f;
  return d;
}

bool SplittingSymbol::is_overramified() const {
  static const SplittingSymbol kOver[] = {
      SplittingSymbol({{1, 2}, {1, 2}}), SplittingSymbol({{2, 2}}), SplittingSymbol({{1, 4}})};
  return std::find(std::begin(kOver), std::end(kOver), *this) != std::end(kOver);
}

bool SplittingSymbol::is_trivial() const {
  // (22) and (4) need 2 | r resp. 4 | r; everything else unramified-or-split
  // has a degree-1 factor or is (1^2 2).
  if (is_overramified()) return false;
  return *this != SplittingSymbol({{2, 1}, {2, 1}}) && *this != SplittingSymbol({{4, 1}});
}

std::string SplittingSymbol::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(parts_[i].f);
    if (parts_[i].e > 1) s += "^" + std::to_string(parts_[i].e);
  }
  return s + ")";
}

SplittingSymbol parse_symbol(const std::string& text) {
  std::vector<SymbolPart> parts;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '(' ||
                               text[i] == ')' || text[i] == ','))
      ++i;
  };
  skip();
  while (i < text.size()) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("bad splitting symbol: '" + text + "'");
    SymbolPart p{text[i++] - '0', 1};
    if (i < text.size() && text[i] == '^') {
      ++i;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("bad splitting symbol: '" + text + "'");
      p.e = text[i++] - '0';
    }
    parts.push_back(p);
    skip();
  }
  return SplittingSymbol(std::move(parts));
}

const std::vector<SplittingSymbol>& all_quartic_symbols() {
  static const std::vector<SplittingSymbol> kSymbols = {
      SplittingSymbol({{1, 1}, {1, 1}, {1, 1}, {1, 1}}),
      SplittingSymbol({{1, 1}, {1, 1}, {2, 1}}),
      SplittingSymbol({{1, 1}, {3, 1}}),
      SplittingSymbol({{2, 1}, {2, 1}}),
      SplittingSymbol({{4, 1}}),
      SplittingSymbol({{1, 2}, {1, 1}, {1, 1}}),
      SplittingSymbol({{1, 2}, {2, 1}}),
      SplittingSymbol({{1, 2}, {1, 2}}),
      SplittingSymbol({{2, 2}}),
      SplittingSymbol({{1, 3}, {1, 1}}),
      SplittingSymbol({{1, 4}}),
  };
  return kSymbols;
}

int disc_exponent(const SplittingSymbol& sigma) {
  int d = 0;
  for (const auto& p : sigma.parts()) d += p.f * (p.e - 1);
  return d;
}

long aut_count(const SplittingSymbol& sigma) {
  long prod_f = 1;
  std::map<SymbolPart, int> multiplicity;
  for (const auto& p : sigma.parts()) {
    prod_f *= p.f;
    ++multiplicity[p];
  }
  long perms = 1;
  for (const auto& [part, m] : multiplicity) perms *= factorial(m);
  return prod_f * perms;
}

Mass symbol_pre_mass(const SplittingSymbol& sigma, const ResidueSize& q) {
  Mass m = 1 / (rational_pow(q.value(), static_cast<unsigned long>(disc_exponent(sigma))) *
                mpq_class(aut_count(sigma)));
  m.canonicalize();
  return m;
}

}  // namespace s4norms
