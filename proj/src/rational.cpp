#include "s4norms/rational.hpp"

#include <stdexcept>

namespace s4norms {

std::string to_fraction_string(const mpq_class& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

mpq_class parse_rational(std::string_view text) {
  auto digits_ok = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!digits_ok(num)) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d = 1;
  if (slash != std::string_view::npos) {
    const std::string_view den = text.substr(slash + 1);
    if (!digits_ok(den) || den.front() == '-' || den.front() == '+')
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    d = mpz_class(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  mpq_class x(n, d);
  x.canonicalize();
  return x;
}

mpq_class rational_pow(const mpz_class& q, unsigned long k) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), k);
  return mpq_class(r);
}

}  // namespace s4norms
