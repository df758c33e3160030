// s4norms: local masses, densities and proportions of quartic fields with
// prescribed norms, from the command line.

#include "s4norms/density.hpp"
#include "s4norms/globalizer.hpp"
#include "s4norms/mass_tables.hpp"
#include "s4norms/sieve.hpp"
#include "s4norms/tame.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace s4norms;
using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

// Library input errors surface as usage errors.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

json record(const std::string& command, json inputs) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<RationalInput> parse_generators(const std::vector<std::string>& texts, unsigned max_bits) {
  std::vector<RationalInput> out;
  for (const auto& t : texts) out.push_back(RationalInput::parse(t, max_bits));
  return out;
}

json interval_json(const MassInterval& m) {
  if (m.is_exact()) return to_fraction_string(m.lower);
  return json{{"lower", to_fraction_string(m.lower)}, {"upper", to_fraction_string(m.upper)}};
}

std::string interval_text(const MassInterval& m) {
  if (m.is_exact()) return to_fraction_string(m.lower);
  return "[" + to_fraction_string(m.lower) + ", " + to_fraction_string(m.upper) + "]";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- mass ----

struct MassArgs {
  std::vector<std::string> alphas;
  std::string place;
  bool oracle = false;
};

int run_mass(const MassArgs& a, unsigned max_bits, bool as_json) {
  json out = record("mass", {{"alpha", a.alphas}, {"place", a.place}, {"oracle", a.oracle}});
  const auto gens = parse_generators(a.alphas, max_bits);
  std::optional<MassInterval> mass;
  std::optional<Mass> oracle;
  std::string method;

  const std::string& p = a.place;
  if (p == "real" || p == "real+" || p == "real-" || p == "complex") {
    if (p == "complex") {
      mass = MassInterval::exact(archimedean_mass(ArchimedeanPlace::complex_place));
    } else if (p == "real") {
      if (gens.empty()) throw UsageError("--place real needs at least one --alpha");
      mass = MassInterval::exact(archimedean_subgroup_mass(gens));
    } else {
      // The class in R*/R*^4 is named directly; generators, if any, must agree.
      const bool negative = p == "real-";
      for (const auto& g : gens)
        if ((g.sign() < 0) != negative) throw UsageError("generator sign does not match place " + p);
      mass = MassInterval::exact(archimedean_mass(negative ? ArchimedeanPlace::negative_real
                                                           : ArchimedeanPlace::positive_real));
    }
    method = "table";
    if (a.oracle) throw UsageError("--oracle applies to odd primes only");
  } else {
    mpz_class prime;
    if (prime.set_str(p, 10) != 0 || prime < 2) throw UsageError("unsupported place '" + p + "'");
    if (gens.empty()) throw UsageError("--alpha is required at a finite place");
    if (prime == 2) {
      if (a.oracle) throw UsageError("--oracle applies to odd primes only");
      mass = dyadic_subgroup_mass(gens);
      method = "table";
    } else {
      if (prime % 2 == 0 || !is_prime(prime)) throw UsageError(p + " is not a prime");
      if (gens.size() == 1) {
        const auto& alpha = gens.front();
        const long v = alpha.valuation(prime);
        mass = MassInterval::exact(
            odd_mass({ResidueSize(prime), static_cast<int>(((v % 4) + 4) % 4), unit_kind(alpha, prime)}));
        method = "table";
        if (a.oracle) oracle = subgroup_local_mass_odd(prime, gens);
      } else {
        // No closed form for several generators: the enumeration is the answer.
        mass = MassInterval::exact(subgroup_local_mass_odd(prime, gens));
        method = "oracle";
        if (a.oracle) oracle = mass->lower;
      }
    }
  }

  const bool agrees = !oracle || *oracle == mass->lower;
  if (as_json) {
    out["result"] = {{"method", method}, {"mass", interval_json(*mass)}, {"exact", mass->is_exact()}};
    if (oracle) {
      out["result"]["oracle_mass"] = to_fraction_string(*oracle);
      out["result"]["oracle_agrees"] = agrees;
    }
    emit(out);
  } else {
    std::cout << "mass: " << interval_text(*mass) << '\n';
    if (oracle) std::cout << "oracle: " << to_fraction_string(*oracle) << "\noracle-agrees: " << (agrees ? "true" : "false") << '\n';
  }
  return agrees ? kExitOk : kExitVerifyFailed;
}

// ---- proportion / density ----

struct GlobalArgs {
  std::vector<std::string> generators;
  std::uint64_t cutoff = 1'000'000;
  bool upper_bound = false;
  bool timing = false;
};

json estimate_json(const DensityEstimate& e) {
  json factors = json::array();
  for (const auto& f : e.exceptional_factors) factors.push_back({{"place", f.place}, {"factor", interval_json(f.factor)}});
  return {{"value", e.value},
          {"value_text", e.value_text},
          {"abs_error", e.abs_error},
          {"abs_error_text", e.abs_error_text},
          {"exact", e.exact},
          {"finite_part", interval_json(e.finite_part)},
          {"exceptional_factors", factors},
          {"cutoff", e.cutoff},
          {"primes_sieved", e.primes_sieved}};
}

void print_estimate(const DensityEstimate& e) {
  if (e.exact) {
    std::cout << "value: " << interval_text(e.finite_part) << " (exact)\n";
  } else {
    std::cout << "value: " << e.value_text << "\nabs_error: " << e.abs_error_text << '\n';
  }
  std::cout << "cutoff: " << e.cutoff << '\n';
  std::cout << "finite_part: " << interval_text(e.finite_part) << '\n';
  for (const auto& f : e.exceptional_factors) std::cout << "factor[" << f.place << "]: " << interval_text(f.factor) << '\n';
}

int run_global(const std::string& command, const GlobalArgs& a, unsigned max_bits, bool as_json,
               const std::optional<std::filesystem::path>& cache) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto gens = parse_generators(a.generators, max_bits);
  DensityOptions opt;
  opt.cutoff = a.cutoff;
  opt.sieve_cache = cache;
  const DensityEstimate e = command == "proportion" ? proportion(gens, opt) : absolute_density(gens, opt);

  std::optional<Mass> bound;
  if (a.upper_bound) {
    if (gens.size() != 1) throw UsageError("--upper-bound takes exactly one generator");
    bound = density_upper_bound(gens.front());
  }

  if (as_json) {
    json out = record(command, {{"generators", a.generators}, {"cutoff", a.cutoff}});
    out["result"] = estimate_json(e);
    if (bound) out["result"]["upper_bound"] = to_fraction_string(*bound);
    if (a.timing) out["timing_seconds"] = seconds_since(t0);
    emit(out);
  } else {
    print_estimate(e);
    if (bound) std::cout << "upper_bound: " << to_fraction_string(*bound) << '\n';
    if (a.timing) std::cout << "time: " << seconds_since(t0) << " s\n";
  }
  return kExitOk;
}

// ---- table ----

std::vector<unsigned long> table_primes(const std::string& spec) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("bad table argument '" + spec + "'");
    return v;
  };
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    const unsigned long q = number(spec);
    if (q == 2) return {2};
    if (q < 3 || q % 2 == 0) throw UsageError("table needs an odd prime q >= 3, or 2 for the dyadic table");
    if (!is_prime(mpz_class(q))) throw UsageError(spec + " is not a prime");
    return {q};
  }
  const unsigned long lo = number(spec.substr(0, colon)), hi = number(spec.substr(colon + 1));
  if (lo > hi || hi < 3) throw UsageError("empty table range '" + spec + "'");
  std::vector<unsigned long> out;
  for (const auto p : prime_stream(hi, std::nullopt, std::nullopt))
    if (p >= lo && p != 2) out.push_back(p);
  return out;
}

json odd_table_json(unsigned long p) {
  const ResidueSize q(p);
  json rows = json::array();
  for (const auto kind : unit_kinds_for(q))
    for (int r = 0; r < 4; ++r)
      rows.push_back({{"q", p}, {"r", r}, {"unit_kind", std::string(to_string(kind))},
                      {"mass", to_fraction_string(odd_mass({q, r, kind}))}});
  return rows;
}

json dyadic_table_json() {
  json rows = json::array();
  for (const auto& e : dyadic_table())
    rows.push_back({{"r", e.key.r_mod_4}, {"u", e.key.u_mod_16}, {"mass", to_fraction_string(e.mass)}});
  return rows;
}

void odd_table_text(unsigned long p, const std::string& format, std::ostream& os) {
  const ResidueSize q(p);
  if (format == "latex") {
    os << "% q = " << p << "\n\\begin{tabular}{l|cccc}\n & $\\bar r=0$ & $\\bar r=1$ & $\\bar r=2$ & $\\bar r=3$ \\\\\n\\hline\n";
    for (const auto kind : unit_kinds_for(q)) {
      os << to_string(kind);
      for (int r = 0; r < 4; ++r) {
        const Mass m = odd_mass({q, r, kind});
        os << " & $\\frac{" << m.get_num().get_str() << "}{" << m.get_den().get_str() << "}$";
      }
      os << " \\\\\n";
    }
    os << "\\end{tabular}\n";
    return;
  }
  os << "q = " << p << '\n';
  for (const auto kind : unit_kinds_for(q)) {
    os << "  " << to_string(kind) << ':';
    for (int r = 0; r < 4; ++r) os << ' ' << to_fraction_string(odd_mass({q, r, kind}));
    os << '\n';
  }
}

void dyadic_table_text_out(const std::string& format, std::ostream& os) {
  const auto& t = dyadic_table();
  if (format == "latex") {
    os << "\\begin{tabular}{c|cccccccc}\n $\\bar r$ \\textbackslash\\ $u$";
    for (int u = 1; u < 16; u += 2) os << " & " << u;
    os << " \\\\\n\\hline\n";
    for (int r = 0; r < 4; ++r) {
      os << r;
      for (int i = 0; i < 8; ++i) {
        const Mass& m = t[static_cast<std::size_t>(8 * r + i)].mass;
        os << " & $\\frac{" << m.get_num().get_str() << "}{" << m.get_den().get_str() << "}$";
      }
      os << " \\\\\n";
    }
    os << "\\end{tabular}\n";
    return;
  }
  os << "q = 2 (rows r = 0..3, columns u = 1, 3, ..., 15)\n";
  for (int r = 0; r < 4; ++r) {
    os << "  r=" << r << ':';
    for (int i = 0; i < 8; ++i) os << ' ' << to_fraction_string(t[static_cast<std::size_t>(8 * r + i)].mass);
    os << '\n';
  }
}

int run_table(const std::string& spec, const std::string& format) {
  const auto primes = table_primes(spec);
  if (format == "json") {
    json out = record("table", {{"q", spec}, {"format", format}});
    json entries = json::array();
    for (const auto p : primes) {
      const json rows = p == 2 ? dyadic_table_json() : odd_table_json(p);
      entries.insert(entries.end(), rows.begin(), rows.end());
    }
    out["result"] = {{"entries", entries}};
    emit(out);
    return kExitOk;
  }
  for (const auto p : primes) {
    if (p == 2)
      dyadic_table_text_out(format, std::cout);
    else
      odd_table_text(p, format, std::cout);
  }
  return kExitOk;
}

// ---- verify ----

int run_verify(unsigned long max_prime, bool as_json) {
  if (max_prime < 3) throw UsageError("--max-prime must be at least 3");
  json checks = json::array();
  std::size_t total = 0, failed = 0;
  for (const auto p : prime_stream(max_prime, std::nullopt, std::nullopt)) {
    if (p == 2) continue;
    const ResidueSize q(p);
    for (const auto kind : unit_kinds_for(q)) {
      for (int r = 0; r < 4; ++r) {
        const Mass table = odd_mass({q, r, kind});
        const ClassGroupElement cls[] = {{0, 0}, make_class(r, class_of_unit_kind(q, kind), q.g())};
        const Mass oracle = oracle_local_mass(q, cls);
        const bool ok = table == oracle;
        ++total;
        if (!ok) ++failed;
        if (as_json) {
          checks.push_back({{"q", p}, {"r", r}, {"unit_kind", std::string(to_string(kind))},
                            {"table", to_fraction_string(table)}, {"oracle", to_fraction_string(oracle)}, {"pass", ok}});
        } else {
          std::cout << (ok ? "pass" : "FAIL") << " q=" << p << " r=" << r << ' ' << to_string(kind) << ' '
                    << to_fraction_string(table);
          if (!ok) std::cout << " oracle=" << to_fraction_string(oracle);
          std::cout << '\n';
        }
      }
    }
  }
  if (as_json) {
    json out = record("verify", {{"max_prime", max_prime}});
    out["result"] = {{"checks", checks}, {"total", total}, {"failed", failed}, {"pass", failed == 0}};
    emit(out);
  } else {
    std::cout << (failed == 0 ? "verify: pass" : "verify: FAIL") << " (" << total - failed << '/' << total << ")\n";
  }
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Masses and densities of quartic fields with prescribed norms"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  unsigned max_bits = 128;
  std::optional<std::string> cache_flag;
  app.add_flag("--json", as_json, "Emit a JSON record");
  app.add_option("--max-bits", max_bits, "Bit bound on generator numerators and denominators")->check(CLI::Range(1u, 4096u));
  app.add_option("--cache-path", cache_flag, "Prime sieve cache file (default: $S4NORMS_SIEVE_CACHE)");

  MassArgs mass_args;
  auto* mass = app.add_subcommand("mass", "Local mass at one place");
  mass->add_option("--alpha", mass_args.alphas, "Generator (integer or num/den); repeatable");
  mass->add_option("--place", mass_args.place, "Odd prime, 2, real, real+, real-, or complex")->required();
  mass->add_flag("--oracle", mass_args.oracle, "Also enumerate algebras and compare");

  GlobalArgs prop_args, dens_args;
  auto* prop = app.add_subcommand("proportion", "Proportion of S4-quartic fields with the generators as norms");
  prop->add_option("generators", prop_args.generators, "Generators")->required();
  prop->add_option("--cutoff", prop_args.cutoff, "Euler product prime cutoff B")->check(CLI::Range(kMinCutoff, std::uint64_t{1} << 40));
  prop->add_flag("--timing", prop_args.timing, "Report wall-clock time");

  auto* dens = app.add_subcommand("density", "Absolute density lim N(X; A)/X");
  dens->add_option("generators", dens_args.generators, "Generators")->required();
  dens->add_option("--cutoff", dens_args.cutoff, "Euler product prime cutoff B")->check(CLI::Range(kMinCutoff, std::uint64_t{1} << 40));
  dens->add_flag("--upper-bound", dens_args.upper_bound, "Also print the exact upper bound (one generator)");
  dens->add_flag("--timing", dens_args.timing, "Report wall-clock time");

  std::string table_spec, table_format = "text";
  auto* table = app.add_subcommand("table", "Closed-form mass tables");
  table->add_option("q", table_spec, "Odd prime q, range a:b, or 2")->required();
  table->add_option("--format", table_format, "text, latex or json")->check(CLI::IsMember({"text", "latex", "json"}));

  unsigned long max_prime = 0;
  auto* verify = app.add_subcommand("verify", "Compare every table entry with the enumeration");
  verify->add_option("--max-prime", max_prime, "Check all odd primes up to this bound")->required();

  for (auto* sub : {mass, prop, dens, table, verify}) sub->add_flag("--json", as_json, "Emit a JSON record");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  std::optional<std::filesystem::path> cache = default_sieve_cache_path();
  if (cache_flag) cache = *cache_flag;

  try {
    if (*mass) return run_mass(mass_args, max_bits, as_json);
    if (*prop) return run_global("proportion", prop_args, max_bits, as_json, cache);
    if (*dens) return run_global("density", dens_args, max_bits, as_json, cache);
    if (*table) return run_table(table_spec, table_format == "json" || as_json ? "json" : table_format);
    if (*verify) return run_verify(max_prime, as_json);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
