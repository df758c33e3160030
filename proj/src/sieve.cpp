#include "s4norms/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

namespace s4norms {

namespace {

constexpr char kMagic[8] = {'S', '4', 'N', 'S', 'I', 'E', 'V', 'E'};
constexpr std::uint64_t kSegmentOdds = 1u << 18;

std::uint64_t checksum(const std::vector<std::uint64_t>& words) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint64_t w : words) {
    for (int b = 0; b < 8; ++b) {
      h ^= (w >> (8 * b)) & 0xff;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Serializes cache writers inside one process; across processes the
// rename-into-place keeps readers from ever seeing a partial file.
std::mutex& cache_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

bool CongruenceFilter::accepts(std::uint64_t p) const {
  const std::uint64_t r = p % modulus;
  return std::find(residues.begin(), residues.end(), r) != residues.end();
}

PrimeSieve::PrimeSieve(std::uint64_t bound) : bound_(bound) {
  const std::uint64_t odds = bound / 2 + 1;  // odd numbers 1, 3, ..., covering bound
  bits_.assign((odds + 63) / 64, 0);
  auto mark = [&](std::uint64_t n) { bits_[(n >> 1) >> 6] |= 1ull << ((n >> 1) & 63); };
  mark(1);

  const std::uint64_t root = isqrt(bound);
  // Base primes by a plain sieve up to sqrt(bound).
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 3; i <= root; i += 2) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += 2 * i) small[j] = 0;
  }

  for (std::uint64_t lo_idx = 0; lo_idx < odds; lo_idx += kSegmentOdds) {
    const std::uint64_t hi_idx = std::min(odds, lo_idx + kSegmentOdds);
    const std::uint64_t lo = 2 * lo_idx + 1, hi = 2 * (hi_idx - 1) + 1;
    for (std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t n = start; n <= hi; n += 2 * p) mark(n);
    }
  }
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
  if (n > bound_) throw std::out_of_range("query beyond sieve bound");
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  return !composite_odd(n);
}

std::vector<std::uint64_t> PrimeSieve::primes(std::uint64_t limit, const CongruenceFilter& filter) const {
  if (limit > bound_) throw std::out_of_range("prime listing beyond sieve bound");
  std::vector<std::uint64_t> out;
  if (limit >= 2 && filter.accepts(2)) out.push_back(2);
  for (std::uint64_t n = 3; n <= limit; n += 2)
    if (!composite_odd(n) && filter.accepts(n)) out.push_back(n);
  return out;
}

bool PrimeSieve::save(const std::filesystem::path& path) const {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    const std::uint32_t version = kVersion;
    const std::uint64_t sum = checksum(bits_);
    out.write(kMagic, sizeof kMagic);
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&bound_), sizeof bound_);
    out.write(reinterpret_cast<const char*>(&sum), sizeof sum);
    out.write(reinterpret_cast<const char*>(bits_.data()),
              static_cast<std::streamsize>(bits_.size() * sizeof(std::uint64_t)));
    if (!out) {
      std::filesystem::remove(tmp, ec);
      return false;
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
  return !ec;
}

std::optional<PrimeSieve> PrimeSieve::load(const std::filesystem::path& path, std::uint64_t min_bound) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  std::uint32_t version = 0;
  std::uint64_t bound = 0, sum = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&bound), sizeof bound);
  in.read(reinterpret_cast<char*>(&sum), sizeof sum);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0 || version != kVersion || bound < min_bound)
    return std::nullopt;
  const std::uint64_t odds = bound / 2 + 1;
  std::vector<std::uint64_t> bits((odds + 63) / 64);
  in.read(reinterpret_cast<char*>(bits.data()), static_cast<std::streamsize>(bits.size() * sizeof(std::uint64_t)));
  if (!in || checksum(bits) != sum) return std::nullopt;
  return PrimeSieve(bound, std::move(bits));
}

PrimeSieve PrimeSieve::load_or_build(std::uint64_t bound, const std::optional<std::filesystem::path>& cache) {
  if (!cache) return PrimeSieve(bound);
  std::lock_guard lock(cache_mutex());
  try {
    if (auto cached = load(*cache, bound)) return std::move(*cached);
  } catch (const std::exception&) {
    // unreadable cache: rebuild below
  }
  PrimeSieve sieve(bound);
  try {
    sieve.save(*cache);
  } catch (const std::exception&) {
  }
  return sieve;
}

std::optional<std::filesystem::path> default_sieve_cache_path() {
  if (const char* env = std::getenv("S4NORMS_SIEVE_CACHE"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

std::vector<std::uint64_t> prime_stream(std::uint64_t bound, const std::optional<CongruenceFilter>& filter,
                                        const std::optional<std::filesystem::path>& cache) {
  if (bound < 2) throw std::invalid_argument("prime_stream bound must be >= 2");
  if (filter && filter->modulus == 0) throw std::invalid_argument("congruence filter modulus must be positive");
  const auto sieve = PrimeSieve::load_or_build(bound, cache);
  return sieve.primes(bound, filter.value_or(CongruenceFilter{}));
}

}  // namespace s4norms
