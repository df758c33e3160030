#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace s4norms {

/// Keeps primes p with p mod modulus in residues.
struct CongruenceFilter {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> residues = {0};

  bool accepts(std::uint64_t p) const;
};

/// Odd-only bit sieve up to `bound`: bit i set <=> 2i + 1 is composite (1 counts as composite).
///
/// Cache file layout (little endian):
///   8 bytes  magic "S4NSIEVE"
///   4 bytes  version (1)
///   8 bytes  bound
///   8 bytes  FNV-1a 64 of the payload
///   payload  ceil((bound + 1) / 2 / 64) uint64 words
class PrimeSieve {
 public:
  static constexpr std::uint32_t kVersion = 1;

  /// Segmented sieve of Eratosthenes.
  explicit PrimeSieve(std::uint64_t bound);

  /// Loads the cache when it covers `bound` and its checksum verifies,
  /// otherwise sieves and rewrites the cache (write to a temporary, then
  /// rename). Any I/O failure falls back to an uncached sieve.
  static PrimeSieve load_or_build(std::uint64_t bound, const std::optional<std::filesystem::path>& cache);

  std::uint64_t bound() const { return bound_; }
  bool is_prime(std::uint64_t n) const;

  /// Ascending primes <= limit (limit <= bound).
  std::vector<std::uint64_t> primes(std::uint64_t limit, const CongruenceFilter& filter = {}) const;

  bool save(const std::filesystem::path& path) const;
  static std::optional<PrimeSieve> load(const std::filesystem::path& path, std::uint64_t min_bound);

 private:
  PrimeSieve(std::uint64_t bound, std::vector<std::uint64_t> bits) : bound_(bound), bits_(std::move(bits)) {}
  bool composite_odd(std::uint64_t n) const { return bits_[(n >> 1) >> 6] >> ((n >> 1) & 63) & 1; }

  std::uint64_t bound_;
  std::vector<std::uint64_t> bits_;
};

/// Default cache location: $S4NORMS_SIEVE_CACHE, else none.
std::optional<std::filesystem::path> default_sieve_cache_path();

/// All primes <= bound (optionally filtered), ascending. Throws
/// std::invalid_argument for bound < 2.
std::vector<std::uint64_t> prime_stream(std::uint64_t bound, const std::optional<CongruenceFilter>& filter = {},
                                        const std::optional<std::filesystem::path>& cache = default_sieve_cache_path());

}  // namespace s4norms
