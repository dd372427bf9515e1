#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tweetlab {

// SplitMix64. Used both as a seed mixer and as the seeding routine for Rng.
constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a master seed and up to two
// stream indices. All repeat/candidate RNG streams flow through this so
// results do not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

// xoshiro256** generator. Self-contained so output is identical on every
// platform (std::uniform_* distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t uniform(std::uint64_t bound);
  // Double in [0, 1) with 53 bits of entropy.
  double next_double();

 private:
  std::uint64_t s_[4];
};

std::uint64_t fnv1a64(std::string_view bytes);
// FNV-1a over the raw file contents. Throws std::runtime_error if unreadable.
std::uint64_t fnv1a64_file(const std::string& path);

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);
bool iequals_ascii(std::string_view a, std::string_view b);

// Hex rendering of a 64-bit hash, zero padded to 16 chars.
std::string hex64(std::uint64_t v);

}  // namespace tweetlab
