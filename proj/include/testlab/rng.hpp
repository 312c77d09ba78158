#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace testlab {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_name(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seeded generator with named, splittable streams. Output is identical on
/// every platform: mt19937_64 is fully specified and the conversion to
/// doubles below does not go through std::uniform_real_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::string_view stream = "default")
      : seed_(mix64(seed ^ mix64(hash_name(stream)))), engine_(seed_) {}

  /// Independent child stream, e.g. one per Monte Carlo trial.
  Rng split(std::uint64_t index) const { return Rng(seed_, mix64(index + 1)); }
  Rng split(std::string_view name) const { return Rng(seed_, mix64(hash_name(name))); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in (0, 1].
  double uniform_open0() { return 1.0 - uniform(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t next() { return engine_(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

  std::uint64_t seed() const { return seed_; }

 private:
  Rng(std::uint64_t parent, std::uint64_t salt) : seed_(mix64(parent ^ salt)), engine_(seed_) {}

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace testlab
