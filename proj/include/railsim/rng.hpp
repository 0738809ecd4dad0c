#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>

namespace railsim {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t hash_name(std::string_view name);

/// Mixes an arbitrary list of integer keys into one 64-bit value.
template <typename... Keys>
std::uint64_t mix_keys(std::uint64_t base, Keys... keys) {
  std::uint64_t h = splitmix64(base);
  ((h = splitmix64(h ^ static_cast<std::uint64_t>(keys))), ...);
  return h;
}

/// Maps 64 random bits to a double in [0, 1).
inline double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// A named, independently seeded generator. Draws are a pure function of
/// (global seed, name, draw index).
class RngStream {
 public:
  RngStream(std::string name, std::uint64_t state_seed);

  const std::string& name() const { return name_; }

  double uniform();
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p);
  /// Index drawn with probability proportional to `weights`.
  std::size_t choice(std::span<const double> weights);
  double exponential(double mean);

 private:
  std::string name_;
  std::mt19937_64 engine_;
};

/// Registry of named streams derived from one global seed.
class RngStreams {
 public:
  explicit RngStreams(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Persistent stream; repeated calls return the same object.
  RngStream& stream(const std::string& name);

  /// Fresh stream for (name, key); e.g. one per human-day.
  RngStream substream(const std::string& name, std::uint64_t key) const;

  /// Stateless draw in [0, 1) keyed by the stream name and integer keys.
  template <typename... Keys>
  double keyed_uniform(std::string_view name, Keys... keys) const {
    return to_unit(mix_keys(seed_ ^ hash_name(name), keys...));
  }

 private:
  std::uint64_t seed_;
  std::map<std::string, RngStream, std::less<>> streams_;
};

}  // namespace railsim
