#include "railsim/rng.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "railsim/error.hpp"

namespace railsim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_name(std::string_view name) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RngStream::RngStream(std::string name, std::uint64_t state_seed)
    : name_(std::move(name)), engine_(state_seed) {}

double RngStream::uniform() { return to_unit(engine_()); }

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) {
    throw Error(ErrorCode::BadParameter, "uniform_int: empty range");
  }
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  // Rejection keeps the result unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return lo + static_cast<std::int64_t>(x % span);
}

bool RngStream::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::BadParameter, "bernoulli: p outside [0,1]");
  }
  return uniform() < p;
}

std::size_t RngStream::choice(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::BadParameter, "choice: negative or non-finite weight");
    }
    total += w;
  }
  if (weights.empty() || !(total > 0.0)) {
    throw Error(ErrorCode::BadParameter, "choice: weights must sum to > 0");
  }
  const double target = uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  // Rounding at the top end: last positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return weights.size() - 1;
}

double RngStream::exponential(double mean) {
  if (!(mean > 0.0)) {
    throw Error(ErrorCode::BadParameter, "exponential: mean must be > 0");
  }
  return -mean * std::log1p(-uniform());
}

RngStream& RngStreams::stream(const std::string& name) {
  auto it = streams_.find(name);
  if (it == streams_.end()) {
    it = streams_
             .emplace(name, RngStream(name, mix_keys(seed_, hash_name(name))))
             .first;
  }
  return it->second;
}

RngStream RngStreams::substream(const std::string& name, std::uint64_t key) const {
  return RngStream(name, mix_keys(seed_, hash_name(name), key));
}

}  // namespace railsim
