#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace pqgen {

std::uint64_t fnv1a64(std::string_view s);
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for the stream belonging to `key` (e.g. an image id) under `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::string_view key);

/// Deterministic generator whose outputs are identical on every platform:
/// mt19937_64 is fully specified, and bounded draws use rejection sampling
/// rather than the implementation-defined std distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

private:
  std::mt19937_64 engine_;
};

/// k distinct indices from [0, n), uniformly, returned in increasing order.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng);

}  // namespace pqgen
