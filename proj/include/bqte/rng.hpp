#ifndef BQTE_RNG_HPP
#define BQTE_RNG_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace bqte {

// Stream derivation rule
// ----------------------
// Every randomized computation (a bootstrap replicate, a simulation
// replication) draws from its own engine whose seed is a pure function of
// (master seed, stream index).  Results are therefore invariant to worker
// count and scheduling: replicate b always sees the same draws no matter
// which thread runs it.

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(master ^ mix64(stream + 0x632BE59BD9B4E019ULL));
}

// Engine for stream `index` under `master`.  mt19937_64 output is bit-exact
// across platforms; all distribution mapping below is our own, so replicate
// streams are fully portable.
inline std::mt19937_64 stream_engine(std::uint64_t master, std::uint64_t index) {
  return std::mt19937_64(derive_stream_seed(master, index));
}

// Uniform index in [0, n) via 128-bit multiply-shift.  Bias is O(n / 2^64),
// irrelevant at sample sizes this library sees; unlike
// std::uniform_int_distribution the mapping is identical on every platform.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  using u128 = unsigned __int128;
  return static_cast<std::size_t>((u128(rng()) * u128(n)) >> 64);
}

// Uniform double strictly inside (0, 1): 53 random bits, offset by half an ulp
// so inverse-CDF sampling never hits a distribution's infinite endpoints.
inline double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

// Runs fn(begin, end) over [0, count) split into contiguous blocks, one per
// worker.  Callers index results by stream id, so the partition has no effect
// on output.
inline void parallel_for(std::size_t count, unsigned workers,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    fn(0, count);
    return;
  }
  if (workers > count) workers = static_cast<unsigned>(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    if (begin >= count) break;
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace bqte

#endif  // BQTE_RNG_HPP
