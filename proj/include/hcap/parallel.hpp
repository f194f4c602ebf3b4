#pragma once

// Worker pool helpers and the deterministic Monte Carlo reduction. Results never
// depend on the worker count: work is split into fixed index blocks and block
// partials are combined by a fixed pairwise tree.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <span>
#include <thread>
#include <vector>

namespace hcap {

namespace detail {
inline std::atomic<unsigned>& worker_count_setting() {
  static std::atomic<unsigned> n{std::max(1u, std::thread::hardware_concurrency())};
  return n;
}
}  // namespace detail

inline unsigned worker_count() { return detail::worker_count_setting().load(); }
inline void set_worker_count(unsigned n) { detail::worker_count_setting().store(std::max(1u, n)); }

/// Calls f(i) for i in [0, n) on up to worker_count() threads. The first exception
/// thrown by any call is rethrown on the calling thread.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(body);
  body();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Random substreams

using WalkRng = std::mt19937_64;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent seed for a named sub-experiment of a run.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag ^ 0x5bd1e9955bd1e995ULL));
}

/// Generator for walk `index` of the ensemble keyed by `seed`.
inline WalkRng walk_stream(std::uint64_t seed, std::uint64_t index) {
  return WalkRng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

inline double uniform01(WalkRng& rng) { return std::generate_canonical<double, 53>(rng); }

// ---------------------------------------------------------------------------
// Ensemble reduction

struct EnsembleStats {
  std::uint64_t n = 0;
  std::uint64_t flagged = 0;
  std::vector<double> mean;
  std::vector<double> std_error;
};

inline constexpr std::size_t kEnsembleBlock = 512;

namespace detail {

struct BlockPartial {
  std::vector<double> sum, sumsq;
  std::uint64_t flagged = 0;
};

inline void merge_into(BlockPartial& a, const BlockPartial& b) {
  for (std::size_t k = 0; k < a.sum.size(); ++k) {
    a.sum[k] += b.sum[k];
    a.sumsq[k] += b.sumsq[k];
  }
  a.flagged += b.flagged;
}

}  // namespace detail

/// Runs `per_walk(index, out)` for every walk index in [0, n) and returns the mean
/// and standard error of each of the `outputs` values it writes. per_walk returns
/// true when the walk was flagged (step cap hit).
template <class PerWalk>
EnsembleStats run_ensemble(std::uint64_t n, std::size_t outputs, PerWalk&& per_walk) {
  const std::size_t blocks = static_cast<std::size_t>((n + kEnsembleBlock - 1) / kEnsembleBlock);
  std::vector<detail::BlockPartial> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    detail::BlockPartial& p = partial[b];
    p.sum.assign(outputs, 0.0);
    p.sumsq.assign(outputs, 0.0);
    std::vector<double> out(outputs);
    const std::uint64_t lo = b * kEnsembleBlock;
    const std::uint64_t hi = std::min<std::uint64_t>(n, lo + kEnsembleBlock);
    for (std::uint64_t i = lo; i < hi; ++i) {
      std::fill(out.begin(), out.end(), 0.0);
      if (per_walk(i, std::span<double>(out))) ++p.flagged;
      for (std::size_t k = 0; k < outputs; ++k) {
        p.sum[k] += out[k];
        p.sumsq[k] += out[k] * out[k];
      }
    }
  });
  // pairwise tree over block index
  for (std::size_t stride = 1; stride < blocks; stride *= 2)
    for (std::size_t b = 0; b + stride < blocks; b += 2 * stride) detail::merge_into(partial[b], partial[b + stride]);

  EnsembleStats st;
  st.n = n;
  st.mean.assign(outputs, 0.0);
  st.std_error.assign(outputs, 0.0);
  if (blocks == 0) return st;
  st.flagged = partial[0].flagged;
  const double nn = static_cast<double>(n);
  for (std::size_t k = 0; k < outputs; ++k) {
    const double m = partial[0].sum[k] / nn;
    st.mean[k] = m;
    if (n > 1) {
      const double var = std::max(0.0, (partial[0].sumsq[k] - nn * m * m) / (nn - 1.0));
      st.std_error[k] = std::sqrt(var / nn);
    }
  }
  return st;
}

}  // namespace hcap
