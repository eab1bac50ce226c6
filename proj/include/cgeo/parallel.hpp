#ifndef CGEO_PARALLEL_HPP
#define CGEO_PARALLEL_HPP

#include <algorithm>
#include <thread>
#include <vector>

#include "cgeo/types.hpp"

namespace cgeo {

inline int effective_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hc = std::thread::hardware_concurrency();
  return std::clamp<int>(static_cast<int>(hc), 1, 16);
}

/// Static block partition of [0, n). f(begin, end) runs on each worker.
/// Results must be combined with an order-independent reduction (max/min)
/// so the outcome does not depend on the schedule.
template <class F>
void parallel_blocks(Index n, int jobs, F&& f) {
  int w = std::min<Index>(effective_jobs(jobs), std::max<Index>(n, 1));
  if (w <= 1 || n < 64) {
    f(Index{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  Index chunk = (n + w - 1) / w;
  for (int t = 0; t < w; ++t) {
    Index b = t * chunk;
    Index e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&f, b, e] { f(b, e); });
  }
  for (auto& th : pool) th.join();
}

/// splitmix64; used to derive independent per-cell RNG substreams from one
/// user seed so budgeted searches are schedule-independent.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace cgeo

#endif
