#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace latspec {

// Deterministic parallel reduction: the range is cut into fixed-size tiles,
// tiles are summed left to right inside, and tile partials are combined in
// tile order. The result is bit-identical for any thread count.
template <typename Fn>
double tiled_sum(std::int64_t count, int threads, Fn&& term) {
  constexpr std::int64_t kTile = 64;
  const std::int64_t tiles = (count + kTile - 1) / kTile;
  std::vector<double> partial(static_cast<std::size_t>(tiles), 0.0);

  auto run_tile = [&](std::int64_t t) {
    const std::int64_t lo = t * kTile;
    const std::int64_t hi = std::min(count, lo + kTile);
    double acc = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(t)] = acc;
  };

  if (threads <= 1 || tiles <= 1) {
    for (std::int64_t t = 0; t < tiles; ++t) run_tile(t);
  } else {
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::int64_t t = next.fetch_add(1);
        if (t >= tiles) break;
        run_tile(t);
      }
    };
    const int k = static_cast<int>(
        std::min<std::int64_t>(threads, tiles));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace latspec
