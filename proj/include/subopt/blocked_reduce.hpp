#pragma once

#include <cstddef>
#include <vector>

namespace subopt {

/// Fixed block width for deterministic reductions. Partials are computed per
/// block (parallel) and combined in block order (serial), so results are
/// bitwise identical for any thread count, including a non-OpenMP build.
inline constexpr std::size_t kReduceBlock = 2048;

template <class Partial, class BlockFn, class CombineFn>
Partial blocked_reduce(std::size_t count, Partial identity, BlockFn&& block_fn,
                       CombineFn&& combine) {
  if (count == 0) return identity;
  const std::size_t nblocks = (count + kReduceBlock - 1) / kReduceBlock;
  std::vector<Partial> partials(nblocks, identity);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
    const std::size_t hi = std::min(count, lo + kReduceBlock);
    partials[static_cast<std::size_t>(b)] = block_fn(lo, hi);
  }
  Partial acc = identity;
  for (const Partial& p : partials) combine(acc, p);
  return acc;
}

}  // namespace subopt
