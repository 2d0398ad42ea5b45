#pragma once

// Noncrossing partitions of {1..n}: exhaustive generation by the
// first-block/gap decomposition (every emitted partition is noncrossing by
// construction and each one arises exactly once), plus independent counters
// used as oracles for the cumulant engine.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spinwalk/partitions.hpp"
#include "spinwalk/rational.hpp"

namespace spinwalk {

using NCPartition = std::vector<std::vector<int>>;  // blocks, each increasing

namespace detail {

// Partition every pending contiguous range [lo,hi]; within a range the block
// of its minimum is built member by member, and the skipped stretch between
// consecutive members becomes a new pending range.  Blocks confined to
// disjoint ranges cannot cross, which is exactly the noncrossing condition.
template <class Visitor>
void nc_visit_pending(std::vector<std::pair<int, int>>& pending,
                      NCPartition& blocks, Visitor& vis) {
  if (pending.empty()) {
    vis(const_cast<const NCPartition&>(blocks));
    return;
  }
  const auto [lo, hi] = pending.back();
  pending.pop_back();
  blocks.push_back({lo});
  auto choose = [&](auto&& self, int pos) -> void {
    // close the block: the tail (pos, hi] is partitioned independently
    {
      const bool tail = pos < hi;
      if (tail) pending.push_back({pos + 1, hi});
      nc_visit_pending(pending, blocks, vis);
      if (tail) pending.pop_back();
    }
    // or extend the block with the next member m, leaving the gap pending
    for (int m = pos + 1; m <= hi; ++m) {
      const bool gap = m > pos + 1;
      if (gap) pending.push_back({pos + 1, m - 1});
      blocks.back().push_back(m);
      self(self, m);
      blocks.back().pop_back();
      if (gap) pending.pop_back();
    }
  };
  choose(choose, lo);
  blocks.pop_back();
  pending.push_back({lo, hi});
}

}  // namespace detail

// Visit every noncrossing partition of {1..n} exactly once.
template <class Visitor>
void visit_nc(int n, Visitor&& vis) {
  if (n < 0) throw std::invalid_argument("visit_nc: n < 0");
  NCPartition blocks;
  std::vector<std::pair<int, int>> pending;
  if (n > 0) pending.push_back({1, n});
  detail::nc_visit_pending(pending, blocks, vis);
}

// Materialized list; keep n small enough that the Catalan number fits in RAM.
inline std::vector<NCPartition> enumerate_nc(int n) {
  if (n > 12) throw std::invalid_argument("enumerate_nc: n > 12; use visit_nc");
  std::vector<NCPartition> out;
  visit_nc(n, [&](const NCPartition& p) { out.push_back(p); });
  return out;
}

// True iff no a<b<c<d has {a,c} and {b,d} in different blocks -- an
// independent checker used to validate the generator.
inline bool is_noncrossing(const NCPartition& p, int n) {
  std::vector<int> block_of(n + 1, -1);
  for (size_t b = 0; b < p.size(); ++b)
    for (int x : p[b]) block_of[x] = static_cast<int>(b);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d)
          if (block_of[a] == block_of[c] && block_of[b] == block_of[d] &&
              block_of[a] != block_of[b])
            return false;
  return true;
}

// Number of noncrossing partitions of {1..|sigma|} whose block sizes form
// the partition sigma.
inline Int count_nc_type(const Partition& sigma) {
  const int n = part_sum(sigma);
  Partition target = sigma;
  std::sort(target.rbegin(), target.rend());
  Int count = 0;
  visit_nc(n, [&](const NCPartition& p) {
    Partition sizes;
    for (const auto& b : p) sizes.push_back(static_cast<int>(b.size()));
    std::sort(sizes.rbegin(), sizes.rend());
    if (sizes == target) count += 1;
  });
  return count;
}

// Number of noncrossing pair partitions of {1..m} (m even), by the interval
// split recursion: pair 1 with 2j, the inside and outside are independent.
inline Int count_nc_pairings(int m) {
  if (m % 2 != 0) return 0;
  std::vector<Int> f(static_cast<size_t>(m) + 1, Int(0));
  f[0] = 1;
  for (int s = 2; s <= m; s += 2)
    for (int j = 1; 2 * j <= s; ++j) f[s] += f[2 * j - 2] * f[s - 2 * j];
  return f[m];
}

}  // namespace spinwalk
