#pragma once

// Counting standard fillings of shifted diagrams two ways:
//   * count_syt_bruteforce -- direct DFS over all standard fillings (the
//     independent oracle; exponential, fine up to n ~ 14);
//   * g_hook -- product formula n! / prod(hooks), where the hooks are taken
//     in the doubled diagram D(lambda) over the n boxes of the reflected copy
//     D(lambda) \ S(lambda).

#include <stdexcept>
#include <vector>

#include "spinwalk/doubled_diagram.hpp"
#include "spinwalk/rational.hpp"
#include "spinwalk/strict_partition.hpp"

namespace spinwalk {

// Number of standard fillings of S(lambda): boxes get 1..n, increasing along
// rows and down columns.  DFS over linear extensions: the next box of row i
// (column i + filled_i, 1-based) is placeable iff i = 1 or the box directly
// above it is already filled, i.e. filled_{i-1} >= filled_i + 2.
inline Int count_syt_bruteforce(const StrictPartition& lambda) {
  const auto& p = lambda.parts;
  const int l = lambda.length();
  std::vector<int> filled(l, 0);
  Int count = 0;
  auto rec = [&](auto&& self, int placed) -> void {
    if (placed == lambda.n()) {
      count += 1;
      return;
    }
    for (int i = 0; i < l; ++i) {
      if (filled[i] >= p[i]) continue;
      if (i > 0 && filled[i - 1] < filled[i] + 2) continue;
      filled[i] += 1;
      self(self, placed + 1);
      filled[i] -= 1;
    }
  };
  rec(rec, 0);
  return count;
}

// g_lambda = n! / prod of hooks of the boxes of the reflected copy inside
// D(lambda).  Hook of box (r,c) in a diagram with rows D and columns D':
// h(r,c) = D_r - c + D'_c - r + 1.
inline Int g_hook(const StrictPartition& lambda) {
  const DoubledDiagram D = doubled_profile(lambda);
  const std::vector<int> cols = detail::conjugate_rows(D.rows);
  const auto& p = lambda.parts;
  Int denom = 1;
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = i; j <= i + p[i - 1] - 1; ++j) {
      // reflected box (r,c) = (j+1, i)
      const int r = j + 1, c = i;
      const int hook = D.rows[r - 1] - c + cols[c - 1] - r + 1;
      if (hook <= 0) throw std::logic_error("g_hook: nonpositive hook");
      denom *= hook;
    }
  Int num = factorial(static_cast<unsigned long>(lambda.n()));
  if (num % denom != 0) throw std::logic_error("g_hook: hook product does not divide n!");
  return num / denom;
}

}  // namespace spinwalk
