#pragma once

// Ordinary integer partitions: enumeration, cycle-type bookkeeping (z_rho),
// odd-part predicates, and the row-shrinking map sigma -> sigma° used by the
// walk-counting analysis (drop the rows of length 2 and shorten every longer
// row by one).

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "spinwalk/rational.hpp"

namespace spinwalk {

using Partition = std::vector<int>;  // weakly decreasing positive parts

inline int part_sum(const Partition& p) {
  int s = 0;
  for (int x : p) s += x;
  return s;
}

inline bool is_partition(const Partition& p) {
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i] < p[i + 1]) return false;
  return p.empty() || p.back() >= 1;
}

inline bool all_parts_odd(const Partition& p) {
  for (int x : p)
    if (x % 2 == 0) return false;
  return true;
}

inline bool has_part_one(const Partition& p) {
  return !p.empty() && p.back() == 1;
}

// Multiplicity of part k.
inline int part_multiplicity(const Partition& p, int k) {
  return static_cast<int>(std::count(p.begin(), p.end(), k));
}

// z_rho = prod_j j^{m_j} m_j!  (order of the centralizer of a permutation of
// cycle type rho inside the symmetric group on |rho| letters).
inline Int z_rho(const Partition& rho) {
  Int z(1);
  int j = 0, run = 0;
  Partition sorted = rho;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i <= sorted.size(); ++i) {
    int cur = (i < sorted.size()) ? sorted[i] : -1;
    if (cur == j) {
      ++run;
    } else {
      if (j > 0 && run > 0) z *= int_pow(Int(j), run) * factorial(run);
      j = cur;
      run = 1;
    }
  }
  return z;
}

// All partitions of n, descending-lexicographic order.
inline std::vector<Partition> enumerate_partitions(int n, int max_part = -1) {
  std::vector<Partition> out;
  if (max_part < 0) max_part = n;
  Partition cur;
  auto rec = [&](auto&& self, int rem, int mx) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int first = std::min(rem, mx); first >= 1; --first) {
      cur.push_back(first);
      self(self, rem - first, first);
      cur.pop_back();
    }
  };
  rec(rec, n, max_part);
  return out;
}

// Partitions of n with all parts >= 2 ("no fixed points" cycle supports).
inline std::vector<Partition> enumerate_partitions_min2(int n) {
  std::vector<Partition> out;
  for (auto& p : enumerate_partitions(n))
    if (!has_part_one(p)) out.push_back(p);
  return out;
}

// sigma° : requires m_1(sigma) = 0; removes the rows of length 2 and shortens
// each remaining row by one, i.e. (2^{m_2} 3^{m_3} 4^{m_4} ...) maps to
// (2^{m_3} 3^{m_4} ...).
inline Partition sigma_circle(const Partition& sigma) {
  if (has_part_one(sigma))
    throw std::invalid_argument("sigma_circle: parts of length 1 not allowed");
  Partition out;
  for (int x : sigma)
    if (x >= 3) out.push_back(x - 1);
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline int partition_length(const Partition& p) {
  return static_cast<int>(p.size());
}

}  // namespace spinwalk
