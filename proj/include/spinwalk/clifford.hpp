#pragma once

// Integer arithmetic in the real Clifford algebra C_n (generators e_1..e_n,
// e_i^2 = 1, e_i e_j = -e_j e_i).  Elements are dense coefficient vectors
// indexed by subset bitmask; products of the binomials (e_i - e_{i+1}) keep
// integer coefficients, which is all the double-cover sign bookkeeping needs.

#include <cstdint>
#include <vector>

namespace spinwalk::clifford {

using Vec = std::vector<std::int64_t>;  // size 1 << n

// parity of |{s in mask : s < i}| — sign picked up moving e_i from the left
// into a sorted monomial e_mask
inline int sign_from_left(int i, unsigned mask) {
  const unsigned below = mask & ((1u << i) - 1);
  return (__builtin_popcount(below) & 1) ? -1 : +1;
}

// parity of |{s in mask : s > i}| — sign picked up moving e_i in from the right
inline int sign_from_right(int i, unsigned mask) {
  const unsigned above = mask & ~((2u << i) - 1);
  return (__builtin_popcount(above) & 1) ? -1 : +1;
}

// out = (e_i - e_{i+1}) * v
inline Vec mul_binomial_left(int i, const Vec& v) {
  Vec out(v.size(), 0);
  for (unsigned m = 0; m < v.size(); ++m) {
    const std::int64_t c = v[m];
    if (!c) continue;
    out[m ^ (1u << i)] += sign_from_left(i, m) * c;
    out[m ^ (2u << i)] -= sign_from_left(i + 1, m) * c;
  }
  return out;
}

// out = v * (e_i - e_{i+1})
inline Vec mul_binomial_right(int i, const Vec& v) {
  Vec out(v.size(), 0);
  for (unsigned m = 0; m < v.size(); ++m) {
    const std::int64_t c = v[m];
    if (!c) continue;
    out[m ^ (1u << i)] += sign_from_right(i, m) * c;
    out[m ^ (2u << i)] -= sign_from_right(i + 1, m) * c;
  }
  return out;
}

// a == s*b with s in {+1,-1}; returns 0 if neither
inline int proportionality_sign(const Vec& a, const Vec& b) {
  int s = 0;
  for (size_t m = 0; m < a.size(); ++m) {
    if (b[m] == 0) {
      if (a[m] != 0) return 0;
      continue;
    }
    const int here = a[m] == b[m] ? +1 : (a[m] == -b[m] ? -1 : 0);
    if (here == 0) return 0;
    if (s == 0)
      s = here;
    else if (s != here)
      return 0;
  }
  return s;
}

}  // namespace spinwalk::clifford
