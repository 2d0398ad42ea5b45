#pragma once

// The free-cumulant engine: moment <-> cumulant transforms (triangular
// recursion on the first-block decomposition), free convolution and free
// compression at the cumulant level, the one-parameter evolution map, the
// semicircle sequence, and extraction of cumulants from the moment series of
// the Cauchy transform.
//
// Everything is templated over the exact coefficient ring K (rationals, or
// polynomials in the evolution parameter q), so the evolution identities can
// be asserted coefficientwise with q symbolic.
//
// Conventions: a cumulant vector R holds R[0]=R_1, ..., R[N-1]=R_N; a moment
// vector M holds M[0]=M_1, ..., M[N-1]=M_N with M_0 = 1 implicit.

#include <stdexcept>
#include <vector>

#include "spinwalk/series.hpp"

namespace spinwalk {

// M_n = sum_{s=1}^{n} R_s * sum_{i_1+...+i_s = n-s, i_j >= 0} M_{i_1}...M_{i_s}
// (decompose by the block containing 1: it has size s and splits the rest
// into s independent stretches).
template <class K>
std::vector<K> cumulants_to_moments(const std::vector<K>& R) {
  const int N = static_cast<int>(R.size());
  std::vector<K> Mfull(static_cast<size_t>(N) + 1, K(0));  // Mfull[j] = M_j
  Mfull[0] = K(1);
  for (int n = 1; n <= N; ++n) {
    // comp[s][m] = sum over (i_1..i_s >= 0), sum = m, of prod Mfull[i_j];
    // only m <= n-1 is ever needed, so all Mfull entries used are known.
    std::vector<std::vector<K>> comp(
        static_cast<size_t>(n) + 1,
        std::vector<K>(static_cast<size_t>(n), K(0)));
    for (int m = 0; m < n; ++m) comp[0][m] = (m == 0) ? K(1) : K(0);
    for (int s = 1; s <= n; ++s)
      for (int m = 0; m < n; ++m)
        for (int j = 0; j <= m; ++j)
          comp[s][m] = comp[s][m] + Mfull[j] * comp[s - 1][m - j];
    K acc(0);
    for (int s = 1; s <= n; ++s) acc = acc + R[s - 1] * comp[s][n - s];
    Mfull[n] = acc;
  }
  return std::vector<K>(Mfull.begin() + 1, Mfull.end());
}

// Exact inverse by back-substitution: R_n = M_n - sum_{s<n} R_s * comp[s][n-s].
template <class K>
std::vector<K> moments_to_cumulants(const std::vector<K>& M) {
  const int N = static_cast<int>(M.size());
  std::vector<K> R(static_cast<size_t>(N), K(0));
  std::vector<K> Mfull(static_cast<size_t>(N) + 1, K(0));
  Mfull[0] = K(1);
  for (int n = 1; n <= N; ++n) Mfull[n] = M[n - 1];
  for (int n = 1; n <= N; ++n) {
    std::vector<std::vector<K>> comp(
        static_cast<size_t>(n),
        std::vector<K>(static_cast<size_t>(n), K(0)));
    if (n >= 1) {
      for (int m = 0; m < n; ++m) comp[0][m] = (m == 0) ? K(1) : K(0);
      for (int s = 1; s < n; ++s)
        for (int m = 0; m < n; ++m)
          for (int j = 0; j <= m; ++j)
            comp[s][m] = comp[s][m] + Mfull[j] * comp[s - 1][m - j];
    }
    K acc = Mfull[n];
    for (int s = 1; s < n; ++s) acc = acc - R[s - 1] * comp[s][n - s];
    R[n - 1] = acc;  // the s = n term is R_n * comp[n][0] = R_n
  }
  return R;
}

// Free convolution adds cumulants componentwise.
template <class K>
std::vector<K> free_convolve(const std::vector<K>& R1, const std::vector<K>& R2) {
  if (R1.size() != R2.size())
    throw std::invalid_argument("free_convolve: order mismatch");
  std::vector<K> out(R1.size(), K(0));
  for (size_t j = 0; j < R1.size(); ++j) out[j] = R1[j] + R2[j];
  return out;
}

// Free compression by c != 0: R_k -> c^{k-1} R_k.
template <class K>
std::vector<K> free_compress(const std::vector<K>& R, const K& c) {
  if (c == K(0)) throw std::invalid_argument("free_compress: c = 0");
  std::vector<K> out(R.size(), K(0));
  K p(1);
  for (size_t j = 0; j < R.size(); ++j) {
    out[j] = p * R[j];
    p = p * c;
  }
  return out;
}

// Centered semicircle with variance v: cumulants (0, v, 0, 0, ...).
template <class K>
std::vector<K> semicircle_cumulants(const K& v, int N) {
  std::vector<K> R(static_cast<size_t>(N), K(0));
  if (N >= 2) R[1] = v;
  return R;
}

// One-parameter evolution of a limit-shape cumulant vector (R_1=0, R_2=1):
// R_1 and R_2 are fixed, and R_{k+1} -> q^k R0_{k+1} for k >= 2.  q may be a
// rational value or the polynomial variable itself.
template <class K>
std::vector<K> evolve(const std::vector<K>& R0, const K& q) {
  if (R0.size() < 2 || !(R0[0] == K(0)) || !(R0[1] == K(1)))
    throw std::invalid_argument("evolve: need R_1 = 0, R_2 = 1");
  std::vector<K> out = R0;
  K p = q * q;  // q^k for k = j-1 at j = 3
  for (size_t j = 3; j <= R0.size(); ++j) {
    out[j - 1] = p * R0[j - 1];
    p = p * q;
  }
  return out;
}

// Series H(w) with G(z) = (1/z) H(1/z) = sum_j M_j z^{-j-1}: the Laurent
// expansion of the Cauchy transform at infinity, packaged via w = 1/z.
template <class K>
PowerSeries<K> stieltjes_series(const std::vector<K>& M) {
  PowerSeries<K> H(static_cast<int>(M.size()));
  H.c[0] = K(1);
  for (size_t j = 0; j < M.size(); ++j) H.c[j + 1] = M[j];
  return H;
}

// Residue-formula extraction of cumulants from moments:
//   R_k = -[w^k] H^{-(k-1)} / (k-1)   for k >= 2,   R_1 = M_1,
// where G = w H(w).  Independent of the noncrossing-partition recursion.
template <class K>
std::vector<K> cumulants_from_stieltjes(const std::vector<K>& M) {
  const int N = static_cast<int>(M.size());
  std::vector<K> R(static_cast<size_t>(N), K(0));
  if (N >= 1) R[0] = M[0];
  const PowerSeries<K> Hinv = inverse(stieltjes_series(M));
  PowerSeries<K> p = PowerSeries<K>::constant(K(1), N);  // Hinv^{k-1}
  for (int k = 2; k <= N; ++k) {
    p = p * Hinv;
    R[k - 1] = (K(0) - p.c[k]) / K(k - 1);
  }
  return R;
}

}  // namespace spinwalk
