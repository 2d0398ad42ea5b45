#pragma once
// Closed-form limit curves for scaled diagram boundaries and the exact
// moment/cumulant data of the stationary curve's boundary measure.
//
// Two curves appear as scaling limits of diagram profiles:
//   * vkls    — the limit boundary of Plancherel-random (ordinary) diagrams,
//               (2/pi)(x asin(x/2) + sqrt(4 - x^2)) on [-2,2] and |x| outside;
//   * vershik — the stationary limit boundary of the doubled shifted
//               diagrams, (2 sqrt6/pi) log(e^{pi x/(2 sqrt6)} +
//               e^{-pi x/(2 sqrt6)}), which stays strictly above |x| and has
//               unbounded support.
//
// The curvature charge tau_V of the vershik curve (half its second
// derivative) is a probability measure with density vershik_density; its
// even moments are exact rationals expressible through Bernoulli numbers,
//   M_{2k}(tau_V) = (2^{2k} - 2) 6^k |B_{2k}|,
// and the free cumulants of the associated transition measure come either
// from the generic boundary-moments -> cumulants pipeline
// (rayleigh_to_cumulants) or from the closed double sum vershik_cumulant
// below.  The two must agree exactly; tests enforce this.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinwalk/rational.hpp"

namespace spinwalk {

// Limit curve of Plancherel-random ordinary diagrams.
inline double vkls(double x) {
  const double ax = std::fabs(x);
  if (ax >= 2.0) return ax;
  const double pi = 3.14159265358979323846;
  return (2.0 / pi) * (x * std::asin(x / 2.0) + std::sqrt(4.0 - x * x));
}

// Stationary limit curve of the doubled shifted diagrams.  Evaluated as
//   |x| + (2 sqrt6/pi) log(1 + e^{-pi |x|/sqrt6}),
// which is exact algebra on the defining expression and stays stable for
// large |x| (the correction decays like e^{-pi|x|/sqrt6}).
inline double vershik(double x) {
  const double pi = 3.14159265358979323846;
  const double s6 = std::sqrt(6.0);
  const double ax = std::fabs(x);
  return ax + (2.0 * s6 / pi) * std::log1p(std::exp(-pi * ax / s6));
}

// Density of the curvature charge tau_V = (1/2) vershik''.  Equals
//   (pi/sqrt6) (e^{pi x/(2 sqrt6)} + e^{-pi x/(2 sqrt6)})^{-2},
// computed as (pi/sqrt6) e^{-pi|x|/sqrt6} / (1 + e^{-pi|x|/sqrt6})^2.
inline double vershik_density(double x) {
  const double pi = 3.14159265358979323846;
  const double s6 = std::sqrt(6.0);
  const double e = std::exp(-pi * std::fabs(x) / s6);
  return (pi / s6) * e / ((1.0 + e) * (1.0 + e));
}

// Bernoulli numbers B_0, B_1, B_2, ... with B_1 = -1/2, via the defining
// recursion sum_{j=0}^{n} C(n+1, j) B_j = 0 (n >= 1).  Exact rationals,
// memoized per thread.
inline Rat bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli: negative index");
  static thread_local std::vector<Rat> memo{Rat(1)};
  while (static_cast<int>(memo.size()) <= n) {
    const int m = static_cast<int>(memo.size());
    Rat s = 0;
    for (int j = 0; j < m; ++j)
      s += Rat(binomial(static_cast<unsigned long>(m) + 1,
                        static_cast<unsigned long>(j))) *
           memo[j];
    memo.push_back(-s / Rat(m + 1));
  }
  return memo[n];
}

// k-th moment of tau_V: zero for odd k (the curve is even), and
// (2^{2j} - 2) 6^j |B_{2j}| for k = 2j.  Exact rational.
inline Rat tau_v_moment(int k) {
  if (k < 1) throw std::invalid_argument("tau_v_moment: need k >= 1");
  if (k % 2 == 1) return Rat(0);
  const int j = k / 2;
  Rat b = bernoulli(k);
  if (b < 0) b = -b;
  return (rat_pow(Rat(2), k) - Rat(2)) * rat_pow(Rat(6), j) * b;
}

// M_2(tau_V), M_4(tau_V), ..., M_{2N}(tau_V).
inline std::vector<Rat> tau_v_even_moments(int N) {
  std::vector<Rat> M(N);
  for (int j = 1; j <= N; ++j) M[j - 1] = tau_v_moment(2 * j);
  return M;
}

// Two-sided factorial bounds on M_{2k}(tau_V):
//   (1 - 2^{1-2k}) * 2 * 6^k / pi^{2k} * (2k)!  <=  M_{2k}  <=
//                    2 * 6^k / pi^{2k} * (2k)!.
// Returned as {lower, upper} in double precision.
inline std::pair<double, double> tau_v_moment_bounds(int two_k) {
  if (two_k < 2 || two_k % 2 != 0)
    throw std::invalid_argument("tau_v_moment_bounds: need even two_k >= 2");
  const int k = two_k / 2;
  const double pi = 3.14159265358979323846;
  double fact = 1.0;
  for (int i = 2; i <= two_k; ++i) fact *= i;
  const double upper = 2.0 * std::pow(6.0, k) / std::pow(pi, two_k) * fact;
  const double lower = (1.0 - std::ldexp(1.0, 1 - two_k)) * upper;
  return {lower, upper};
}

// Free cumulant R_{2k} of the transition measure attached to the vershik
// curve, as a closed double sum over compositions (j_1, ..., j_l) of k:
//   R_{2k} = (-1)^{k+1} 6^k sum_{l=1}^{k} (2k-1)^{l-1} / l! *
//            sum_{j_1+...+j_l=k} prod_i (2^{2 j_i - 1} - 1) B_{2 j_i} / j_i.
// Must coincide with rayleigh_to_cumulants(tau_v_even_moments(k), k) exactly.
inline Rat vershik_cumulant(int two_k) {
  if (two_k < 2 || two_k % 2 != 0)
    throw std::invalid_argument("vershik_cumulant: need even two_k >= 2");
  const int k = two_k / 2;
  Rat total = 0;
  std::vector<int> comp;
  auto rec = [&](auto&& self, int rem) -> void {
    if (rem == 0) {
      const int l = static_cast<int>(comp.size());
      Rat term = rat_pow(Rat(2 * k - 1), l - 1) / Rat(factorial(l));
      for (int j : comp)
        term *= (rat_pow(Rat(2), 2 * j - 1) - Rat(1)) * bernoulli(2 * j) /
                Rat(j);
      total += term;
      return;
    }
    for (int j = 1; j <= rem; ++j) {
      comp.push_back(j);
      self(self, rem - j);
      comp.pop_back();
    }
  };
  rec(rec, k);
  Rat sign = (k % 2 == 0) ? Rat(-1) : Rat(1);
  return sign * rat_pow(Rat(6), k) * total;
}

// R_2, R_4, ..., R_{2N} of the vershik transition measure.
inline std::vector<Rat> vershik_even_cumulants(int N) {
  std::vector<Rat> R(N);
  for (int k = 1; k <= N; ++k) R[k - 1] = vershik_cumulant(2 * k);
  return R;
}

// Growth constant C = max_{1 <= k <= kmax} |R_{2k}|^{1/(2k)} / (2k) for the
// vershik cumulants; the cumulant sequence is admissible for the evolution
// machinery as long as this is finite (it hovers well below 1).
inline double cumulant_growth_constant(int kmax) {
  double C = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double r = std::fabs(vershik_cumulant(2 * k).get_d());
    if (r == 0.0) continue;
    const double v = std::pow(r, 1.0 / (2.0 * k)) / (2.0 * k);
    if (v > C) C = v;
  }
  return C;
}

}  // namespace spinwalk
