#pragma once
// Extreme-character ensembles for the infinite spin tower and their scaling
// limits.
//
// A parameter point is a nonincreasing nonnegative sequence alpha with
// sum(alpha) <= 1 (finite support here; the geometric family is handled by
// closed-form power sums).  Each alpha determines
//   * a normalized character value on odd cycles,
//       f_alpha(k) = 2^{-(k-1)/2} sum_i alpha_i^k   (odd k >= 3),
//   * a symmetric probability measure
//       nu_alpha = (1 - sum alpha) delta_0
//                  + sum_i (alpha_i/2)(delta_{alpha_i} + delta_{-alpha_i}),
//     whose even moments are M_{2k}(nu) = sum_i alpha_i^{2k+1}.
//
// Under the sqrt(n/2) profile scaling the free cumulants of the limiting
// transition measure are read off nu as R_{k+1} = M_{k-1}(nu); this
// normalization is adopted globally (it is what makes the examples below
// consistent with the evolution semigroup).  The time-t R-transform is
//   R_t(zeta) = integral of zeta (1 - (1-q)(q zeta x)^2) / (1 - (q zeta x)^2)
//               nu(dx),   q = e^{-t/m},
// whose zeta-series has coefficients R_2 = 1 and
// R_{2i+2}(t) = q^{2i+1} M_{2i}(nu) for i >= 1 (odd ones vanish).  That is
// exactly evolve() applied to the t = 0 cumulants, and tests pin the match
// with q kept symbolic.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spinwalk/finite_measure.hpp"
#include "spinwalk/rational.hpp"

namespace spinwalk {

struct ThomaAlpha {
  std::vector<Rat> parts;  // nonincreasing, nonnegative, sum <= 1

  explicit ThomaAlpha(std::vector<Rat> p) : parts(std::move(p)) {
    Rat sum = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 0)
        throw std::invalid_argument("ThomaAlpha: negative entry");
      if (i > 0 && parts[i] > parts[i - 1])
        throw std::invalid_argument("ThomaAlpha: entries must be nonincreasing");
      sum += parts[i];
    }
    if (sum > 1) throw std::invalid_argument("ThomaAlpha: entries sum past 1");
  }

  Rat sum() const {
    Rat s = 0;
    for (const auto& a : parts) s += a;
    return s;
  }

  // sum_i alpha_i^k, exact.
  Rat power_sum(int k) const {
    if (k < 1) throw std::invalid_argument("ThomaAlpha::power_sum: k >= 1");
    Rat s = 0;
    for (const auto& a : parts) s += rat_pow(a, k);
    return s;
  }
};

// N equal entries 1/N.
inline ThomaAlpha uniform_alpha(int N) {
  if (N < 0) throw std::invalid_argument("uniform_alpha: negative N");
  return ThomaAlpha(std::vector<Rat>(N, N > 0 ? Rat(1, N) : Rat(0)));
}

// Power sum of the geometric family alpha_i = (1-q) q^{i-1}, i >= 1:
//   sum_i alpha_i^k = (1-q)^k / (1 - q^k),  exact for rational q in (0,1).
inline Rat geometric_power_sum(const Rat& q, int k) {
  if (!(q > 0 && q < 1))
    throw std::invalid_argument("geometric_power_sum: q must lie in (0,1)");
  if (k < 1) throw std::invalid_argument("geometric_power_sum: k >= 1");
  return rat_pow(Rat(1) - q, k) / (Rat(1) - rat_pow(q, k));
}

// k-th moment of nu_alpha: zero for odd k, sum_i alpha_i^{k+1} for even k.
inline Rat thoma_moment(const ThomaAlpha& a, int k) {
  if (k < 1) throw std::invalid_argument("thoma_moment: k >= 1");
  if (k % 2 == 1) return Rat(0);
  return a.power_sum(k + 1);
}

// The measure nu_alpha itself (equal entries merge into one atom).
inline FiniteMeasure thoma_nu(const ThomaAlpha& a) {
  FiniteMeasure nu;
  Rat used = 0;
  size_t i = 0;
  while (i < a.parts.size()) {
    const Rat& v = a.parts[i];
    size_t j = i;
    while (j < a.parts.size() && a.parts[j] == v) ++j;
    const Rat count = Rat(static_cast<long>(j - i));
    if (v > 0) {
      nu.atoms.push_back({v, count * v / 2});
      nu.atoms.push_back({-v, count * v / 2});
      used += count * v;
    }
    i = j;
  }
  Rat at_zero = Rat(1) - used;
  if (at_zero != 0 || nu.atoms.empty()) nu.atoms.push_back({Rat(0), at_zero});
  nu.sort_check();
  return nu;
}

// Normalized character value on a single odd k-cycle, k >= 3:
//   f_alpha(k) = sum_i alpha_i^k / 2^{(k-1)/2}.
inline Rat f_alpha(const ThomaAlpha& a, int k) {
  if (k < 3 || k % 2 == 0)
    throw std::invalid_argument("f_alpha: need odd cycle length k >= 3");
  return a.power_sum(k) / rat_pow(Rat(2), (k - 1) / 2);
}

// M_2(nu), M_4(nu), ..., M_{2N}(nu) for the two standard limit measures.
inline std::vector<Rat> two_atom_even_moments(const Rat& c, int N) {
  std::vector<Rat> M(N);
  for (int i = 1; i <= N; ++i) M[i - 1] = rat_pow(c, 2 * i);
  return M;
}
inline std::vector<Rat> uniform_even_moments(const Rat& r, int N) {
  std::vector<Rat> M(N);
  for (int i = 1; i <= N; ++i) M[i - 1] = rat_pow(r, 2 * i) / Rat(2 * i + 1);
  return M;
}
inline std::vector<Rat> measure_even_moments(const FiniteMeasure& nu, int N) {
  std::vector<Rat> M(N);
  for (int i = 1; i <= N; ++i) M[i - 1] = nu.moment(2 * i);
  return M;
}

// zeta-series coefficients R_1..R_N of the time-t R-transform of the walk
// started from the limit measure nu with even moments M_2, M_4, ... (passed
// as nu_even_moments).  q may be numeric or a polynomial indeterminate:
//   R_1 = 0,  R_2 = 1,  R_{2i+1} = 0,  R_{2i+2} = q^{2i+1} M_{2i}(nu).
template <class K>
std::vector<K> r_transform_evolved(const std::vector<K>& nu_even_moments,
                                   const K& q, int N) {
  if (N < 2) throw std::invalid_argument("r_transform_evolved: need N >= 2");
  std::vector<K> R(N, K(0));
  R[1] = K(1);
  K qpow = q;  // q^{2i+1}, starting at i = 0 -> q^1
  for (int i = 1; 2 * i + 2 <= N; ++i) {
    qpow = qpow * q * q;
    if (static_cast<int>(nu_even_moments.size()) < i)
      throw std::invalid_argument(
          "r_transform_evolved: not enough even moments of nu");
    R[2 * i + 1] = qpow * nu_even_moments[i - 1];
  }
  return R;
}

// Convenience overload on an explicit atomic measure and physical (t, m).
inline std::vector<double> r_transform_evolved(const FiniteMeasure& nu,
                                               double t, double mean, int N) {
  if (!(mean > 0))
    throw std::invalid_argument("r_transform_evolved: mean must be positive");
  if (t < 0) throw std::invalid_argument("r_transform_evolved: t >= 0");
  std::vector<double> M((N > 2) ? (N - 2) / 2 : 0);
  for (size_t i = 0; i < M.size(); ++i)
    M[i] = nu.moment(2 * static_cast<int>(i) + 2).get_d();
  return r_transform_evolved(M, std::exp(-t / mean), N);
}

// Spectral density at time 0 of the uniform-parameter ensemble at critical
// scale (two-atom limit measure with c = 1; all even free cumulants equal
// 1).  Solving z = 1/zeta + zeta/(1 - zeta^2) for the boundary values of the
// resolvent reduces, with u = density and s = pi^2 u^2, to the real cubic
//   16 s^3 + 24 s^2 + 9 s + 1 = (3 sqrt3 / (2|x|))^2  =: W^2,
// equivalently 16 y^3 - 3 y + (1/2 - W^2) = 0 for y = s + 1/2.  For
// 0 < |x| < 3 sqrt3 / 2 the cubic has a unique root with s >= 0, picked in
// closed form (Cardano; the discriminant is positive on the open support).
// Support edge +-3 sqrt3/2 gives u = 0; outside the support the density is 0.
inline double density_uniform_case(double x) {
  const double pi = 3.14159265358979323846;
  const double edge = 1.5 * std::sqrt(3.0);
  const double ax = std::fabs(x);
  if (ax >= edge) return 0.0;
  if (ax == 0.0) return std::numeric_limits<double>::infinity();
  const double W = edge / ax;  // > 1 inside the support
  if (ax < 1e-70) {
    // Deep in the divergence the root is s = (W^2/16)^{1/3} up to a
    // relative correction below 1e-20; this branch also avoids overflow.
    return std::cbrt(W) / (std::pow(2.0, 2.0 / 3.0) * pi);
  }
  const double d = 0.5 - W * W;                      // < -1/2
  const double A = -d / 32.0;                        // -q/2, positive
  const double disc = (4.0 * d * d - 1.0) / 4096.0;  // > 0 inside
  const double B = std::sqrt(disc);
  // A - B = (A^2 - B^2)/(A + B) = 1/(4096 (A + B)) exactly; using that form
  // avoids the cancellation that would otherwise corrupt the small root.
  const double y = std::cbrt(A + B) + std::cbrt(1.0 / (4096.0 * (A + B)));
  double s = y - 0.5;
  if (s < 0.0) s = 0.0;  // guard rounding at the support edge
  return std::sqrt(s) / pi;
}

}  // namespace spinwalk
