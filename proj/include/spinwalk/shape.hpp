#pragma once
// Numeric reconstruction of a limit curve from a truncated moment sequence.
// Diagnostic only: truncated-moment inversion is ill-posed, so nothing here
// is used as a correctness gate — the routine reports its own condition
// indicators instead.
//
// Pipeline:
//   1. The input is the moment sequence of the evolving probability measure
//      mu.  The curve is tied not to mu's own distribution function but to
//      that of its boundary charge tau: the resolvent of mu factors as
//      (1/z) exp(sum_k M_k(tau)/k z^{-k}), so the tau moments are read off
//      the logarithm of the moment series — exactly, in rationals.  (For
//      the semicircle this turns Catalan moments into central binomials,
//      i.e. the arcsine law.)
//   2. Exact-rational Chebyshev algorithm turns the tau moments into Jacobi
//      (continued-fraction) coefficients a_k, b_k; the recursion is
//      truncated as soon as an off-diagonal b_k fails to be positive.
//   3. The resolvent of the truncated fraction is evaluated just above the
//      real axis; the tau density is -Im G(x + iy)/pi extrapolated to
//      y -> 0 through the schedule y = 0.1, 0.05, 0.025 (quadratic Lagrange
//      extrapolation in y, which cancels both the O(y) and O(y^2) smoothing
//      errors of the Cauchy kernel).
//   4. The distribution function F of tau is the cumulative integral of the
//      (clamped) density, and the curve is recovered from F = (1 + omega')/2
//      integrated from the right edge:
//          omega(x) = x + 2 * integral_x^{hi} (1 - F(u)) du,
//      which is anchored so omega(hi) = hi.  With F in [0,1] this makes
//      omega 1-Lipschitz and >= x automatically; the defect of the mirror
//      identity at the left edge is reported, and omega is clamped to |x|
//      afterwards so every emitted grid curve satisfies omega >= |x|.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "spinwalk/rational.hpp"
#include "spinwalk/series.hpp"

namespace spinwalk {

// A curve sampled on a grid, with its defining invariants measurable.
struct GridCurve {
  std::vector<double> x;
  std::vector<double> y;

  // Worst violation of y >= |x| (0 when the curve dominates |x|).
  double domination_defect() const {
    double w = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
      w = std::max(w, std::fabs(x[i]) - y[i]);
    return std::max(w, 0.0);
  }
  // Worst excess of |dy| over |dx| between neighbours (0 when 1-Lipschitz).
  double lipschitz_defect() const {
    double w = 0.0;
    for (size_t i = 0; i + 1 < x.size(); ++i)
      w = std::max(w, std::fabs(y[i + 1] - y[i]) - std::fabs(x[i + 1] - x[i]));
    return std::max(w, 0.0);
  }
};

// Jacobi coefficients of a moment functional, computed exactly.
struct JacobiFraction {
  std::vector<double> a;  // diagonal, a_0..a_{d-1}
  std::vector<double> b;  // off-diagonal weights, b_1..b_{d-1} (all > 0)
  int depth = 0;          // number of levels actually usable
  double min_offdiag = 0; // smallest b_k kept (conditioning indicator)

  std::complex<double> resolvent(std::complex<double> z) const {
    std::complex<double> f = 0.0;
    for (int k = depth - 1; k >= 1; --k) f = b[k - 1] / (z - a[k] - f);
    return 1.0 / (z - a[0] - f);
  }
};

// Chebyshev algorithm on M_1..M_N (with M_0 = 1 implicit), in exact
// rationals; stops early when the truncated functional stops being positive
// (b_k <= 0), which also handles finitely-supported inputs like delta_0.
inline JacobiFraction jacobi_from_moments(const std::vector<Rat>& M) {
  const int N = static_cast<int>(M.size());
  if (N < 1) throw std::invalid_argument("jacobi_from_moments: no moments");
  const int levels = (N + 1) / 2;  // uses moments m_0..m_{2*levels-1}
  const int width = 2 * levels;

  std::vector<Rat> a{M[0]};  // a_0 = m_1 / m_0 with m_0 = 1
  std::vector<Rat> b;        // b_1, b_2, ...
  // Chebyshev table rows k-1 and k-2 (row "-1" is all zeros).
  std::vector<Rat> prev2(width, Rat(0));
  std::vector<Rat> prev(width, Rat(0));
  prev[0] = 1;
  for (int l = 1; l < width; ++l) prev[l] = M[l - 1];

  for (int k = 1; k < levels; ++k) {
    std::vector<Rat> row(width, Rat(0));
    const Rat bprev = (k >= 2) ? b[k - 2] : Rat(0);  // b_0 multiplies zeros
    for (int l = k; l <= width - k - 1; ++l)
      row[l] = prev[l + 1] - a[k - 1] * prev[l] - bprev * prev2[l];
    if (!(row[k] > 0)) break;  // functional stopped being strictly positive
    b.push_back(row[k] / prev[k - 1]);
    a.push_back(row[k + 1] / row[k] - prev[k] / prev[k - 1]);
    prev2 = std::move(prev);
    prev = std::move(row);
  }

  JacobiFraction J;
  J.depth = static_cast<int>(a.size());
  J.a.reserve(a.size());
  for (const auto& v : a) J.a.push_back(v.get_d());
  J.b.reserve(b.size());
  double mn = 0.0;
  for (const auto& v : b) {
    J.b.push_back(v.get_d());
    mn = (mn == 0.0) ? J.b.back() : std::min(mn, J.b.back());
  }
  J.min_offdiag = mn;
  return J;
}

struct ShapeRecovery {
  GridCurve omega;                  // reconstructed curve (clamped to >= |x|)
  std::vector<double> density;      // extrapolated boundary-charge density
  std::vector<double> distribution; // its distribution F, clamped to [0,1]
  double mass_defect = 0;   // |(raw density integral) - 1|
  double edge_defect = 0;   // |omega(lo) - |lo|| before clamping
  double clamp_defect = 0;  // largest upward clamp applied to omega
  int depth = 0;            // continued-fraction levels used
  double min_offdiag = 0;   // smallest Jacobi weight (conditioning indicator)
};

// Reconstruct the boundary-charge density, its distribution function, and
// the curve from the measure moments M_1..M_N, on a uniform grid of
// `points` nodes over [lo, hi].
inline ShapeRecovery shape_from_moments(const std::vector<Rat>& M, double lo,
                                        double hi, int points,
                                        std::vector<double> ys = {0.1, 0.05,
                                                                  0.025}) {
  if (!(hi > lo) || points < 2)
    throw std::invalid_argument("shape_from_moments: bad grid");
  if (ys.size() < 2)
    throw std::invalid_argument("shape_from_moments: need >= 2 heights");
  if (M.empty())
    throw std::invalid_argument("shape_from_moments: no moments");

  // Measure moments -> boundary-charge moments, exactly.
  const int N = static_cast<int>(M.size());
  PowerSeries<Rat> H(N);
  H.c[0] = 1;
  for (int k = 1; k <= N; ++k) H.c[k] = M[k - 1];
  const PowerSeries<Rat> L = log_series(H);
  std::vector<Rat> tau(N);
  for (int k = 1; k <= N; ++k) tau[k - 1] = Rat(k) * L.c[k];

  const JacobiFraction J = jacobi_from_moments(tau);

  ShapeRecovery rec;
  rec.depth = J.depth;
  rec.min_offdiag = J.min_offdiag;
  const int n = points;
  const double h = (hi - lo) / (n - 1);
  rec.omega.x.resize(n);
  rec.density.resize(n);
  rec.distribution.resize(n);

  // Lagrange extrapolation weights to y = 0: w_j = prod_{i != j} y_i/(y_i-y_j).
  std::vector<double> w(ys.size(), 1.0);
  for (size_t j = 0; j < ys.size(); ++j)
    for (size_t i = 0; i < ys.size(); ++i)
      if (i != j) w[j] *= ys[i] / (ys[i] - ys[j]);

  const double pi = 3.14159265358979323846;
  for (int i = 0; i < n; ++i) {
    const double x = lo + h * i;
    rec.omega.x[i] = x;
    double d = 0.0;
    for (size_t j = 0; j < ys.size(); ++j) {
      const std::complex<double> G = J.resolvent({x, ys[j]});
      d += w[j] * (-G.imag() / pi);
    }
    rec.density[i] = std::max(d, 0.0);
  }

  // Distribution function by cumulative trapezoid, then clamp to [0,1].
  double acc = 0.0;
  rec.distribution[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    acc += 0.5 * (rec.density[i - 1] + rec.density[i]) * h;
    rec.distribution[i] = acc;
  }
  rec.mass_defect = std::fabs(acc - 1.0);
  for (auto& F : rec.distribution) F = std::min(std::max(F, 0.0), 1.0);

  // omega(x) = x + 2 * integral_x^{hi} (1 - F), accumulated right-to-left.
  rec.omega.y.resize(n);
  double tail = 0.0;
  rec.omega.y[n - 1] = rec.omega.x[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    tail += 0.5 * ((1.0 - rec.distribution[i]) +
                   (1.0 - rec.distribution[i + 1])) * h;
    rec.omega.y[i] = rec.omega.x[i] + 2.0 * tail;
  }
  rec.edge_defect = std::fabs(rec.omega.y[0] - std::fabs(rec.omega.x[0]));
  for (int i = 0; i < n; ++i) {
    const double floor_i = std::fabs(rec.omega.x[i]);
    if (rec.omega.y[i] < floor_i) {
      rec.clamp_defect = std::max(rec.clamp_defect, floor_i - rec.omega.y[i]);
      rec.omega.y[i] = floor_i;
    }
  }
  return rec;
}

}  // namespace spinwalk
