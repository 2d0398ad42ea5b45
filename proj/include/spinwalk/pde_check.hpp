#pragma once
// Coefficientwise verification that the evolved moment family satisfies the
// inviscid transport equation of its Cauchy transform.
//
// Let m_j(q) be the moments obtained from a starting cumulant vector
// (R_1 = 0, R_2 = 1) by scaling R_{k+1} -> q^k R_{k+1} and converting back,
// with q = e^{-t/m} kept as a polynomial indeterminate so that
// m * d/dt = -q * d/dq exactly.  With G(z) = sum_j m_j z^{-j-1} the family
// should satisfy
//
//     m dG/dt + G dG/dz - G - (1/G) dG/dz = 0
//
// identically.  Substituting w = 1/z, G = w H(w), H = sum m_j w^j (so that
// d/dz = -w^2 d/dw) turns the left side into the power series
//
//     -q w H_q - w^3 H^2 - w^4 H H' - w H + w + w^2 H'/H,
//
// whose w^j coefficient is the z^{-j} coefficient of the residual: a
// polynomial in q with exact rational coefficients that must vanish.

#include <stdexcept>
#include <vector>

#include "spinwalk/cumulants.hpp"
#include "spinwalk/qpoly.hpp"
#include "spinwalk/rational.hpp"
#include "spinwalk/series.hpp"

namespace spinwalk {

// Moments of the evolved cumulant vector with q symbolic: entry j is the
// polynomial m_{j+1}(q).
inline std::vector<QPoly> symbolic_moments(const std::vector<Rat>& R0) {
  std::vector<QPoly> R(R0.begin(), R0.end());
  return cumulants_to_moments(evolve(R, QPoly::variable()));
}

// Coefficientwise q-derivative of a series in w.
inline PowerSeries<QPoly> q_derivative(const PowerSeries<QPoly>& H) {
  PowerSeries<QPoly> out(H.order());
  for (int j = 0; j <= H.order(); ++j) out.c[j] = H.c[j].dq();
  return out;
}

// Residual of the transport equation through z^{-z_order}: entry j holds the
// z^{-j} coefficient (a polynomial in q), exact for j <= z_order.  Requires
// z_order + 1 starting cumulants (one above the minimum, so the top
// coefficient stays comfortably inside the exact range).  All entries must
// be zero.
inline std::vector<QPoly> pde_residual(const std::vector<Rat>& R0, int z_order) {
  if (z_order < 1) throw std::invalid_argument("pde_residual: z_order < 1");
  if (static_cast<int>(R0.size()) < z_order + 1)
    throw std::invalid_argument(
        "pde_residual: need at least z_order + 1 starting cumulants");
  const std::vector<QPoly> M = symbolic_moments(R0);
  const PowerSeries<QPoly> H = stieltjes_series(M);
  const PowerSeries<QPoly> Hq = q_derivative(H);
  const PowerSeries<QPoly> Hp = derivative(H);
  const int W = z_order;

  const QPoly q = QPoly::variable();
  PowerSeries<QPoly> res =
      shift_up(QPoly(Rat(-1)) * (q * Hq), 1, W)       // -q w H_q
      - shift_up(H * H, 3, W)                         // -w^3 H^2
      - shift_up(H * Hp, 4, W)                        // -w^4 H H'
      - shift_up(H, 1, W)                             // -w H
      + shift_up(Hp * inverse(H), 2, W);              // +w^2 H'/H
  res.c[1] = res.c[1] + QPoly(1);                     // +w
  std::vector<QPoly> out(static_cast<std::size_t>(W) + 1);
  for (int j = 0; j <= W; ++j) out[static_cast<std::size_t>(j)] = res.c[j];
  return out;
}

// Fixed-point defect of the stationary Cauchy-transform equation
// G^2 - z G + 1 = 0, i.e. w^2 H^2 - H + 1 as a series in w = 1/z; identically
// zero exactly when the moments are those of the standard semicircle.
template <class K>
PowerSeries<K> stationary_defect(const std::vector<K>& M) {
  const PowerSeries<K> H = stieltjes_series(M);
  const int N = H.order();
  PowerSeries<K> defect = shift_up(H * H, 2, N) - H;
  defect.c[0] = defect.c[0] + K(1);
  return defect;
}

}  // namespace spinwalk
