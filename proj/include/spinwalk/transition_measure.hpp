#pragma once

// The transition measure of a doubled diagram and its exact identities:
//   * partial-fraction masses at the valleys;
//   * the corner-mass identity linking hook counts across one added box;
//   * the positive/negative valley balance and the collapsed odd moments;
//   * the boundary (Rayleigh) counting data and the log-exp transform taking
//     its moments to the transition-measure moments;
//   * closed-form extraction of even free cumulants from even boundary
//     moments.

#include <stdexcept>
#include <utility>
#include <vector>

#include "spinwalk/doubled_diagram.hpp"
#include "spinwalk/finite_measure.hpp"
#include "spinwalk/series.hpp"
#include "spinwalk/shifted_tableaux.hpp"
#include "spinwalk/strict_partition.hpp"

namespace spinwalk {

// Probability measure on the valleys of D: the mass at valley x_i is the
// partial-fraction coefficient of prod(z - peaks)/prod(z - valleys) at x_i,
// i.e. prod_j (x_i - y_j) / prod_{j != i} (x_i - x_j).  Interlacing makes
// every mass positive; masses sum to 1.
inline FiniteMeasure transition_measure(const DoubledDiagram& D) {
  FiniteMeasure m;
  const auto& xs = D.valleys;
  const auto& ys = D.peaks;
  for (size_t i = 0; i < xs.size(); ++i) {
    Rat num = 1, den = 1;
    for (int y : ys) num *= Rat(xs[i] - y);
    for (size_t j = 0; j < xs.size(); ++j)
      if (j != i) den *= Rat(xs[i] - xs[j]);
    m.atoms.push_back({Rat(xs[i]), num / den});
  }
  m.sort_check();
  if (m.total_mass() != 1)
    throw std::logic_error("transition_measure: masses do not sum to 1");
  for (const auto& a : m.atoms)
    if (a.mass <= 0)
      throw std::logic_error("transition_measure: nonpositive mass");
  return m;
}

// Measure of the set {c, -c-1} for c > 0, or of {0} for c = 0 -- the mass a
// single addable box of content c carries, counting its mirror valley.
inline Rat pair_mass(const FiniteMeasure& m, int c) {
  if (c < 0) throw std::invalid_argument("pair_mass: c must be >= 0");
  if (c == 0) return m.mass_at(Rat(0));
  return m.mass_at(Rat(c)) + m.mass_at(Rat(-c - 1));
}

// Exact balance between each positive valley and its mirror:
// x * m({x}) = (x+1) * m({-x-1}).
inline bool balance_holds(const DoubledDiagram& D) {
  FiniteMeasure m = transition_measure(D);
  for (int x : D.valleys)
    if (x > 0 && Rat(x) * m.mass_at(Rat(x)) != Rat(x + 1) * m.mass_at(Rat(-x - 1)))
      return false;
  return true;
}

// Collapsed form of the odd moments: using the balance, the full sum
// M_{2k+1} = sum x^{2k+1} m({x}) over all valleys reduces to a sum over the
// positive valleys only.
inline Rat odd_moment_collapsed(const DoubledDiagram& D, int k) {
  FiniteMeasure m = transition_measure(D);
  Rat s = 0;
  for (int x : D.valleys)
    if (x > 0)
      s += Rat(x) * (rat_pow(Rat(x), 2 * k) - rat_pow(Rat(x + 1), 2 * k)) *
           m.mass_at(Rat(x));
  return s;
}

// Corner-mass identity across one added box lambda -> mu of content c:
//   g_mu / ((n+1) g_lambda)  ==  (1/2) m({c,-c-1})  (c > 0)
//                            ==  m({0})             (c = 0).
// Returns (lhs, rhs) for comparison.
inline std::pair<Rat, Rat> corner_mass_check(const StrictPartition& lambda,
                                             const StrictPartition& mu) {
  if (!covers(mu, lambda))
    throw std::invalid_argument("corner_mass_check: mu must cover lambda");
  int c = -1;
  for (const auto& mv : addable_boxes(lambda))
    if (mv.result == mu) c = mv.content;
  const Rat lhs = Rat(g_hook(mu)) / (Rat(lambda.n() + 1) * Rat(g_hook(lambda)));
  const FiniteMeasure m = transition_measure(doubled_profile(lambda));
  const Rat rhs = (c == 0) ? pair_mass(m, 0) : pair_mass(m, c) / 2;
  return {lhs, rhs};
}

// sum over addable boxes of (c(c+1)/2)^k * m({c,-c-1}): the spectral side of
// the squared-ladder trace identity.
inline Rat jm_moment_rhs(const StrictPartition& lambda, int k) {
  if (k < 1) throw std::invalid_argument("jm_moment_rhs: k >= 1");
  const FiniteMeasure m = transition_measure(doubled_profile(lambda));
  Rat s = 0;
  for (const auto& mv : addable_boxes(lambda)) {
    const int c = mv.content;
    const Rat w = Rat(c) * Rat(c + 1) / 2;
    s += rat_pow(w, k) * pair_mass(m, c);
  }
  return s;
}

// Signed boundary counting data: +1 at each valley, -1 at each peak.  Its
// k-th moment is sum(valleys^k) - sum(peaks^k); the 0-th moment is +1.
struct RayleighData {
  std::vector<int> plus;   // valleys
  std::vector<int> minus;  // peaks

  Rat moment(int k) const {
    Rat s = 0;
    for (int v : plus) s += rat_pow(Rat(v), k);
    for (int p : minus) s -= rat_pow(Rat(p), k);
    return s;
  }
};

inline RayleighData rayleigh_of(const DoubledDiagram& D) {
  return RayleighData{D.valleys, D.peaks};
}

// Log-exp transform at the series level: given the moments M_1..M_N of the
// boundary data tau, the moments of the associated probability measure mu are
// the coefficients of exp(sum_k M_k(tau)/k w^k).  Returns M_0..M_N of mu
// (M_0 = 1).
inline std::vector<Rat> markov_series(const std::vector<Rat>& tau_moments,
                                      int N) {
  if (static_cast<int>(tau_moments.size()) < N)
    throw std::invalid_argument("markov_series: need N tau moments");
  PowerSeries<Rat> f(N);
  for (int k = 1; k <= N; ++k) f.c[k] = tau_moments[k - 1] / Rat(k);
  PowerSeries<Rat> H = exp_series(f);
  return H.c;
}

// Closed-form even free cumulants of mu from even boundary moments of tau
// (odd tau-moments assumed zero).  With M_{2j} = tau_even_moments[j-1]:
//   R_{2k} = sum_{l=1}^{k} (1-2k)^{l-1}/l! *
//            sum_{j_1+...+j_l=k, j_i>=1} prod_i M_{2j_i} / (2^l j_1...j_l).
// Returns R_2, R_4, ..., R_{2N}.
inline std::vector<Rat> rayleigh_to_cumulants(
    const std::vector<Rat>& tau_even_moments, int N) {
  if (static_cast<int>(tau_even_moments.size()) < N)
    throw std::invalid_argument("rayleigh_to_cumulants: need N even moments");
  std::vector<Rat> R(N);
  for (int k = 1; k <= N; ++k) {
    Rat total = 0;
    // iterate over ordered compositions (j_1,...,j_l) of k with j_i >= 1
    std::vector<int> comp;
    auto rec = [&](auto&& self, int rem) -> void {
      if (rem == 0) {
        const int l = static_cast<int>(comp.size());
        Rat term = rat_pow(Rat(1 - 2 * k), l - 1) / Rat(factorial(l));
        term /= rat_pow(Rat(2), l);
        for (int j : comp) term *= tau_even_moments[j - 1] / Rat(j);
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
    R[k - 1] = total;
  }
  return R;
}

}  // namespace spinwalk
