#pragma once

// Pausing-time laws for the continuous-time walk, and the renewal-weighted
// tail factor  a(k,t,n) = sum_j (1-k/n)^j P[exactly j renewals by time tn],
// whose large-n limit is exp(-kt/m).  Exponential and gamma laws go through
// stable closed/semi-closed forms (Poisson weights, regularized incomplete
// gamma); bounded-density laws go through a grid convolution with explicit
// truncation reporting; the deterministic law is handled exactly but flagged
// as outside the integrability hypotheses of the concentration statement.

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinwalk/rng.hpp"

namespace spinwalk {

struct PausingSpec {
  enum class Family { exponential, gamma, uniform, histogram, deterministic };

  Family family = Family::exponential;
  double mean = 1.0;
  double shape = 1.0, scale = 1.0;        // gamma parameters
  double lo = 0.0, hi = 0.0;              // uniform support
  std::vector<double> edges;              // histogram bin edges, increasing
  std::vector<double> mass;               // histogram bin masses, sum 1
  bool integrability_known = true;        // density condition for concentration

  static PausingSpec exponential(double m) {
    if (!(m > 0)) throw std::invalid_argument("pausing: mean must be positive");
    PausingSpec p;
    p.family = Family::exponential;
    p.mean = m;
    return p;
  }

  static PausingSpec gamma(double shape, double scale) {
    if (!(shape > 0) || !(scale > 0))
      throw std::invalid_argument("pausing: gamma parameters must be positive");
    PausingSpec p;
    p.family = Family::gamma;
    p.shape = shape;
    p.scale = scale;
    p.mean = shape * scale;
    return p;
  }

  static PausingSpec uniform(double lo, double hi) {
    if (!(0 <= lo && lo < hi))
      throw std::invalid_argument("pausing: need 0 <= lo < hi");
    PausingSpec p;
    p.family = Family::uniform;
    p.lo = lo;
    p.hi = hi;
    p.mean = (lo + hi) / 2;
    return p;
  }

  static PausingSpec histogram(std::vector<double> edges, std::vector<double> mass) {
    if (edges.size() < 2 || mass.size() + 1 != edges.size())
      throw std::invalid_argument("pausing: histogram needs B+1 edges for B masses");
    double tot = 0, mean = 0;
    for (std::size_t b = 0; b < mass.size(); ++b) {
      if (!(edges[b] < edges[b + 1]) || edges[b] < 0 || mass[b] < 0)
        throw std::invalid_argument("pausing: histogram edges/masses invalid");
      tot += mass[b];
      mean += mass[b] * (edges[b] + edges[b + 1]) / 2;
    }
    if (!(tot > 0)) throw std::invalid_argument("pausing: histogram total mass zero");
    PausingSpec p;
    p.family = Family::histogram;
    p.edges = std::move(edges);
    for (double& w : mass) w /= tot;
    p.mass = std::move(mass);
    p.mean = mean / tot;
    if (!(p.mean > 0)) throw std::invalid_argument("pausing: histogram mean zero");
    return p;
  }

  static PausingSpec deterministic(double m) {
    if (!(m > 0)) throw std::invalid_argument("pausing: mean must be positive");
    PausingSpec p;
    p.family = Family::deterministic;
    p.mean = m;
    p.integrability_known = false;  // excluded by the concentration hypotheses
    return p;
  }

  double draw(Rng& rng) const {
    switch (family) {
      case Family::exponential:
        return rng.exponential(mean);
      case Family::gamma:
        return rng.gamma(shape, scale);
      case Family::uniform:
        return lo + (hi - lo) * rng.uniform();
      case Family::histogram: {
        double u = rng.uniform();
        for (std::size_t b = 0; b < mass.size(); ++b) {
          if (u < mass[b] || b + 1 == mass.size())
            return edges[b] + (edges[b + 1] - edges[b]) * rng.uniform();
          u -= mass[b];
        }
        return edges.back();
      }
      case Family::deterministic:
        return mean;
    }
    return mean;
  }

  // P[pause > x]
  double tail(double x) const {
    if (x <= 0) return 1.0;
    switch (family) {
      case Family::exponential:
        return std::exp(-x / mean);
      case Family::gamma:
        return boost::math::gamma_q(shape, x / scale);
      case Family::uniform:
        if (x <= lo) return 1.0;
        if (x >= hi) return 0.0;
        return (hi - x) / (hi - lo);
      case Family::histogram: {
        double acc = 0;
        for (std::size_t b = 0; b < mass.size(); ++b) {
          if (x <= edges[b])
            acc += mass[b];
          else if (x < edges[b + 1])
            acc += mass[b] * (edges[b + 1] - x) / (edges[b + 1] - edges[b]);
        }
        return acc;
      }
      case Family::deterministic:
        return x < mean ? 1.0 : 0.0;
    }
    return 0.0;
  }
};

struct AFactorResult {
  double value = 0;                  // sum_{j <= j_max} (1-k/n)^j P[N_{tn} = j]
  double exponential_reference = 0;  // exp(-k t / m), the large-n limit
  double tail_mass = 0;              // renewal mass beyond j_max (unweighted)
  int terms_used = 0;
  bool tail_warning = false;         // tail_mass > 1e-8
};

namespace detail {

// log of the Poisson(mu) mass at j
inline double log_poisson_pmf(double mu, long long j) {
  return -mu + j * std::log(mu) - std::lgamma(static_cast<double>(j) + 1.0);
}

}  // namespace detail

inline AFactorResult a_factor(int k, double t, long long n, const PausingSpec& psi,
                              long long j_max) {
  if (n < 1 || t < 0 || j_max < 0)
    throw std::invalid_argument("a_factor: need n >= 1, t >= 0, j_max >= 0");
  const double c = 1.0 - static_cast<double>(k) / n;
  const double horizon = t * n;
  AFactorResult out;
  out.exponential_reference = std::exp(-static_cast<double>(k) * t / psi.mean);
  if (horizon == 0) {  // no renewals can complete
    out.value = 1.0;
    out.terms_used = 1;
    return out;
  }

  switch (psi.family) {
    case PausingSpec::Family::exponential: {
      // renewal counts are Poisson(tn/m); sum the mass in a +-12 sigma window
      const double mu = horizon / psi.mean;
      const long long w = static_cast<long long>(12 * std::sqrt(mu) + 20);
      const long long center = static_cast<long long>(mu);
      const long long j_lo = std::max<long long>(0, center - w);
      const long long j_hi = std::min(j_max, center + w);
      double covered = 0;
      for (long long j = j_lo; j <= j_hi; ++j) {
        const double p = std::exp(detail::log_poisson_pmf(mu, j));
        covered += p;
        out.value += std::pow(c, static_cast<double>(j)) * p;
        ++out.terms_used;
      }
      // mass below the window is negligible by construction, so 1 - covered
      // is dominated by whatever lies beyond min(j_max, center + w)
      out.tail_mass = std::max(0.0, 1.0 - covered);
      break;
    }
    case PausingSpec::Family::gamma: {
      // the j-fold convolution is gamma(j*shape, scale), so
      // P[N = j] = F_j(tn) - F_{j+1}(tn) with F_j regularized incomplete gamma
      const double x = horizon / psi.scale;
      double Fj = 1.0;  // F_0
      for (long long j = 0; j <= j_max; ++j) {
        const double Fj1 =
            boost::math::gamma_p((static_cast<double>(j) + 1) * psi.shape, x);
        const double pj = Fj - Fj1;
        if (pj > 0) out.value += std::pow(c, static_cast<double>(j)) * pj;
        ++out.terms_used;
        Fj = Fj1;
        if (Fj < 1e-18 && j > static_cast<long long>(horizon / psi.mean)) break;
      }
      out.tail_mass = Fj;  // mass of runs not finished within the summed range
      break;
    }
    case PausingSpec::Family::deterministic: {
      // the j-fold convolution is a point at j*m
      const long long jstar = static_cast<long long>(std::floor(horizon / psi.mean));
      if (jstar <= j_max) {
        out.value = std::pow(c, static_cast<double>(jstar));
        out.terms_used = 1;
      } else {
        out.tail_mass = 1.0;
      }
      break;
    }
    case PausingSpec::Family::uniform:
    case PausingSpec::Family::histogram: {
      // grid convolution of cell masses, step m/2000.  The pausing law is
      // replaced by a mass-exact windowed kernel (each bin's mass spread
      // evenly over the cells its rounded window covers), so repeated
      // convolution preserves total mass exactly and only smears locations
      // by O(step); windows convolve in O(bins) per cell via prefix sums.
      const double h = psi.mean / 2000.0;
      const std::size_t cells = static_cast<std::size_t>(horizon / h) + 2;
      struct Window {
        long long s_lo, s_hi;
        double cell_mass;
      };
      std::vector<Window> windows;
      const auto add_window = [&](double blo, double bhi, double bmass) {
        long long s_lo = std::llround(blo / h), s_hi = std::llround(bhi / h);
        if (s_hi <= s_lo) s_hi = s_lo + 1;
        --s_hi;  // cells s_lo .. s_hi inclusive
        windows.push_back({s_lo, s_hi, bmass / (s_hi - s_lo + 1)});
      };
      if (psi.family == PausingSpec::Family::uniform)
        add_window(psi.lo, psi.hi, 1.0);
      else
        for (std::size_t b = 0; b < psi.mass.size(); ++b)
          add_window(psi.edges[b], psi.edges[b + 1], psi.mass[b]);

      // f = cell masses of the j-fold convolution restricted to [0, horizon]
      std::vector<double> f(cells, 0.0), pref(cells + 1, 0.0), next(cells, 0.0);
      out.value = psi.tail(horizon);  // j = 0 term
      out.terms_used = 1;
      double cj = 1.0;
      bool first = true;
      for (long long j = 1; j <= j_max; ++j) {
        // convolve with the kernel (the first pass initializes f = kernel)
        pref[0] = 0;
        for (std::size_t i = 0; i < cells; ++i) pref[i + 1] = pref[i] + f[i];
        std::fill(next.begin(), next.end(), 0.0);
        for (const Window& w : windows)
          for (std::size_t i = 0; i < cells; ++i) {
            if (first) {
              const long long s = static_cast<long long>(i);
              if (s >= w.s_lo && s <= w.s_hi) next[i] += w.cell_mass;
            } else {
              const long long a = std::max<long long>(
                  0, static_cast<long long>(i) - w.s_hi);
              const long long bnd = std::max<long long>(
                  0, std::min<long long>(static_cast<long long>(i) - w.s_lo + 1,
                                         static_cast<long long>(cells)));
              if (bnd > a) next[i] += w.cell_mass * (pref[bnd] - pref[a]);
            }
          }
        std::swap(f, next);
        first = false;

        cj *= c;
        double term = 0, inside = 0;
        for (std::size_t i = 0; i < cells; ++i) {
          if (f[i] == 0) continue;
          term += f[i] * psi.tail(horizon - (i + 0.5) * h);
          inside += f[i];
        }
        out.value += cj * term;
        ++out.terms_used;
        if (inside < 1e-14) {  // everything has drifted past the horizon
          out.tail_mass = inside;
          break;
        }
        out.tail_mass = inside;
      }
      break;
    }
  }
  out.tail_warning = out.tail_mass > 1e-8;
  return out;
}

}  // namespace spinwalk
