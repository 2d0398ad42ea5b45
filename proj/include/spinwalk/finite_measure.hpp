#pragma once

// Finitely-supported measures with exact rational atoms.  A measure may be
// tagged with a square scale s = scale_sq, meaning the true atom locations
// are loc/sqrt(s); even moments then stay rational while odd moments carry a
// single overall 1/sqrt(s) that is exposed separately.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinwalk/rational.hpp"

namespace spinwalk {

struct FiniteMeasure {
  struct Atom {
    Rat loc;   // stored location; true location = loc / sqrt(scale_sq)
    Rat mass;  // >= 0 for probability measures (zero-mass atoms are kept)
  };
  std::vector<Atom> atoms;  // sorted by loc, locations pairwise distinct
  Rat scale_sq = 1;

  void sort_check() {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.loc < y.loc; });
    for (size_t i = 0; i + 1 < atoms.size(); ++i)
      if (atoms[i].loc == atoms[i + 1].loc)
        throw std::invalid_argument("FiniteMeasure: duplicate atom location");
  }

  Rat total_mass() const {
    Rat s = 0;
    for (const auto& a : atoms) s += a.mass;
    return s;
  }

  // Mass at a stored-coordinate location (0 if absent).
  Rat mass_at(const Rat& loc) const {
    for (const auto& a : atoms)
      if (a.loc == loc) return a.mass;
    return Rat(0);
  }

  // sum of mass * loc^k over atoms, ignoring the scale tag.
  Rat moment_raw(int k) const {
    Rat s = 0;
    for (const auto& a : atoms) s += a.mass * rat_pow(a.loc, k);
    return s;
  }

  // Scaled moment; exact, so k must be even unless scale_sq = 1.
  Rat moment(int k) const {
    if (scale_sq == 1) return moment_raw(k);
    if (k % 2 != 0)
      throw std::domain_error(
          "FiniteMeasure::moment: odd moment of a sqrt-scaled measure is "
          "irrational; use moment_raw or moment_d");
    return moment_raw(k) / rat_pow(scale_sq, k / 2);
  }

  double moment_d(int k) const {
    return moment_raw(k).get_d() /
           std::pow(std::sqrt(scale_sq.get_d()), static_cast<double>(k));
  }
};

// Pushforward x -> x/r by an exact positive rational.
inline FiniteMeasure rescale(const FiniteMeasure& m, const Rat& r) {
  if (r <= 0) throw std::invalid_argument("rescale: r must be positive");
  FiniteMeasure out = m;
  for (auto& a : out.atoms) a.loc /= r;
  return out;
}

// Pushforward x -> x/sqrt(s), tracked exactly through the scale tag.
inline FiniteMeasure rescale_sqrt(const FiniteMeasure& m, const Rat& s) {
  if (s <= 0) throw std::invalid_argument("rescale_sqrt: s must be positive");
  FiniteMeasure out = m;
  out.scale_sq *= s;
  return out;
}

}  // namespace spinwalk
