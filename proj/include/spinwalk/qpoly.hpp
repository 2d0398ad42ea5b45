#pragma once

// Dense polynomials in the formal evolution parameter q with exact rational
// coefficients.  Replacing e^{-t/m} by the indeterminate q turns the
// time-evolution identities into polynomial identities that can be asserted
// coefficientwise; the time derivative m*d/dt becomes -q*d/dq.
//
// QPoly is the coefficient ring used by PowerSeries<QPoly>; division is
// defined only by polynomials that are nonzero constants (the only units),
// which is all the series recursions ever need.

#include <stdexcept>
#include <string>
#include <vector>

#include "spinwalk/rational.hpp"

namespace spinwalk {

struct QPoly {
  std::vector<Rat> a;  // a[j] multiplies q^j; no trailing zeros (empty == 0)

  QPoly() = default;
  QPoly(long v) {  // NOLINT(google-explicit-constructor): ring-constant ctor
    if (v != 0) a.assign(1, Rat(v));
  }
  QPoly(const Rat& v) {  // NOLINT(google-explicit-constructor)
    if (v != 0) a.assign(1, v);
  }
  explicit QPoly(std::vector<Rat> coeffs) : a(std::move(coeffs)) { trim(); }

  static QPoly variable(int power = 1) {
    QPoly p;
    p.a.assign(static_cast<size_t>(power) + 1, Rat(0));
    p.a.back() = 1;
    return p;
  }

  void trim() {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  bool is_zero() const { return a.empty(); }
  bool is_constant() const { return a.size() <= 1; }
  int degree() const { return static_cast<int>(a.size()) - 1; }  // -1 for 0
  Rat constant_term() const { return a.empty() ? Rat(0) : a[0]; }
  Rat coeff(int j) const {
    return (j >= 0 && j < static_cast<int>(a.size())) ? a[j] : Rat(0);
  }

  // d/dq
  QPoly dq() const {
    QPoly r;
    for (size_t j = 1; j < a.size(); ++j) r.a.push_back(Rat(static_cast<long>(j)) * a[j]);
    r.trim();
    return r;
  }

  Rat eval(const Rat& q) const {
    Rat v = 0;
    for (size_t j = a.size(); j-- > 0;) v = v * q + a[j];
    return v;
  }

  std::string str() const {
    if (a.empty()) return "0";
    std::string s;
    for (size_t j = 0; j < a.size(); ++j) {
      if (a[j] == 0) continue;
      if (!s.empty()) s += " + ";
      s += rat_str(a[j]);
      if (j >= 1) s += "*q" + (j > 1 ? "^" + std::to_string(j) : std::string());
    }
    return s.empty() ? "0" : s;
  }
};

inline QPoly operator+(const QPoly& x, const QPoly& y) {
  QPoly r;
  r.a.resize(std::max(x.a.size(), y.a.size()), Rat(0));
  for (size_t j = 0; j < x.a.size(); ++j) r.a[j] += x.a[j];
  for (size_t j = 0; j < y.a.size(); ++j) r.a[j] += y.a[j];
  r.trim();
  return r;
}

inline QPoly operator-(const QPoly& x, const QPoly& y) {
  QPoly r;
  r.a.resize(std::max(x.a.size(), y.a.size()), Rat(0));
  for (size_t j = 0; j < x.a.size(); ++j) r.a[j] += x.a[j];
  for (size_t j = 0; j < y.a.size(); ++j) r.a[j] -= y.a[j];
  r.trim();
  return r;
}

inline QPoly operator*(const QPoly& x, const QPoly& y) {
  if (x.is_zero() || y.is_zero()) return QPoly();
  QPoly r;
  r.a.assign(x.a.size() + y.a.size() - 1, Rat(0));
  for (size_t i = 0; i < x.a.size(); ++i)
    for (size_t j = 0; j < y.a.size(); ++j) r.a[i + j] += x.a[i] * y.a[j];
  r.trim();
  return r;
}

// Only division by nonzero constants (the units of the ring).
inline QPoly operator/(const QPoly& x, const QPoly& y) {
  if (!y.is_constant() || y.is_zero())
    throw std::domain_error("QPoly: division only by nonzero constants");
  QPoly r = x;
  for (auto& v : r.a) v /= y.a[0];
  return r;
}

inline bool operator==(const QPoly& x, const QPoly& y) { return x.a == y.a; }
inline bool operator!=(const QPoly& x, const QPoly& y) { return !(x == y); }

inline QPoly qpoly_pow(const QPoly& x, int e) {
  QPoly r(1);
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

}  // namespace spinwalk
