#pragma once

// Truncated formal power series over an exact coefficient ring K (the
// rationals, or polynomials in the evolution parameter q).  A series carries
// coefficients c[0..N] of sum c_j x^j; every operation documents through
// which order its result is exact given exact inputs.  Division only ever
// divides by units (constant term invertible) or by integers, so the same
// template serves both fields and the polynomial ring.

#include <stdexcept>
#include <vector>

namespace spinwalk {

template <class K>
struct PowerSeries {
  std::vector<K> c;  // c[j] multiplies x^j; size = order + 1

  PowerSeries() = default;
  explicit PowerSeries(int order) : c(static_cast<size_t>(order) + 1, K(0)) {
    if (order < 0) throw std::invalid_argument("PowerSeries: negative order");
  }
  int order() const { return static_cast<int>(c.size()) - 1; }

  static PowerSeries constant(const K& v, int order) {
    PowerSeries s(order);
    s.c[0] = v;
    return s;
  }

  const K& operator[](int j) const { return c[static_cast<size_t>(j)]; }
  K& operator[](int j) { return c[static_cast<size_t>(j)]; }

  PowerSeries truncate(int order) const {
    if (order > this->order())
      throw std::invalid_argument("PowerSeries::truncate: cannot extend");
    PowerSeries s(order);
    for (int j = 0; j <= order; ++j) s.c[j] = c[j];
    return s;
  }
};

template <class K>
PowerSeries<K> operator+(const PowerSeries<K>& a, const PowerSeries<K>& b) {
  const int N = std::min(a.order(), b.order());
  PowerSeries<K> s(N);
  for (int j = 0; j <= N; ++j) s.c[j] = a.c[j] + b.c[j];
  return s;
}

template <class K>
PowerSeries<K> operator-(const PowerSeries<K>& a, const PowerSeries<K>& b) {
  const int N = std::min(a.order(), b.order());
  PowerSeries<K> s(N);
  for (int j = 0; j <= N; ++j) s.c[j] = a.c[j] - b.c[j];
  return s;
}

template <class K>
PowerSeries<K> operator*(const K& v, const PowerSeries<K>& a) {
  PowerSeries<K> s(a.order());
  for (int j = 0; j <= a.order(); ++j) s.c[j] = v * a.c[j];
  return s;
}

// Truncated Cauchy product; exact through min of the input orders.
template <class K>
PowerSeries<K> operator*(const PowerSeries<K>& a, const PowerSeries<K>& b) {
  const int N = std::min(a.order(), b.order());
  PowerSeries<K> s(N);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N && j <= b.order(); ++j)
      s.c[i + j] = s.c[i + j] + a.c[i] * b.c[j];
  return s;
}

// d/dx; exact through order-1.
template <class K>
PowerSeries<K> derivative(const PowerSeries<K>& a) {
  if (a.order() == 0) return PowerSeries<K>(0);
  PowerSeries<K> s(a.order() - 1);
  for (int j = 1; j <= a.order(); ++j) s.c[j - 1] = K(j) * a.c[j];
  return s;
}

// Multiply by x^j, refilling to the requested order (exact through it as long
// as target_order <= a.order() + j).
template <class K>
PowerSeries<K> shift_up(const PowerSeries<K>& a, int j, int target_order) {
  if (target_order > a.order() + j)
    throw std::invalid_argument("shift_up: target order exceeds known coefficients");
  PowerSeries<K> s(target_order);
  for (int i = 0; i + j <= target_order && i <= a.order(); ++i)
    s.c[i + j] = a.c[i];
  return s;
}

// Multiplicative inverse; requires an invertible constant term (for the
// polynomial ring this means a nonzero constant).  Exact through a.order().
template <class K>
PowerSeries<K> inverse(const PowerSeries<K>& a) {
  const int N = a.order();
  PowerSeries<K> b(N);
  b.c[0] = K(1) / a.c[0];
  for (int n = 1; n <= N; ++n) {
    K acc(0);
    for (int j = 1; j <= n; ++j) acc = acc + a.c[j] * b.c[n - j];
    b.c[n] = K(0) - acc / a.c[0];
  }
  return b;
}

template <class K>
PowerSeries<K> pow_int(const PowerSeries<K>& a, int e) {
  PowerSeries<K> s = PowerSeries<K>::constant(K(1), a.order());
  for (int i = 0; i < e; ++i) s = s * a;
  return s;
}

// exp of a series with zero constant term: b_0 = 1, n b_n = sum_j j f_j b_{n-j}.
template <class K>
PowerSeries<K> exp_series(const PowerSeries<K>& f) {
  if (!(f.c[0] == K(0)))
    throw std::invalid_argument("exp_series: nonzero constant term");
  const int N = f.order();
  PowerSeries<K> b(N);
  b.c[0] = K(1);
  for (int n = 1; n <= N; ++n) {
    K acc(0);
    for (int j = 1; j <= n; ++j) acc = acc + K(j) * f.c[j] * b.c[n - j];
    b.c[n] = acc / K(n);
  }
  return b;
}

// log of a series with constant term 1: n g_n = n f_n - sum_{j<n} j g_j f_{n-j}.
template <class K>
PowerSeries<K> log_series(const PowerSeries<K>& f) {
  if (!(f.c[0] == K(1)))
    throw std::invalid_argument("log_series: constant term must be 1");
  const int N = f.order();
  PowerSeries<K> g(N);
  for (int n = 1; n <= N; ++n) {
    K acc = K(n) * f.c[n];
    for (int j = 1; j < n; ++j) acc = acc - K(j) * g.c[j] * f.c[n - j];
    g.c[n] = acc / K(n);
  }
  return g;
}

template <class K>
bool operator==(const PowerSeries<K>& a, const PowerSeries<K>& b) {
  if (a.order() != b.order()) return false;
  for (int j = 0; j <= a.order(); ++j)
    if (!(a.c[j] == b.c[j])) return false;
  return true;
}

}  // namespace spinwalk
