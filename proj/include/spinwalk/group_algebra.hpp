#pragma once

// Exact rational group algebra of the double cover: dense coefficient
// vectors over the 2 n! group elements, with the handful of structured
// elements the trace computations need — twisted transpositions [i j] and
// cycles, Jucys–Murphy sums, the conditional expectation onto a smaller
// letter set, the forgetful projection onto the plain symmetric group, and
// class-sum expansion of central elements.

#include <stdexcept>
#include <vector>

#include "spinwalk/rational.hpp"
#include "spinwalk/twisted_group.hpp"

namespace spinwalk {

struct AlgebraElement {
  const TwistedGroup* G = nullptr;
  std::vector<Rat> c;  // size 2 n!, indexed by TwistedGroup::index

  explicit AlgebraElement(const TwistedGroup& g) : G(&g), c(2 * g.perm_count()) {}

  Rat& at(const TElem& x) { return c[G->index(x)]; }
  const Rat& at(const TElem& x) const { return c[G->index(x)]; }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  AlgebraElement& operator*=(const Rat& s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  bool operator==(const AlgebraElement& o) const { return c == o.c; }
};

inline AlgebraElement unit(const TwistedGroup& G, const TElem& x, Rat coeff = Rat(1)) {
  AlgebraElement a(G);
  a.at(x) = coeff;
  return a;
}

inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out(*a.G);
  std::vector<std::size_t> support_b;
  for (std::size_t j = 0; j < b.c.size(); ++j)
    if (b.c[j] != 0) support_b.push_back(j);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    const TElem x = a.G->element(i);
    for (const std::size_t j : support_b)
      out.at(a.G->multiply(x, b.G->element(j))) += a.c[i] * b.c[j];
  }
  return out;
}

// twisted transposition [i j] = z^{j-i-1} r_{j-1} ... r_{i+1} r_i r_{i+1}
// ... r_{j-1} for i < j, and [j i] = z [i j]
inline TElem transposition(const TwistedGroup& G, int i, int j) {
  if (i == j || i < 1 || j < 1 || i > G.letters() || j > G.letters())
    throw std::invalid_argument("transposition: need two distinct letters");
  const bool flipped = i > j;
  if (flipped) std::swap(i, j);
  TElem x = G.generator(i);
  for (int m = i + 1; m <= j - 1; ++m) {
    const TElem r = G.generator(m);
    x = G.multiply(r, G.multiply(x, r));
  }
  x.z ^= static_cast<std::uint8_t>((j - i - 1) & 1);
  if (flipped) x.z ^= 1;
  return x;
}

// twisted r-cycle [i_1 i_2 ... i_r] = [i_{r-1} i_r] ... [i_2 i_r] [i_1 i_r]
inline TElem cycle(const TwistedGroup& G, const std::vector<int>& letters) {
  if (letters.size() < 2) throw std::invalid_argument("cycle: need >= 2 letters");
  for (std::size_t a = 0; a < letters.size(); ++a)
    for (std::size_t b = a + 1; b < letters.size(); ++b)
      if (letters[a] == letters[b]) throw std::invalid_argument("cycle: repeated letter");
  const int last = letters.back();
  TElem x = transposition(G, letters[0], last);
  for (std::size_t t = 1; t + 1 < letters.size(); ++t)
    x = G.multiply(transposition(G, letters[t], last), x);
  return x;
}

// Jucys–Murphy element: sum of [i k] over i < k (zero when k = 1)
inline AlgebraElement jm(const TwistedGroup& G, int k) {
  if (k < 1 || k > G.letters()) throw std::invalid_argument("jm: 1 <= k <= n");
  AlgebraElement out(G);
  for (int i = 1; i < k; ++i) out.at(transposition(G, i, k)) += 1;
  return out;
}

inline AlgebraElement algebra_power(const AlgebraElement& a, int e) {
  AlgebraElement out = unit(*a.G, a.G->identity());
  for (int t = 0; t < e; ++t) out = multiply(out, a);
  return out;
}

// conditional expectation onto the subgroup on the first m letters: keep
// exactly the terms whose permutation fixes everything beyond m
inline AlgebraElement e_tilde(const AlgebraElement& a, const TwistedGroup& smaller) {
  const int m = smaller.letters();
  if (m > a.G->letters()) throw std::invalid_argument("e_tilde: wrong direction");
  AlgebraElement out(smaller);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    const TElem x = a.G->element(i);
    if (a.G->fixes_beyond(m, x)) out.at(a.G->restrict_to(smaller, x)) += a.c[i];
  }
  return out;
}

inline AlgebraElement embed(const AlgebraElement& a, const TwistedGroup& bigger) {
  AlgebraElement out(bigger);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    out.at(bigger.embed_from(*a.G, a.G->element(i))) += a.c[i];
  }
  return out;
}

// forgetful projection onto the plain symmetric group algebra: both central
// bits land on the same permutation rank
inline std::vector<Rat> phi(const AlgebraElement& a) {
  std::vector<Rat> out(a.G->perm_count());
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != 0) out[a.G->element(i).r] += a.c[i];
  return out;
}

// plain conditional expectation on the symmetric group side, rank-indexed
inline std::vector<Rat> e_ordinary(const std::vector<Rat>& v,
                                   const TwistedGroup& bigger,
                                   const TwistedGroup& smaller) {
  std::vector<Rat> out(smaller.perm_count());
  for (int r = 0; r < bigger.perm_count(); ++r) {
    if (v[r] == 0) continue;
    const TElem x{r, 0};
    if (bigger.fixes_beyond(smaller.letters(), x))
      out[bigger.restrict_to(smaller, x).r] += v[r];
  }
  return out;
}

inline bool is_central(const AlgebraElement& a) {
  for (int i = 1; i < a.G->letters(); ++i)
    for (std::size_t idx = 0; idx < a.c.size(); ++idx) {
      if (a.c[idx] == 0) continue;
      if (a.c[a.G->index(a.G->conjugate_by_generator(i, a.G->element(idx)))] != a.c[idx])
        return false;
    }
  return true;
}

inline AlgebraElement class_sum(const TwistedGroup& G,
                                const TwistedGroup::Classes& C, int id) {
  AlgebraElement out(G);
  for (std::size_t idx = 0; idx < out.c.size(); ++idx)
    if (C.class_of[idx] == id) out.c[idx] = 1;
  return out;
}

// central element = sum of alpha_C * (class sum of C); the coefficients are
// read off class representatives after verifying constancy on each class
inline std::vector<Rat> center_expand(const AlgebraElement& a,
                                      const TwistedGroup::Classes& C) {
  if (!is_central(a)) throw std::invalid_argument("center_expand: input is not central");
  std::vector<Rat> alpha(C.rep.size());
  for (std::size_t k = 0; k < C.rep.size(); ++k) alpha[k] = a.c[C.rep[k]];
  for (std::size_t idx = 0; idx < a.c.size(); ++idx)
    if (a.c[idx] != alpha[C.class_of[idx]])
      throw std::logic_error("center_expand: coefficient not constant on a class");
  return alpha;
}

}  // namespace spinwalk
