#pragma once

// The double cover of the symmetric group on n letters, presented by
// generators z, r_1..r_{n-1} with z central, z^2 = e, r_i^2 = e,
// (r_i r_{i+1})^3 = e, and r_i r_j = z r_j r_i for |i-j| >= 2.  Elements are
// (permutation rank, central bit).  The central sign of a product is fixed
// by embedding the canonical bubble-sort lift of each permutation into the
// Clifford algebra via r_i -> (e_i - e_{i+1})/sqrt(2) and comparing; the
// construction precomputes sign tables for multiplication by a generator on
// either side, after which all group arithmetic is table lookups.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spinwalk/clifford.hpp"
#include "spinwalk/partitions.hpp"

namespace spinwalk {

// group element: permutation rank plus the power of z
struct TElem {
  std::int32_t r = 0;
  std::uint8_t z = 0;  // 0 or 1

  bool operator==(const TElem& o) const { return r == o.r && z == o.z; }
  bool operator!=(const TElem& o) const { return !(*this == o); }
};

class TwistedGroup {
 public:
  explicit TwistedGroup(int n) : n_(n) {
    if (n < 1 || n > 8) throw std::invalid_argument("TwistedGroup: 1 <= n <= 8");
    fact_.assign(n + 1, 1);
    for (int i = 1; i <= n; ++i) fact_[i] = fact_[i - 1] * i;
    nfact_ = fact_[n];
    build_words();
    build_perm_tables();
    build_sign_tables();
    build_inverses();
  }

  int letters() const { return n_; }
  int perm_count() const { return nfact_; }
  int order() const { return 2 * nfact_; }  // |group| = 2 n!

  // ---- permutation plumbing (0-based one-line images) ----

  std::vector<std::uint8_t> unrank(int r) const {
    std::vector<std::uint8_t> pool(n_), out(n_);
    for (int i = 0; i < n_; ++i) pool[i] = static_cast<std::uint8_t>(i);
    for (int i = 0; i < n_; ++i) {
      const int f = fact_[n_ - 1 - i];
      const int d = r / f;
      r %= f;
      out[i] = pool[d];
      pool.erase(pool.begin() + d);
    }
    return out;
  }

  int rank(const std::vector<std::uint8_t>& a) const {
    int r = 0;
    for (int i = 0; i < n_; ++i) {
      int smaller = 0;
      for (int j = i + 1; j < n_; ++j) smaller += (a[j] < a[i]);
      r += smaller * fact_[n_ - 1 - i];
    }
    return r;
  }

  int word_length(int r) const { return word_off_[r + 1] - word_off_[r]; }
  int sgn(int r) const { return (word_length(r) & 1) ? -1 : +1; }

  // image of 1-based letter under the permutation of rank r
  int image(int r, int letter) const {
    return oneline_[static_cast<size_t>(r) * n_ + (letter - 1)] + 1;
  }

  // cycle type of the underlying permutation, as a partition of n
  Partition cycle_type(int r) const {
    std::vector<bool> seen(n_, false);
    Partition type;
    const std::uint8_t* a = &oneline_[static_cast<size_t>(r) * n_];
    for (int s = 0; s < n_; ++s) {
      if (seen[s]) continue;
      int len = 0, x = s;
      while (!seen[x]) {
        seen[x] = true;
        x = a[x];
        ++len;
      }
      type.push_back(len);
    }
    std::sort(type.begin(), type.end(), std::greater<int>());
    return type;
  }

  // ---- group arithmetic ----

  TElem identity() const { return {0, 0}; }
  TElem z() const { return {0, 1}; }

  // generator r_i, adjacent letters i, i+1 (1-based, 1 <= i <= n-1)
  TElem generator(int i) const {
    if (i < 1 || i >= n_) throw std::invalid_argument("generator: 1 <= i <= n-1");
    return {gen_rank_[i - 1], 0};
  }

  TElem multiply(const TElem& a, const TElem& b) const {
    std::int32_t cur = b.r;
    std::uint8_t bit = static_cast<std::uint8_t>(a.z ^ b.z);
    for (int t = word_off_[a.r + 1] - 1; t >= word_off_[a.r]; --t) {
      const int i = word_[t];
      bit ^= lbit_[i][cur];
      cur = lperm_[i][cur];
    }
    return {cur, bit};
  }

  TElem inverse(const TElem& a) const {
    return {inv_rank_[a.r], static_cast<std::uint8_t>(a.z ^ inv_bit_[a.r])};
  }

  // r_i x r_i^{-1} via the one-sided tables (r_i is an involution)
  TElem conjugate_by_generator(int i, const TElem& x) const {
    const int g = i - 1;
    std::uint8_t bit = static_cast<std::uint8_t>(x.z ^ rbit_[g][x.r]);
    std::int32_t r = rperm_[g][x.r];
    bit ^= lbit_[g][r];
    r = lperm_[g][r];
    return {r, bit};
  }

  std::size_t index(const TElem& a) const {
    return 2 * static_cast<std::size_t>(a.r) + a.z;
  }
  TElem element(std::size_t idx) const {
    return {static_cast<std::int32_t>(idx / 2), static_cast<std::uint8_t>(idx % 2)};
  }

  // ---- words between letter sets (natural subgroup inclusion) ----

  // Canonical lifts restrict consistently: the bubble-sort word of a
  // permutation fixing the last letters is the same word in the smaller
  // group, so (rank, z) converts by re-ranking the one-line.
  TElem embed_from(const TwistedGroup& smaller, const TElem& a) const {
    if (smaller.n_ > n_) throw std::invalid_argument("embed_from: wrong direction");
    auto ol = smaller.unrank(a.r);
    ol.resize(n_);
    for (int i = smaller.n_; i < n_; ++i) ol[i] = static_cast<std::uint8_t>(i);
    return {rank(ol), a.z};
  }

  // whether the underlying permutation fixes every letter beyond m (1-based)
  bool fixes_beyond(int m, const TElem& a) const {
    const std::uint8_t* ol = &oneline_[static_cast<size_t>(a.r) * n_];
    for (int i = m; i < n_; ++i)
      if (ol[i] != i) return false;
    return true;
  }

  TElem restrict_to(const TwistedGroup& smaller, const TElem& a) const {
    auto ol = unrank(a.r);
    ol.resize(smaller.n_);
    return {smaller.rank(ol), a.z};
  }

  // ---- conjugacy structure ----

  struct Classes {
    std::vector<int> class_of;          // size 2 n!, element index -> class id
    std::vector<std::size_t> rep;       // class id -> element index
    std::vector<int> size;              // class id -> |class|
    std::vector<Partition> type;        // cycle type of the underlying perms
    std::vector<int> z_partner;         // class id of z * (this class)
    std::vector<bool> split;            // z_partner != self
  };

  Classes conjugacy_classes() const {
    Classes C;
    const std::size_t N = 2 * static_cast<std::size_t>(nfact_);
    C.class_of.assign(N, -1);
    for (std::size_t start = 0; start < N; ++start) {
      if (C.class_of[start] != -1) continue;
      const int id = static_cast<int>(C.rep.size());
      C.rep.push_back(start);
      C.size.push_back(0);
      std::vector<std::size_t> stack{start};
      C.class_of[start] = id;
      while (!stack.empty()) {
        const TElem x = element(stack.back());
        stack.pop_back();
        C.size[id]++;
        for (int i = 1; i < n_; ++i) {
          const std::size_t y = index(conjugate_by_generator(i, x));
          if (C.class_of[y] == -1) {
            C.class_of[y] = id;
            stack.push_back(y);
          }
        }
      }
    }
    for (std::size_t k = 0; k < C.rep.size(); ++k) {
      const TElem x = element(C.rep[k]);
      C.type.push_back(cycle_type(x.r));
      C.z_partner.push_back(C.class_of[index(TElem{x.r, static_cast<std::uint8_t>(x.z ^ 1)})]);
      C.split.push_back(C.z_partner.back() != static_cast<int>(k));
    }
    return C;
  }

 private:
  void build_words() {
    oneline_.resize(static_cast<size_t>(nfact_) * n_);
    word_off_.assign(nfact_ + 1, 0);
    std::vector<std::uint8_t> rec;
    for (int r = 0; r < nfact_; ++r) {
      auto a = unrank(r);
      std::copy(a.begin(), a.end(), oneline_.begin() + static_cast<size_t>(r) * n_);
      rec.clear();
      bool changed = true;
      while (changed) {
        changed = false;
        for (int j = 0; j + 1 < n_; ++j)
          if (a[j] > a[j + 1]) {
            std::swap(a[j], a[j + 1]);
            rec.push_back(static_cast<std::uint8_t>(j));
            changed = true;
          }
      }
      word_off_[r + 1] = word_off_[r] + static_cast<int>(rec.size());
      word_.insert(word_.end(), rec.rbegin(), rec.rend());
    }
  }

  void build_perm_tables() {
    const int g = n_ - 1;
    lperm_.assign(g, std::vector<std::int32_t>(nfact_));
    rperm_.assign(g, std::vector<std::int32_t>(nfact_));
    gen_rank_.assign(g, 0);
    std::vector<std::uint8_t> b;
    for (int r = 0; r < nfact_; ++r) {
      const std::uint8_t* a = &oneline_[static_cast<size_t>(r) * n_];
      for (int i = 0; i < g; ++i) {
        b.assign(a, a + n_);
        for (int x = 0; x < n_; ++x)  // swap values i, i+1
          if (b[x] == i || b[x] == i + 1) b[x] = static_cast<std::uint8_t>(i + (i + 1) - b[x]);
        lperm_[i][r] = rank(b);
        b.assign(a, a + n_);
        std::swap(b[i], b[i + 1]);  // swap positions i, i+1
        rperm_[i][r] = rank(b);
      }
    }
    std::vector<std::uint8_t> idl(n_);
    for (int i = 0; i < n_; ++i) idl[i] = static_cast<std::uint8_t>(i);
    for (int i = 0; i < g; ++i) {
      auto s = idl;
      std::swap(s[i], s[i + 1]);
      gen_rank_[i] = rank(s);
    }
  }

  // Clifford images of all canonical lifts, each computed along its own
  // canonical word so the stored section is exactly the word product; each
  // ascent pair then fixes one entry of each sign table, and the partner
  // descent inherits it because the generators square to the identity.
  void build_sign_tables() {
    const int g = n_ - 1;
    lbit_.assign(g, std::vector<std::uint8_t>(nfact_, 0));
    rbit_.assign(g, std::vector<std::uint8_t>(nfact_, 0));

    std::vector<clifford::Vec> P(nfact_);
    for (int r = 0; r < nfact_; ++r) {
      clifford::Vec v(1u << n_, 0);
      v[0] = 1;  // empty product
      for (int t = word_off_[r + 1] - 1; t >= word_off_[r]; --t)
        v = clifford::mul_binomial_left(word_[t], v);
      P[r] = std::move(v);
    }
    for (int r = 0; r < nfact_; ++r) {
      const int len = word_length(r);
      for (int i = 0; i < g; ++i) {
        const int lc = lperm_[i][r];
        if (word_length(lc) == len + 1) {
          const auto q = clifford::mul_binomial_left(i, P[r]);
          const int s = clifford::proportionality_sign(q, P[lc]);
          if (s == 0) throw std::logic_error("sign tables: left lift mismatch");
          lbit_[i][r] = lbit_[i][lc] = (s < 0);
        }
        const int rc = rperm_[i][r];
        if (word_length(rc) == len + 1) {
          const auto q = clifford::mul_binomial_right(i, P[r]);
          const int s = clifford::proportionality_sign(q, P[rc]);
          if (s == 0) throw std::logic_error("sign tables: right lift mismatch");
          rbit_[i][r] = rbit_[i][rc] = (s < 0);
        }
      }
    }
  }

  void build_inverses() {
    inv_rank_.assign(nfact_, 0);
    inv_bit_.assign(nfact_, 0);
    std::vector<std::uint8_t> inv(n_);
    for (int r = 0; r < nfact_; ++r) {
      const std::uint8_t* a = &oneline_[static_cast<size_t>(r) * n_];
      for (int x = 0; x < n_; ++x) inv[a[x]] = static_cast<std::uint8_t>(x);
      inv_rank_[r] = rank(inv);
    }
    for (int r = 0; r < nfact_; ++r) {
      const TElem prod = multiply({inv_rank_[r], 0}, {r, 0});
      if (prod.r != 0) throw std::logic_error("build_inverses: not an inverse");
      inv_bit_[r] = prod.z;
    }
  }

  int n_;
  int nfact_ = 0;
  std::vector<int> fact_;
  std::vector<std::uint8_t> oneline_;  // nfact x n
  std::vector<std::uint8_t> word_;     // concatenated canonical words
  std::vector<int> word_off_;
  std::vector<std::int32_t> gen_rank_;
  std::vector<std::vector<std::int32_t>> lperm_, rperm_;
  std::vector<std::vector<std::uint8_t>> lbit_, rbit_;
  std::vector<std::int32_t> inv_rank_;
  std::vector<std::uint8_t> inv_bit_;
};

}  // namespace spinwalk
