#pragma once

// The spin branching graph.  Vertices at level n are labels (lambda, gamma)
// with lambda a strict partition of n: one vertex when n - l(lambda) is even
// (the two signs name the same representation and are canonicalized to +1),
// two when it is odd.  Edges follow the restriction rule; the down/up
// transition matrices, their product, the Plancherel weights, and exact
// sampling of both the Plancherel measure and single chain steps live here.

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "spinwalk/finite_measure.hpp"
#include "spinwalk/rng.hpp"
#include "spinwalk/shifted_tableaux.hpp"
#include "spinwalk/strict_partition.hpp"

namespace spinwalk {

struct NazarovLabel {
  StrictPartition lambda;
  int gamma = +1;

  NazarovLabel() = default;
  NazarovLabel(StrictPartition l, int g) : lambda(std::move(l)), gamma(g) {
    if (g != 1 && g != -1)
      throw std::invalid_argument("NazarovLabel: gamma must be +1 or -1");
    if (lambda.even_class()) gamma = +1;  // the two signs are the same vertex
  }

  int n() const { return lambda.n(); }
  bool operator==(const NazarovLabel& o) const {
    return lambda == o.lambda && gamma == o.gamma;
  }
  bool operator<(const NazarovLabel& o) const {
    if (!(lambda == o.lambda)) return lambda < o.lambda;
    return gamma < o.gamma;
  }
  std::string str() const {
    return lambda.str() + (lambda.even_class() ? "" : (gamma > 0 ? "+" : "-"));
  }
};

// Memoized shifted-filling counts; the walk samplers hit the same shapes
// over and over.
class GCache {
 public:
  const Int& get(const StrictPartition& lam) {
    auto it = map_.find(lam.parts);
    if (it != map_.end()) return it->second;
    if (map_.size() > 500000) map_.clear();
    return map_.emplace(lam.parts, g_hook(lam)).first->second;
  }

 private:
  std::map<std::vector<int>, Int> map_;
};

// dim(lambda, gamma) = 2^{floor((n-l)/2)} g_lambda (independent of gamma).
inline Int dim_spin(const StrictPartition& lam, GCache* cache = nullptr) {
  const int shift = (lam.n() - lam.length()) / 2;
  const Int g = cache ? cache->get(lam) : g_hook(lam);
  return int_pow(Int(2), static_cast<unsigned long>(shift)) * g;
}

inline Int dim_spin(const NazarovLabel& label, GCache* cache = nullptr) {
  return dim_spin(label.lambda, cache);
}

// All spin vertices at level n, ordered by partition then sign.
inline std::vector<NazarovLabel> spin_vertices(int n) {
  std::vector<NazarovLabel> out;
  for (const auto& lam : enumerate_strict_partitions(n)) {
    out.emplace_back(lam, +1);
    if (!lam.even_class()) out.emplace_back(lam, -1);
  }
  return out;
}

// Multiplicity (0 or 1 -- the rule is multiplicity-free) of `lower` inside
// the restriction of `upper` one level down.  Removing a box of content
// c > 0 flips the parity class of the partition; removing the final box of a
// length-1 last row (content 0) preserves it:
//   upper class "+": each c>0 removal gives a "-" partition, BOTH signs;
//                    the c=0 removal gives the "+" partition, single vertex.
//   upper class "-": each c>0 removal gives the "+" partition, single
//                    vertex; the c=0 removal keeps the sign of `upper`.
inline int branching_multiplicity(const NazarovLabel& upper,
                                  const NazarovLabel& lower) {
  if (upper.n() != lower.n() + 1)
    throw std::invalid_argument("branching_multiplicity: levels must differ by 1");
  for (const auto& rb : removable_boxes(upper.lambda)) {
    if (!(rb.result == lower.lambda)) continue;
    if (upper.lambda.even_class()) return 1;  // both signs (or the single "+")
    if (rb.content > 0) return 1;             // lower is canonical "+"
    return lower.gamma == upper.gamma ? 1 : 0;
  }
  return 0;
}

struct LevelMatrices {
  int n = 0;
  std::vector<NazarovLabel> upper;  // level n
  std::vector<NazarovLabel> lower;  // level n-1
  std::vector<std::vector<Rat>> down;  // |upper| x |lower|
  std::vector<std::vector<Rat>> up;    // |lower| x |upper|
  std::vector<std::vector<Rat>> step;  // down * up, |upper| x |upper|
};

// Down: P(xi -> eta) = mult * dim(eta) / dim(xi).
// Up:   P(eta -> xi) = mult * dim(xi) / (n * dim(eta))   (index of the
//       smaller group in the larger is n).
inline LevelMatrices level_matrices(int n) {
  if (n < 1) throw std::invalid_argument("level_matrices: n >= 1");
  LevelMatrices L;
  L.n = n;
  L.upper = spin_vertices(n);
  L.lower = spin_vertices(n - 1);
  const size_t U = L.upper.size(), W = L.lower.size();
  std::vector<Int> dim_u(U), dim_w(W);
  for (size_t i = 0; i < U; ++i) dim_u[i] = dim_spin(L.upper[i]);
  for (size_t j = 0; j < W; ++j) dim_w[j] = dim_spin(L.lower[j]);
  L.down.assign(U, std::vector<Rat>(W, Rat(0)));
  L.up.assign(W, std::vector<Rat>(U, Rat(0)));
  for (size_t i = 0; i < U; ++i)
    for (size_t j = 0; j < W; ++j) {
      const int c = branching_multiplicity(L.upper[i], L.lower[j]);
      if (!c) continue;
      L.down[i][j] = Rat(c) * Rat(dim_w[j]) / Rat(dim_u[i]);
      L.up[j][i] = Rat(c) * Rat(dim_u[i]) / (Rat(n) * Rat(dim_w[j]));
    }
  L.step.assign(U, std::vector<Rat>(U, Rat(0)));
  for (size_t i = 0; i < U; ++i)
    for (size_t k = 0; k < U; ++k) {
      Rat s = 0;
      for (size_t j = 0; j < W; ++j) s += L.down[i][j] * L.up[j][k];
      L.step[i][k] = s;
    }
  return L;
}

// Spin Plancherel weights dim^2 / n! over the level-n vertices.
struct LabelMeasure {
  std::vector<NazarovLabel> labels;
  std::vector<Rat> mass;
};

inline LabelMeasure plancherel_spin(int n) {
  LabelMeasure M;
  M.labels = spin_vertices(n);
  const Int nf = factorial(static_cast<unsigned long>(n));
  Rat total = 0;
  for (const auto& v : M.labels) {
    const Int d = dim_spin(v);
    M.mass.push_back(Rat(d * d) / Rat(nf));
    total += M.mass.back();
  }
  if (total != 1) throw std::logic_error("plancherel_spin: masses do not sum to 1");
  return M;
}

// Weighted neighbor list used by the exact samplers.
struct StepCandidate {
  NazarovLabel label;
  Int weight;  // integer numerator; probability = weight / total
};

// Up neighbors of a level-k vertex with weights mult * dim(xi); the weights
// sum to (k+1) * dim(eta), which the caller can use as the exact CDF
// denominator.
inline std::vector<StepCandidate> up_candidates(const NazarovLabel& eta,
                                                GCache& cache) {
  std::vector<StepCandidate> cands;
  for (const auto& mv : addable_boxes(eta.lambda)) {
    const Int d = dim_spin(mv.result, &cache);
    if (mv.result.even_class()) {
      cands.push_back({NazarovLabel(mv.result, +1), d});
    } else if (eta.lambda.even_class()) {
      // adding a positive-content box above an even-class vertex reaches
      // both signs of the odd-class partition
      cands.push_back({NazarovLabel(mv.result, +1), d});
      cands.push_back({NazarovLabel(mv.result, -1), d});
    } else {
      // odd class to odd class happens only via the content-0 new-row box
      // and carries the sign along
      cands.push_back({NazarovLabel(mv.result, eta.gamma), d});
    }
  }
  return cands;
}

// Down neighbors with weights mult * dim(eta); the weights sum to dim(xi).
inline std::vector<StepCandidate> down_candidates(const NazarovLabel& xi,
                                                  GCache& cache) {
  std::vector<StepCandidate> cands;
  for (const auto& rb : removable_boxes(xi.lambda)) {
    const Int d = dim_spin(rb.result, &cache);
    if (rb.result.even_class()) {
      cands.push_back({NazarovLabel(rb.result, +1), d});
    } else if (xi.lambda.even_class()) {
      cands.push_back({NazarovLabel(rb.result, +1), d});
      cands.push_back({NazarovLabel(rb.result, -1), d});
    } else {
      cands.push_back({NazarovLabel(rb.result, xi.gamma), d});
    }
  }
  return cands;
}

namespace detail {
inline const NazarovLabel& pick_weighted(const std::vector<StepCandidate>& cands,
                                         const Int& total, Rng& rng,
                                         const char* what) {
  Int u = rng.below(total);
  for (const auto& c : cands) {
    if (u < c.weight) return c.label;
    u -= c.weight;
  }
  throw std::logic_error(std::string(what) + ": fell off the CDF");
}
}  // namespace detail

// One up step of the chain from a level-k vertex, sampled exactly via an
// integer draw below (k+1) * dim(eta).
inline NazarovLabel up_step(const NazarovLabel& eta, Rng& rng, GCache& cache) {
  const auto cands = up_candidates(eta, cache);
  Int total = 0;
  for (const auto& c : cands) total += c.weight;
  if (total != Int(eta.n() + 1) * dim_spin(eta.lambda, &cache))
    throw std::logic_error("up_step: candidate weights do not sum to (k+1) dim");
  return detail::pick_weighted(cands, total, rng, "up_step");
}

// One down step, sampled exactly via an integer draw below dim(xi).
inline NazarovLabel down_step(const NazarovLabel& xi, Rng& rng, GCache& cache) {
  const auto cands = down_candidates(xi, cache);
  Int total = 0;
  for (const auto& c : cands) total += c.weight;
  if (total != dim_spin(xi.lambda, &cache))
    throw std::logic_error("down_step: candidate weights do not sum to dim");
  return detail::pick_weighted(cands, total, rng, "down_step");
}

// Exact Plancherel sample at level n: up-walk from the empty diagram (the
// up matrices carry the level-n Plancherel weights forward at every level).
inline NazarovLabel sample_plancherel(int n, Rng& rng, GCache& cache) {
  NazarovLabel v{StrictPartition{}, +1};
  for (int k = 0; k < n; ++k) v = up_step(v, rng, cache);
  return v;
}

inline NazarovLabel sample_plancherel(int n, std::uint64_t seed) {
  Rng rng(seed);
  GCache cache;
  return sample_plancherel(n, rng, cache);
}

}  // namespace spinwalk
