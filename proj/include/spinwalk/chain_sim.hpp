#pragma once
// Continuous-time down-up chain on the spin vertices of level n.
//
// A replica starts from an initial label (exact Plancherel sample or a fixed
// vertex), waits renewal pauses drawn from a pausing law, and performs one
// down-then-up move per completed pause before the macroscopic horizon t*n.
// Each finished replica records the jump count and the even moments of the
// transition measure of its final shape, rescaled by sqrt(2n).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "spinwalk/branching.hpp"
#include "spinwalk/cumulants.hpp"
#include "spinwalk/doubled_diagram.hpp"
#include "spinwalk/pausing.hpp"
#include "spinwalk/rng.hpp"
#include "spinwalk/transition_measure.hpp"

namespace spinwalk {

struct InitialSpec {
  enum class Kind { plancherel, delta };
  Kind kind = Kind::plancherel;
  NazarovLabel at;  // used when kind == delta

  static InitialSpec plancherel() { return InitialSpec{}; }
  static InitialSpec delta(NazarovLabel label) {
    InitialSpec s;
    s.kind = Kind::delta;
    s.at = std::move(label);
    return s;
  }
};

struct SampleRecord {
  NazarovLabel label;  // final vertex
  long long jumps = 0; // completed down-up moves
  double t = 0;        // macroscopic time parameter
  double m2 = 0, m4 = 0, m6 = 0;  // rescaled even transition-measure moments
};

// Even moments of the transition measure of the doubled shape, with atom
// locations divided by sqrt(2n).
inline void rescaled_even_moments(const NazarovLabel& label, int n,
                                  double& m2, double& m4, double& m6) {
  FiniteMeasure mu = transition_measure(doubled_profile(label.lambda));
  mu.scale_sq = Rat(2 * n);
  m2 = mu.moment(2).get_d();
  m4 = mu.moment(4).get_d();
  m6 = mu.moment(6).get_d();
}

inline SampleRecord run_replica(int n, double t, const PausingSpec& psi,
                                const InitialSpec& init, Rng& rng,
                                GCache& cache) {
  if (n < 1) throw std::invalid_argument("run_replica: level must be >= 1");
  NazarovLabel lab = (init.kind == InitialSpec::Kind::plancherel)
                         ? sample_plancherel(n, rng, cache)
                         : init.at;
  if (lab.lambda.n() != n)
    throw std::invalid_argument("run_replica: initial label is not at level n");

  const double horizon = t * static_cast<double>(n);
  long long jumps = 0;
  double s = psi.draw(rng);
  while (s <= horizon) {
    ++jumps;
    s += psi.draw(rng);
  }
  for (long long j = 0; j < jumps; ++j)
    lab = up_step(down_step(lab, rng, cache), rng, cache);

  SampleRecord rec;
  rec.label = std::move(lab);
  rec.jumps = jumps;
  rec.t = t;
  rescaled_even_moments(rec.label, n, rec.m2, rec.m4, rec.m6);
  return rec;
}

// Independent replicas with per-replica seeded streams: record r always uses
// Rng(seed, r), so the output is identical for any thread count.
inline std::vector<SampleRecord> simulate(int n, double t,
                                          const PausingSpec& psi,
                                          const InitialSpec& init,
                                          int replicas, std::uint64_t seed,
                                          int threads = 0) {
  if (replicas < 0) throw std::invalid_argument("simulate: negative replicas");
  std::vector<SampleRecord> out(static_cast<std::size_t>(replicas));
  if (replicas == 0) return out;
  if (threads <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    threads = hc == 0 ? 1 : static_cast<int>(hc);
  }
  threads = std::min(threads, replicas);

  std::vector<std::string> errors(static_cast<std::size_t>(threads));
  const auto work = [&](int tid) {
    GCache cache;  // per-thread hook-product cache
    try {
      for (int r = tid; r < replicas; r += threads) {
        Rng rng(seed, static_cast<std::uint64_t>(r));
        out[static_cast<std::size_t>(r)] =
            run_replica(n, t, psi, init, rng, cache);
      }
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(tid)] = e.what();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int tid = 0; tid < threads; ++tid) pool.emplace_back(work, tid);
    for (auto& th : pool) th.join();
  }
  for (const auto& msg : errors)
    if (!msg.empty()) throw std::runtime_error("simulate: " + msg);
  return out;
}

// Moments predicted for macroscopic time t under a pausing law with mean m:
// scale the starting free cumulants of order k >= 3 by exp(-t/m)^(k-1) and
// convert back to moments.  R0[0] is the first cumulant.
inline std::vector<double> predicted_moments(const std::vector<double>& R0,
                                             double t, double mean, int N) {
  std::vector<double> R(R0.begin(),
                        R0.begin() + std::min<std::size_t>(R0.size(),
                                                           static_cast<std::size_t>(N)));
  R.resize(static_cast<std::size_t>(N), 0.0);
  const std::vector<double> Rt = evolve(R, std::exp(-t / mean));
  return cumulants_to_moments(Rt);
}

struct ConcentrationRow {
  int order;         // moment order (2, 4, 6)
  double predicted;  // deterministic limit value
  double mean;       // empirical mean over replicas
  double sd;         // empirical standard deviation over replicas
  double z;          // (mean - predicted) / (sd / sqrt(replicas))
};

// Compare empirical rescaled moments against the evolved free-cumulant
// prediction with q = exp(-t/mean).
inline std::vector<ConcentrationRow> concentration_report(
    const std::vector<SampleRecord>& samples, const std::vector<double>& R0,
    double t, double mean) {
  if (samples.empty())
    throw std::invalid_argument("concentration_report: no samples");
  const std::vector<double> M = predicted_moments(R0, t, mean, 6);
  const double R = static_cast<double>(samples.size());
  std::vector<ConcentrationRow> rows;
  for (int order : {2, 4, 6}) {
    double sum = 0, sumsq = 0;
    for (const auto& s : samples) {
      const double v = order == 2 ? s.m2 : order == 4 ? s.m4 : s.m6;
      sum += v;
      sumsq += v * v;
    }
    const double mu = sum / R;
    const double var = R > 1 ? std::max(0.0, (sumsq - R * mu * mu) / (R - 1)) : 0.0;
    const double sd = std::sqrt(var);
    const double pred = M[static_cast<std::size_t>(order - 1)];
    const double z = sd > 0 ? (mu - pred) / (sd / std::sqrt(R)) : 0.0;
    rows.push_back({order, pred, mu, sd, z});
  }
  return rows;
}

}  // namespace spinwalk
