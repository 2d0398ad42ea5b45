#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "spinwalk/branching.hpp"
#include "spinwalk/chain_sim.hpp"
#include "spinwalk/cumulants.hpp"
#include "spinwalk/pausing.hpp"
#include "spinwalk/pde_check.hpp"
#include "spinwalk/rational.hpp"
#include "spinwalk/rng.hpp"

using namespace spinwalk;

static StrictPartition sp(std::vector<int> v) { return StrictPartition{std::move(v)}; }

// Brute-force renewal Monte Carlo estimate of E[(1-k/n)^{N(tn)}] with a
// one-sigma error bar, independent of the semi-analytic machinery.
struct McEstimate {
  double value, sigma;
};
static McEstimate mc_a_factor(int k, double t, int n, const PausingSpec& psi,
                              int reps, std::uint64_t seed) {
  Rng rng(seed);
  const double horizon = t * n;
  const double c = 1.0 - static_cast<double>(k) / n;
  double acc = 0, acc2 = 0;
  for (int r = 0; r < reps; ++r) {
    long long N = 0;
    double s = psi.draw(rng);
    while (s <= horizon) {
      ++N;
      s += psi.draw(rng);
    }
    const double v = std::pow(c, static_cast<double>(N));
    acc += v;
    acc2 += v * v;
  }
  const double mean = acc / reps;
  const double var = std::max(0.0, acc2 / reps - mean * mean);
  return {mean, std::sqrt(var / reps)};
}

TEST_CASE("pausing laws: factories, draws, and tail functions") {
  Rng rng(20260801);

  SUBCASE("means of large draw samples match the declared mean") {
    const int R = 200000;
    struct Case {
      PausingSpec psi;
      double var;
    };
    const std::vector<Case> cases = {
        {PausingSpec::exponential(0.7), 0.49},
        {PausingSpec::gamma(2.0, 0.5), 2.0 * 0.25},
        {PausingSpec::uniform(0.5, 1.5), 1.0 / 12},
        {PausingSpec::histogram({0.2, 0.8, 1.0, 2.0}, {0.3, 0.3, 0.4}), 0.3},
        {PausingSpec::deterministic(1.25), 0.0},
    };
    for (const auto& cse : cases) {
      double acc = 0;
      for (int r = 0; r < R; ++r) acc += cse.psi.draw(rng);
      const double mean = acc / R;
      const double margin = 5 * std::sqrt(cse.var / R) + 1e-12;
      CHECK(std::abs(mean - cse.psi.mean) <= margin);
    }
    CHECK(PausingSpec::histogram({0.2, 0.8, 1.0, 2.0}, {0.3, 0.3, 0.4}).mean ==
          doctest::Approx(1.02).epsilon(1e-12));
  }

  SUBCASE("tail functions") {
    const auto ex = PausingSpec::exponential(2.0);
    CHECK(ex.tail(0) == 1.0);
    CHECK(ex.tail(3.0) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));

    // gamma with shape 1 is the exponential law
    const auto g1 = PausingSpec::gamma(1.0, 2.0);
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0})
      CHECK(g1.tail(x) == doctest::Approx(ex.tail(x)).epsilon(1e-12));

    const auto un = PausingSpec::uniform(0.5, 1.5);
    CHECK(un.tail(0.25) == 1.0);
    CHECK(un.tail(0.75) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(un.tail(2.0) == 0.0);

    const auto hi = PausingSpec::histogram({0.0, 1.0, 3.0}, {0.25, 0.75});
    CHECK(hi.tail(0.0) == 1.0);
    CHECK(hi.tail(0.5) == doctest::Approx(0.75 + 0.125).epsilon(1e-12));
    CHECK(hi.tail(1.0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(hi.tail(2.0) == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(hi.tail(3.0) == 0.0);

    const auto de = PausingSpec::deterministic(1.0);
    CHECK(de.tail(0.999) == 1.0);
    CHECK(de.tail(1.0) == 0.0);
  }

  SUBCASE("integrability flag and validation") {
    CHECK(PausingSpec::exponential(1.0).integrability_known);
    CHECK(PausingSpec::gamma(2.0, 0.5).integrability_known);
    CHECK(PausingSpec::uniform(0.0, 2.0).integrability_known);
    CHECK_FALSE(PausingSpec::deterministic(1.0).integrability_known);
    CHECK_THROWS_AS(PausingSpec::exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(PausingSpec::uniform(1.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(PausingSpec::histogram({1.0, 0.5}, {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PausingSpec::histogram({0.0, 1.0}, {0.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("renewal tail factor: exponential pausing hits the limit exactly") {
  // Poisson thinning makes sum_j c^j P[N=j] = exp(-(1-c) tn/m) = exp(-kt/m)
  // at every n, so the finite-n value must equal the reference.
  struct Case {
    int k;
    double t;
    long long n;
    double m;
  };
  for (const auto& c : std::vector<Case>{{2, 1.0, 10000, 1.0},
                                         {3, 1.0, 10000, 1.0},
                                         {5, 1.0, 10000, 1.0},
                                         {3, 2.0, 500, 0.7},
                                         {1, 0.3, 50, 2.0}}) {
    const auto r = a_factor(c.k, c.t, c.n, PausingSpec::exponential(c.m), 200000);
    CHECK(r.exponential_reference ==
          doctest::Approx(std::exp(-c.k * c.t / c.m)).epsilon(1e-14));
    CHECK(r.value == doctest::Approx(r.exponential_reference).epsilon(1e-10));
    CHECK_FALSE(r.tail_warning);
  }

  SUBCASE("weight k = 0 recovers total renewal mass") {
    const auto r = a_factor(0, 1.5, 300, PausingSpec::exponential(0.9), 200000);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("zero horizon means no completed pauses") {
    const auto r = a_factor(4, 0.0, 100, PausingSpec::exponential(1.0), 1000);
    CHECK(r.value == 1.0);
  }
}

TEST_CASE("renewal tail factor: gamma pausing") {
  SUBCASE("shape-1 gamma agrees with the exponential path") {
    // two independent algorithms (incomplete-gamma telescoping vs Poisson
    // window) computing the same quantity
    for (int k : {1, 2, 4}) {
      const auto a = a_factor(k, 1.3, 1000, PausingSpec::gamma(1.0, 0.9), 200000);
      const auto b = a_factor(k, 1.3, 1000, PausingSpec::exponential(0.9), 200000);
      CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
    }
  }

  SUBCASE("large n approaches exp(-kt/m) within 1e-3") {
    // gamma with shape 2 and scale 1/2 has mean 1
    const auto psi = PausingSpec::gamma(2.0, 0.5);
    for (int k : {2, 3, 5}) {
      const auto r = a_factor(k, 1.0, 10000, psi, 200000);
      CHECK_FALSE(r.tail_warning);
      CHECK(std::abs(r.value - std::exp(-static_cast<double>(k))) <= 1e-3);
    }
  }

  SUBCASE("moderate n cross-checked against brute-force renewal Monte Carlo") {
    const auto psi = PausingSpec::gamma(2.0, 0.5);
    for (int k : {1, 3}) {
      const auto r = a_factor(k, 1.0, 40, psi, 200000);
      const auto mc = mc_a_factor(k, 1.0, 40, psi, 200000, 777 + k);
      CHECK(std::abs(r.value - mc.value) <= 5 * mc.sigma + 1e-4);
    }
  }
}

TEST_CASE("renewal tail factor: bounded-density and deterministic pausing") {
  SUBCASE("near-deterministic uniform matches the deterministic point law") {
    // horizon 20.5 with pauses in [0.999, 1.001]: the count is surely 20
    const double t = 20.5 / 100.0;
    const auto grid = a_factor(3, t, 100, PausingSpec::uniform(0.999, 1.001), 5000);
    const auto det = a_factor(3, t, 100, PausingSpec::deterministic(1.0), 5000);
    CHECK(det.value == std::pow(0.97, 20.0));
    CHECK(grid.value == doctest::Approx(det.value).epsilon(1e-9));
  }

  SUBCASE("single-bin histogram equals the uniform law") {
    const auto u = a_factor(2, 0.8, 50, PausingSpec::uniform(0.5, 1.5), 5000);
    const auto h =
        a_factor(2, 0.8, 50, PausingSpec::histogram({0.5, 1.5}, {1.0}), 5000);
    CHECK(u.value == doctest::Approx(h.value).epsilon(1e-12));
  }

  SUBCASE("weight k = 0 recovers total renewal mass on the grid") {
    const auto r = a_factor(0, 1.0, 60, PausingSpec::uniform(0.5, 1.5), 5000);
    CHECK(std::abs(r.value - 1.0) <= 5e-3);
  }

  SUBCASE("uniform pausing near the large-n limit") {
    const auto r = a_factor(2, 1.0, 100, PausingSpec::uniform(0.5, 1.5), 5000);
    CHECK_FALSE(r.tail_warning);
    CHECK(r.value / std::exp(-2.0) > 0.85);
    CHECK(r.value / std::exp(-2.0) < 1.20);
  }

  SUBCASE("histogram cross-checked against brute-force renewal Monte Carlo") {
    const auto psi = PausingSpec::histogram({0.2, 0.8, 1.0, 2.0}, {0.3, 0.3, 0.4});
    const auto r = a_factor(3, 1.0, 30, psi, 5000);
    const auto mc = mc_a_factor(3, 1.0, 30, psi, 200000, 31337);
    CHECK(std::abs(r.value - mc.value) <= 5 * mc.sigma + 2e-3);
  }

  SUBCASE("undersized term budget raises the truncation warning") {
    const auto r = a_factor(2, 1.0, 20, PausingSpec::uniform(0.5, 1.5), 5);
    CHECK(r.tail_warning);
    CHECK(r.tail_mass > 0.5);  // most renewal runs need more than 5 pauses
    const auto d = a_factor(2, 1.0, 20, PausingSpec::deterministic(1.0), 5);
    CHECK(d.tail_warning);
  }
}

TEST_CASE("down-up chain: jump counts, determinism, and fixed start") {
  SUBCASE("identical output for any thread count and repeated runs") {
    const auto psi = PausingSpec::exponential(0.8);
    const auto a = simulate(6, 1.5, psi, InitialSpec::plancherel(), 64, 42, 1);
    const auto b = simulate(6, 1.5, psi, InitialSpec::plancherel(), 64, 42, 4);
    const auto c = simulate(6, 1.5, psi, InitialSpec::plancherel(), 64, 42, 4);
    REQUIRE(a.size() == 64);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].label == b[i].label);
      CHECK(a[i].jumps == b[i].jumps);
      CHECK(a[i].m2 == b[i].m2);
      CHECK(a[i].m4 == c[i].m4);
      CHECK(b[i].m6 == c[i].m6);
    }
  }

  SUBCASE("zero horizon leaves a fixed start untouched") {
    const NazarovLabel start(sp({3, 2, 1}), +1);
    const auto recs = simulate(6, 0.0, PausingSpec::exponential(1.0),
                               InitialSpec::delta(start), 8, 7, 2);
    for (const auto& r : recs) {
      CHECK(r.jumps == 0);
      CHECK(r.label == start);
      CHECK(r.m2 > 0);
    }
  }

  SUBCASE("level mismatch of a fixed start is rejected") {
    const NazarovLabel start(sp({3, 2, 1}), +1);
    CHECK_THROWS_AS(simulate(5, 1.0, PausingSpec::exponential(1.0),
                             InitialSpec::delta(start), 2, 1, 1),
                    std::runtime_error);
  }

  SUBCASE("exponential pausing gives Poisson jump counts") {
    const int R = 400;
    const double mu = 2.0 * 8 / 0.5;  // tn/m = 32
    const auto recs = simulate(8, 2.0, PausingSpec::exponential(0.5),
                               InitialSpec::plancherel(), R, 1234, 0);
    double acc = 0, acc2 = 0;
    for (const auto& r : recs) {
      acc += static_cast<double>(r.jumps);
      acc2 += static_cast<double>(r.jumps) * static_cast<double>(r.jumps);
    }
    const double mean = acc / R;
    const double var = (acc2 - R * mean * mean) / (R - 1);
    CHECK(std::abs(mean - mu) <= 4 * std::sqrt(mu / R));
    CHECK(var / mu > 0.6);
    CHECK(var / mu < 1.5);
  }

  SUBCASE("deterministic pausing gives exactly floor(tn/m) jumps") {
    const auto recs = simulate(8, 2.0, PausingSpec::deterministic(0.5),
                               InitialSpec::plancherel(), 16, 5, 0);
    for (const auto& r : recs) CHECK(r.jumps == 32);
  }
}

TEST_CASE("down-up chain: the spin Plancherel measure is stationary") {
  SUBCASE("exact moment averages of the stationary law") {
    // The rescaled second moment equals 1 at EVERY level-n vertex (the
    // squared-ladder trace is exactly n), and the Plancherel average of the
    // rescaled fourth moment is exactly 2 - 1/(2n), matching the counting of
    // length-2 and length-4 ladder words whose product is trivial.
    for (int n = 2; n <= 8; ++n) {
      const LabelMeasure M = plancherel_spin(n);
      Rat e4 = 0;
      for (std::size_t i = 0; i < M.labels.size(); ++i) {
        FiniteMeasure mu =
            transition_measure(doubled_profile(M.labels[i].lambda));
        mu.scale_sq = Rat(2 * n);
        CHECK(mu.moment(2) == Rat(1));
        e4 += M.mass[i] * mu.moment(4);
      }
      CHECK(e4 == Rat(2) - Rat(1) / Rat(2 * n));
    }
  }

  SUBCASE("label frequencies stay Plancherel after running the chain") {
    const int n = 5, R = 20000;
    const LabelMeasure M = plancherel_spin(n);
    const auto recs = simulate(n, 0.8, PausingSpec::exponential(1.0),
                               InitialSpec::plancherel(), R, 99, 0);
    std::map<NazarovLabel, int> freq;
    for (const auto& r : recs) ++freq[r.label];
    for (std::size_t i = 0; i < M.labels.size(); ++i) {
      const double p = M.mass[i].get_d();
      const double obs = static_cast<double>(freq[M.labels[i]]) / R;
      CHECK(std::abs(obs - p) <= 4.5 * std::sqrt(p * (1 - p) / R));
    }
  }

  SUBCASE("rescaled moments concentrate at moderate level") {
    const int n = 50, R = 300;
    const auto recs = simulate(n, 1.0, PausingSpec::exponential(1.0),
                               InitialSpec::plancherel(), R, 2024, 0);
    double s2 = 0, s4 = 0, q2 = 0, q4 = 0;
    for (const auto& r : recs) {
      s2 += r.m2;
      s4 += r.m4;
      q2 += r.m2 * r.m2;
      q4 += r.m4 * r.m4;
    }
    const double m2 = s2 / R, m4 = s4 / R;
    const double sd2 = std::sqrt(std::max(0.0, (q2 - R * m2 * m2) / (R - 1)));
    const double sd4 = std::sqrt(std::max(0.0, (q4 - R * m4 * m4) / (R - 1)));
    CHECK(std::abs(m2 - 1.0) <= 5 * sd2 / std::sqrt(R) + 1e-12);
    CHECK(std::abs(m4 - (2.0 - 1.0 / (2 * n))) <= 5 * sd4 / std::sqrt(R) + 1e-12);
    // order 2 is an exact invariant of every level-n vertex
    CHECK(sd2 == 0.0);
    CHECK(sd4 > 0.0);
  }
}

TEST_CASE("predicted moments and the concentration report") {
  const std::vector<double> semicircle = {0, 1, 0, 0, 0, 0};

  SUBCASE("semicircle start is a fixed point of the evolution") {
    for (double t : {0.0, 0.5, 3.0}) {
      const auto M = predicted_moments(semicircle, t, 1.0, 6);
      CHECK(M[1] == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(M[3] == doctest::Approx(2.0).epsilon(1e-13));
      CHECK(M[5] == doctest::Approx(5.0).epsilon(1e-13));
      CHECK(M[0] == doctest::Approx(0.0).epsilon(1e-13));
    }
  }

  SUBCASE("generic start interpolates from itself to the semicircle") {
    const std::vector<double> R0 = {0, 1, 0.5, -0.25, 0.125, 0.75};
    const auto at0 = predicted_moments(R0, 0.0, 1.0, 6);
    const auto exact = cumulants_to_moments(R0);
    for (int j = 0; j < 6; ++j)
      CHECK(at0[j] == doctest::Approx(exact[j]).epsilon(1e-12));
    const auto late = predicted_moments(R0, 60.0, 1.0, 6);
    CHECK(late[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(late[3] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(late[5] == doctest::Approx(5.0).epsilon(1e-9));
  }

  SUBCASE("report rows compare empirical moments with the prediction") {
    const auto recs = simulate(50, 1.0, PausingSpec::exponential(1.0),
                               InitialSpec::plancherel(), 200, 31415, 0);
    const auto rows = concentration_report(recs, semicircle, 1.0, 1.0);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].order == 2);
    CHECK(rows[0].predicted == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rows[1].order == 4);
    CHECK(rows[1].predicted == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rows[2].order == 6);
    CHECK(rows[2].predicted == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(rows[0].sd == 0.0);  // order 2 is constant across vertices
    CHECK(rows[1].sd > 0);
    CHECK(rows[2].sd > 0);
    for (const auto& r : rows)
      CHECK(std::abs(r.mean - r.predicted) < 0.1 * (1 + r.predicted));
  }
}

TEST_CASE("transport equation holds coefficientwise in the symbolic parameter") {
  SUBCASE("semicircle start") {
    const auto R0 = semicircle_cumulants(Rat(1), 12);
    for (const QPoly& coeff : pde_residual(R0, 10)) CHECK(coeff.is_zero());
  }

  SUBCASE("random even start through order z^-10") {
    std::vector<Rat> R0(12, Rat(0));
    R0[1] = 1;
    R0[3] = Rat(3) / 7;
    R0[5] = Rat(-2) / 5;
    R0[7] = Rat(7) / 3;
    R0[9] = Rat(-1) / 2;
    R0[11] = Rat(4) / 9;
    const auto res = pde_residual(R0, 10);
    REQUIRE(res.size() == 11);
    for (const QPoly& coeff : res) CHECK(coeff.is_zero());
  }

  SUBCASE("starts with odd cumulants satisfy the equation too") {
    std::vector<Rat> R0(12, Rat(0));
    R0[1] = 1;
    R0[2] = Rat(1) / 3;
    R0[3] = Rat(-1) / 4;
    R0[4] = Rat(2) / 7;
    R0[6] = Rat(5) / 11;
    for (const QPoly& coeff : pde_residual(R0, 10)) CHECK(coeff.is_zero());
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(pde_residual(semicircle_cumulants(Rat(1), 8), 10),
                    std::invalid_argument);
    std::vector<Rat> bad(12, Rat(0));
    bad[0] = 1;  // first cumulant must vanish
    bad[1] = 1;
    CHECK_THROWS_AS(pde_residual(bad, 10), std::invalid_argument);
  }

  SUBCASE("symbolic moments specialize correctly at q = 1 and q = 0") {
    std::vector<Rat> R0(10, Rat(0));
    R0[1] = 1;
    R0[3] = Rat(5) / 6;
    R0[5] = Rat(-3) / 8;
    R0[8] = Rat(2) / 9;
    const auto Mq = symbolic_moments(R0);
    const auto at1 = cumulants_to_moments(R0);
    const auto at0 = cumulants_to_moments(semicircle_cumulants(Rat(1), 10));
    REQUIRE(Mq.size() == 10);
    for (int j = 0; j < 10; ++j) {
      CHECK(Mq[j].eval(Rat(1)) == at1[j]);
      CHECK(Mq[j].eval(Rat(0)) == at0[j]);
    }
  }

  SUBCASE("numeric prediction agrees with the symbolic moments") {
    std::vector<Rat> R0(8, Rat(0));
    R0[1] = 1;
    R0[3] = Rat(1) / 2;
    R0[5] = Rat(-1) / 3;
    std::vector<double> R0d;
    for (const Rat& r : R0) R0d.push_back(r.get_d());
    const auto Mq = symbolic_moments(R0);
    const double q = std::exp(-1.7 / 0.9);
    const auto Md = predicted_moments(R0d, 1.7, 0.9, 8);
    for (int j = 0; j < 8; ++j)
      CHECK(Md[j] == doctest::Approx(Mq[j].eval(Rat(q)).get_d()).epsilon(1e-10));
  }

  SUBCASE("stationary defect vanishes exactly for semicircle moments") {
    const auto cat = cumulants_to_moments(semicircle_cumulants(Rat(1), 12));
    const auto defect = stationary_defect(cat);
    for (int j = 0; j <= defect.order(); ++j) CHECK(defect.c[j] == Rat(0));

    auto off = cat;
    off[3] += Rat(1) / 100;  // perturb the fourth moment
    const auto bad = stationary_defect(off);
    bool nonzero = false;
    for (int j = 0; j <= bad.order(); ++j)
      if (!(bad.c[j] == Rat(0))) nonzero = true;
    CHECK(nonzero);
  }
}
