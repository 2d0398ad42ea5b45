#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

#include "spinwalk/cumulants.hpp"
#include "spinwalk/finite_measure.hpp"
#include "spinwalk/transition_measure.hpp"

using namespace spinwalk;

static StrictPartition sp(std::vector<int> v) { return StrictPartition{std::move(v)}; }

TEST_CASE("transition measure: frozen masses") {
  {
    // profile of the empty diagram is |x|: a single unit atom at 0
    auto m = transition_measure(doubled_profile(StrictPartition{}));
    REQUIRE(m.atoms.size() == 1);
    CHECK(m.atoms[0].loc == 0);
    CHECK(m.atoms[0].mass == 1);
  }
  {
    auto m = transition_measure(doubled_profile(sp({3, 1})));
    CHECK(m.mass_at(1) == Rat(4, 15));
    CHECK(m.mass_at(-2) == Rat(2, 15));
    CHECK(m.mass_at(3) == Rat(12, 35));
    CHECK(m.mass_at(-4) == Rat(9, 35));
    CHECK(m.total_mass() == 1);
  }
  {
    auto m = transition_measure(doubled_profile(sp({2})));
    CHECK(m.mass_at(2) == Rat(2, 5));
    CHECK(m.mass_at(0) == Rat(1, 3));
    CHECK(m.mass_at(-3) == Rat(4, 15));
  }
}

TEST_CASE("transition measure: probability + positivity sweep") {
  for (int n = 0; n <= 9; ++n)
    for (const auto& lam : enumerate_strict_partitions(n)) {
      auto m = transition_measure(doubled_profile(lam));  // ctor checks sum=1
      for (const auto& a : m.atoms) CHECK(a.mass > 0);
      CHECK(m.moment_raw(0) == 1);
    }
}

TEST_CASE("balance between positive valleys and their mirrors") {
  for (int n = 0; n <= 9; ++n)
    for (const auto& lam : enumerate_strict_partitions(n))
      CHECK(balance_holds(doubled_profile(lam)));
}

TEST_CASE("odd moments collapse to the positive-valley sum") {
  for (int n = 0; n <= 9; ++n)
    for (const auto& lam : enumerate_strict_partitions(n)) {
      auto D = doubled_profile(lam);
      auto m = transition_measure(D);
      for (int k = 0; k <= 3; ++k)
        CHECK(m.moment_raw(2 * k + 1) == odd_moment_collapsed(D, k));
      CHECK(m.moment_raw(1) == 0);  // k = 0 collapse: the mean vanishes
    }
}

TEST_CASE("rescaling: exact pushforwards") {
  FiniteMeasure m;
  m.atoms = {{-1, Rat(1, 2)}, {1, Rat(1, 2)}};
  auto h = rescale(m, 2);
  CHECK(h.atoms[0].loc == Rat(-1, 2));
  CHECK(h.atoms[1].loc == Rat(1, 2));
  CHECK(h.total_mass() == 1);

  auto tm = transition_measure(doubled_profile(sp({3, 1})));
  auto t2 = rescale_sqrt(tm, 2);
  for (int k = 0; k <= 4; ++k)
    CHECK(t2.moment(2 * k) ==
          tm.moment(2 * k) / rat_pow(Rat(2), k));
  CHECK_THROWS(t2.moment(3));
  CHECK(t2.moment_raw(3) == tm.moment_raw(3));

  // delta_0 is a fixed point of any rescaling
  FiniteMeasure d0;
  d0.atoms = {{0, 1}};
  CHECK(rescale(d0, Rat(7, 3)).atoms[0].loc == 0);
}

TEST_CASE("corner-mass identity: frozen examples and full sweep") {
  {
    auto [lhs, rhs] = corner_mass_check(sp({3, 1}), sp({3, 2}));
    CHECK(lhs == Rat(1, 5));
    CHECK(rhs == Rat(1, 5));
  }
  {
    auto [lhs, rhs] = corner_mass_check(StrictPartition{}, sp({1}));
    CHECK(lhs == 1);
    CHECK(rhs == 1);
  }
  for (int n = 0; n <= 9; ++n)
    for (const auto& lam : enumerate_strict_partitions(n))
      for (const auto& mv : addable_boxes(lam)) {
        auto [lhs, rhs] = corner_mass_check(lam, mv.result);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("corner masses of one level sum to 1") {
  // summing the identity over all addable boxes: sum_mu g_mu = (n+1) g_lambda
  for (int n = 0; n <= 9; ++n)
    for (const auto& lam : enumerate_strict_partitions(n)) {
      auto m = transition_measure(doubled_profile(lam));
      Rat s = 0;
      for (const auto& mv : addable_boxes(lam)) s += pair_mass(m, mv.content);
      CHECK(s == 1);
    }
}

TEST_CASE("spectral moment sum: frozen values") {
  CHECK(jm_moment_rhs(StrictPartition{}, 1) == 0);
  CHECK(jm_moment_rhs(StrictPartition{}, 3) == 0);
  CHECK(jm_moment_rhs(sp({1}), 1) == 1);  // single addable box of content 1
  CHECK(jm_moment_rhs(sp({3, 1}), 1) == 4);
  // weights c(c+1)/2: content 3 -> 6 with pair mass 3/5; content 1 -> 1 with
  // pair mass 2/5; k=2 gives 36*(3/5) + 1*(2/5)
  CHECK(jm_moment_rhs(sp({3, 1}), 2) == Rat(22));
}

TEST_CASE("boundary data moments") {
  auto tau = rayleigh_of(doubled_profile(sp({2})));
  CHECK(tau.moment(0) == 1);  // one more valley than peaks
  CHECK(tau.moment(1) == 0);
  CHECK(tau.moment(2) == 8);
  CHECK(tau.moment(3) == -12);
  CHECK(tau.moment(4) == 80);
}

TEST_CASE("log-exp transform: boundary moments to measure moments") {
  // two-path equivalence: series transform of the boundary data equals the
  // direct partial-fraction measure, all |lambda| <= 10
  const int N = 8;
  for (int n = 0; n <= 10; ++n)
    for (const auto& lam : enumerate_strict_partitions(n)) {
      auto D = doubled_profile(lam);
      auto tau = rayleigh_of(D);
      std::vector<Rat> tm;
      for (int k = 1; k <= N; ++k) tm.push_back(tau.moment(k));
      auto M = markov_series(tm, N);
      auto mu = transition_measure(D);
      REQUIRE(static_cast<int>(M.size()) == N + 1);
      CHECK(M[0] == 1);
      for (int k = 1; k <= N; ++k) CHECK(M[k] == mu.moment_raw(k));
    }

  // all-zero boundary moments give the unit atom at 0
  auto M0 = markov_series(std::vector<Rat>(6, Rat(0)), 6);
  for (int k = 1; k <= 6; ++k) CHECK(M0[k] == 0);
}

TEST_CASE("even-cumulant extraction: frozen case and three-path agreement") {
  {
    std::vector<Rat> tm = {1, 0, 0, 0};  // M_2 = 1, higher even moments 0
    auto R = rayleigh_to_cumulants(tm, 4);
    CHECK(R[0] == Rat(1, 2));  // R_2
  }
  // random even boundary moments: the closed double sum must agree with the
  // series pipeline (log-exp transform then residue extraction) and with the
  // noncrossing-recursion inversion
  for (unsigned seed : {1u, 2u, 3u}) {
    const int K = 6;  // cumulants up to R_12
    auto even = spinwalk_test::pseudo_random_rats(K, seed);
    std::vector<Rat> tau_m(2 * K, Rat(0));
    for (int j = 1; j <= K; ++j) tau_m[2 * j - 1] = even[j - 1];
    auto closed = rayleigh_to_cumulants(even, K);
    auto mu_m = markov_series(tau_m, 2 * K);  // M_0..M_{2K}
    std::vector<Rat> M(mu_m.begin() + 1, mu_m.end());
    auto via_series = cumulants_from_stieltjes(M);
    auto via_ncrec = moments_to_cumulants(M);
    for (int k = 1; k <= K; ++k) {
      CHECK(closed[k - 1] == via_series[2 * k - 1]);
      CHECK(closed[k - 1] == via_ncrec[2 * k - 1]);
    }
    // odd cumulants of a symmetric sequence vanish
    for (int j = 1; j <= 2 * K; j += 2) CHECK(via_series[j - 1] == 0);
  }
}
