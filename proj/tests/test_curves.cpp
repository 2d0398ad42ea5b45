// Tests for the closed-form limit curves, the exact Bernoulli-moment /
// cumulant data of the stationary curve, the extreme-character ensembles
// with their evolved R-transforms, and the diagnostic shape reconstruction.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "spinwalk/cumulants.hpp"
#include "spinwalk/curves.hpp"
#include "spinwalk/qpoly.hpp"
#include "spinwalk/series.hpp"
#include "spinwalk/shape.hpp"
#include "spinwalk/thoma.hpp"
#include "spinwalk/transition_measure.hpp"

using namespace spinwalk;

namespace {
constexpr double kPi = 3.14159265358979323846;

GridCurve sample(double lo, double hi, int n, double (*f)(double)) {
  GridCurve g;
  g.x.resize(n);
  g.y.resize(n);
  for (int i = 0; i < n; ++i) {
    g.x[i] = lo + (hi - lo) * i / (n - 1);
    g.y[i] = f(g.x[i]);
  }
  return g;
}
}  // namespace

TEST_CASE("closed-form limit curves") {
  // Pinned values of the compact-support curve.
  CHECK(vkls(2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(vkls(-2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(vkls(3.0) == 3.0);
  CHECK(vkls(-2.5) == 2.5);
  CHECK(vkls(0.0) == doctest::Approx(4.0 / kPi).epsilon(1e-15));
  // Independent evaluation at x = 1: (2/pi)(asin(1/2) + sqrt(3)).
  CHECK(vkls(1.0) ==
        doctest::Approx((2.0 / kPi) * (std::asin(0.5) + std::sqrt(3.0)))
            .epsilon(1e-15));

  // The unbounded-support curve: even, strictly above |x|, gap decreasing
  // to zero, value at 0 equal to (2 sqrt6/pi) log 2.
  CHECK(vershik(0.0) ==
        doctest::Approx(2.0 * std::sqrt(6.0) / kPi * std::log(2.0))
            .epsilon(1e-15));
  CHECK(vershik(1.3) == vershik(-1.3));
  double prev_gap = vershik(0.0);
  for (double x = 0.25; x <= 12.0; x += 0.25) {
    const double gap = vershik(x) - x;
    CHECK(gap > 0.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(vershik(40.0) - 40.0 < 1e-13);

  // Both curves are 1-Lipschitz and dominate |x| on a grid.
  for (auto* f : {&vkls, &vershik}) {
    const GridCurve g = sample(-4.0, 4.0, 801, f);
    CHECK(g.domination_defect() == 0.0);
    CHECK(g.lipschitz_defect() <= 1e-12);
  }

  // The density is half the curvature of the curve: compare against a
  // central second difference of the curve itself.
  for (double x : {0.0, 0.4, 1.1, 2.7}) {
    const double h = 1e-3;
    const double second =
        (vershik(x + h) - 2.0 * vershik(x) + vershik(x - h)) / (h * h);
    CHECK(vershik_density(x) == doctest::Approx(second / 2.0).epsilon(1e-6));
  }
  CHECK(vershik_density(2.0) == vershik_density(-2.0));
}

TEST_CASE("Bernoulli numbers are exact") {
  // Textbook values.
  CHECK(bernoulli(0) == Rat(1));
  CHECK(bernoulli(1) == Rat(-1) / Rat(2));
  CHECK(bernoulli(2) == Rat(1) / Rat(6));
  CHECK(bernoulli(4) == Rat(-1) / Rat(30));
  CHECK(bernoulli(6) == Rat(1) / Rat(42));
  CHECK(bernoulli(8) == Rat(-1) / Rat(30));
  CHECK(bernoulli(10) == Rat(5) / Rat(66));
  CHECK(bernoulli(12) == Rat(-691) / Rat(2730));
  CHECK(bernoulli(14) == Rat(7) / Rat(6));
  CHECK(bernoulli(16) == Rat(-3617) / Rat(510));
  CHECK(bernoulli(18) == Rat(43867) / Rat(798));
  CHECK(bernoulli(20) == Rat(-174611) / Rat(330));
  for (int j = 3; j <= 21; j += 2) CHECK(bernoulli(j) == Rat(0));
  CHECK_THROWS_AS(bernoulli(-1), std::invalid_argument);
}

TEST_CASE("boundary-measure moments: closed form, quadrature, bounds") {
  // Exact values from the Bernoulli formula.
  CHECK(tau_v_moment(2) == Rat(2));
  CHECK(tau_v_moment(4) == Rat(84) / Rat(5));
  CHECK(tau_v_moment(6) == Rat(2232) / Rat(7));
  for (int k = 1; k <= 9; k += 2) CHECK(tau_v_moment(k) == Rat(0));

  // Numeric quadrature of the density over the whole line reproduces the
  // normalization and the first two even moments to 1e-9.
  boost::math::quadrature::sinh_sinh<double> integ;
  const double i0 = integ.integrate([](double x) { return vershik_density(x); });
  const double i2 = integ.integrate([](double x) {
    const double d = vershik_density(x);
    return d == 0.0 ? 0.0 : x * x * d;  // avoid inf * 0 at huge |x|
  });
  const double i4 = integ.integrate([](double x) {
    const double d = vershik_density(x);
    return d == 0.0 ? 0.0 : x * x * x * x * d;
  });
  CHECK(std::fabs(i0 - 1.0) <= 1e-9);
  CHECK(std::fabs(i2 - 2.0) <= 1e-9);
  CHECK(std::fabs(i4 - 84.0 / 5.0) <= 1e-9);

  // Factorial two-sided bounds hold for k <= 10, and the window is tight
  // (lower bound is more than half the upper bound in all cases).
  for (int k = 1; k <= 10; ++k) {
    const auto [lo, hi] = tau_v_moment_bounds(2 * k);
    const double m = tau_v_moment(2 * k).get_d();
    CHECK(lo > 0.0);
    CHECK(lo <= m);
    CHECK(m <= hi);
    CHECK(lo >= 0.499 * hi);
  }
}

TEST_CASE("curve cumulants: closed double sum equals the moment pipeline") {
  // Hand-evaluated small cases: R_2 = 6 * (2-1) B_2 = 1 (required for
  // stationarity) and R_4 = -36 * ((2^3-1) B_4 / 2 + 3/2 * ((2-1) B_2)^2)
  // = 27/10; the pipeline value 21/5 - 3/2 agrees.
  CHECK(vershik_cumulant(2) == Rat(1));
  CHECK(vershik_cumulant(4) == Rat(27) / Rat(10));

  const auto pipeline = rayleigh_to_cumulants(tau_v_even_moments(8), 8);
  for (int k = 1; k <= 8; ++k)
    CHECK(vershik_cumulant(2 * k) == pipeline[k - 1]);

  // Growth: |R_{2k}|^{1/(2k)} <= C * 2k for k <= 10 with a small constant.
  const double C = cumulant_growth_constant(10);
  CAPTURE(C);
  CHECK(C > 0.0);
  CHECK(C < 1.0);
  for (int k = 1; k <= 10; ++k) {
    const double r = std::fabs(vershik_cumulant(2 * k).get_d());
    CHECK(std::pow(r, 1.0 / (2 * k)) <= C * 2 * k + 1e-12);
  }
}

TEST_CASE("character-parameter sequences and their measures") {
  CHECK_THROWS_AS(ThomaAlpha({Rat(1) / Rat(2), Rat(2) / Rat(3)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ThomaAlpha({Rat(-1) / Rat(4)}), std::invalid_argument);
  CHECK_THROWS_AS(ThomaAlpha({Rat(3) / Rat(4), Rat(1) / Rat(2)}),
                  std::invalid_argument);

  // Empty parameter: the measure degenerates to a unit atom at 0 and the
  // character vanishes on all nontrivial odd cycles.
  const ThomaAlpha zero(std::vector<Rat>{});
  CHECK(f_alpha(zero, 3) == Rat(0));
  CHECK(thoma_moment(zero, 2) == Rat(0));
  const FiniteMeasure nu0 = thoma_nu(zero);
  CHECK(nu0.atoms.size() == 1);
  CHECK(nu0.atoms[0].loc == Rat(0));
  CHECK(nu0.atoms[0].mass == Rat(1));

  // Uniform parameters: N entries 1/N.
  const ThomaAlpha u4 = uniform_alpha(4);
  CHECK(u4.power_sum(3) == Rat(1) / Rat(16));
  CHECK(f_alpha(u4, 3) == Rat(1) / Rat(32));
  CHECK(f_alpha(u4, 5) == Rat(1) / Rat(1024));
  CHECK_THROWS_AS(f_alpha(u4, 4), std::invalid_argument);
  CHECK_THROWS_AS(f_alpha(u4, 1), std::invalid_argument);
  CHECK(thoma_moment(u4, 2) == Rat(1) / Rat(16));
  CHECK(thoma_moment(u4, 3) == Rat(0));
  const FiniteMeasure nu4 = thoma_nu(u4);
  CHECK(nu4.total_mass() == Rat(1));
  CHECK(nu4.mass_at(Rat(1) / Rat(4)) == Rat(1) / Rat(2));
  CHECK(nu4.mass_at(Rat(-1) / Rat(4)) == Rat(1) / Rat(2));
  CHECK(nu4.mass_at(Rat(0)) == Rat(0));
  // Measure moments match the closed form through the measure itself.
  const auto mm = measure_even_moments(nu4, 3);
  for (int i = 1; i <= 3; ++i) {
    CHECK(mm[i - 1] == thoma_moment(u4, 2 * i));
    CHECK(mm[i - 1] == two_atom_even_moments(Rat(1) / Rat(4), 3)[i - 1]);
  }

  // Repeated and distinct entries merge correctly, with the leftover mass
  // at zero.
  const ThomaAlpha mix({Rat(1) / Rat(3), Rat(1) / Rat(3), Rat(1) / Rat(4)});
  const FiniteMeasure num = thoma_nu(mix);
  CHECK(num.total_mass() == Rat(1));
  CHECK(num.mass_at(Rat(1) / Rat(3)) == Rat(1) / Rat(3));
  CHECK(num.mass_at(Rat(-1) / Rat(4)) == Rat(1) / Rat(8));
  CHECK(num.mass_at(Rat(0)) == Rat(1) / Rat(12));

  // Geometric family: closed-form power sum vs a long partial sum.
  const Rat q = Rat(1) / Rat(3);
  CHECK(geometric_power_sum(q, 3) == Rat(4) / Rat(13));
  for (int k = 1; k <= 5; ++k) {
    double partial = 0.0;
    for (int i = 1; i <= 200; ++i)
      partial += std::pow((1.0 - q.get_d()) * std::pow(q.get_d(), i - 1), k);
    CHECK(geometric_power_sum(q, k).get_d() ==
          doctest::Approx(partial).epsilon(1e-12));
  }
  CHECK_THROWS_AS(geometric_power_sum(Rat(2), 3), std::invalid_argument);
}

TEST_CASE("evolved R-transform: closed forms and semigroup consistency") {
  // Two-atom start at t = 0 is the geometric series zeta/(1 - c^2 zeta^2).
  const Rat c = Rat(2) / Rat(5);
  const auto R = r_transform_evolved(two_atom_even_moments(c, 12), Rat(1), 12);
  CHECK(R[0] == Rat(0));
  CHECK(R[1] == Rat(1));
  for (int i = 1; 2 * i + 2 <= 12; ++i) {
    CHECK(R[2 * i] == Rat(0));
    CHECK(R[2 * i + 1] == rat_pow(c, 2 * i));
  }

  // Late time (q = 0) leaves only the quadratic (semicircle) coefficient.
  const auto Rinf =
      r_transform_evolved(two_atom_even_moments(c, 12), Rat(0), 12);
  for (int k = 0; k < 12; ++k) CHECK(Rinf[k] == (k == 1 ? Rat(1) : Rat(0)));

  // Symbolic q: evolving the t = 0 coefficients through the semigroup map
  // equals the direct series of the time-t transform, term by term.
  const QPoly qv = QPoly::variable();
  std::vector<QPoly> Mq;
  for (const auto& m : two_atom_even_moments(c, 12)) Mq.push_back(QPoly(m));
  const auto direct = r_transform_evolved(Mq, qv, 12);
  const auto start = r_transform_evolved(Mq, QPoly(Rat(1)), 12);
  const auto pushed = evolve(start, qv);
  REQUIRE(pushed.size() == direct.size());
  for (size_t k = 0; k < direct.size(); ++k) CHECK(pushed[k] == direct[k]);

  // Flat-measure start, symbolic q: an independent logarithm-series route.
  // R(zeta) = (1-q) zeta + (1/2r) log((1 + r q zeta)/(1 - r q zeta)).
  const Rat r = Rat(3) / Rat(4);
  const auto direct_u =
      r_transform_evolved([&] {
        std::vector<QPoly> v;
        for (const auto& m : uniform_even_moments(r, 12)) v.push_back(QPoly(m));
        return v;
      }(), qv, 12);
  PowerSeries<QPoly> plus(12), minus(12);
  plus.c[0] = QPoly(Rat(1));
  minus.c[0] = QPoly(Rat(1));
  plus.c[1] = QPoly(r) * qv;
  minus.c[1] = QPoly(-r) * qv;
  const PowerSeries<QPoly> L = log_series(plus) - log_series(minus);
  PowerSeries<QPoly> series = QPoly(Rat(1) / (Rat(2) * r)) * L;
  series.c[1] = series.c[1] + (QPoly(Rat(1)) - qv);
  for (int j = 0; j < 12; ++j) CHECK(series.c[j] == direct_u[j]);

  // Numeric overload agrees with the closed coefficients at q = e^{-t/m}.
  const FiniteMeasure nu = thoma_nu(uniform_alpha(4));  // atoms at +-1/4
  const auto Rnum = r_transform_evolved(nu, 0.8, 0.5, 12);
  const double qd = std::exp(-0.8 / 0.5);
  CHECK(Rnum[0] == 0.0);
  CHECK(Rnum[1] == 1.0);
  for (int i = 1; 2 * i + 2 <= 12; ++i) {
    CHECK(Rnum[2 * i] == 0.0);
    const double expect = std::pow(qd, 2 * i + 1) * std::pow(0.25, 2 * i);
    CHECK(Rnum[2 * i + 1] == doctest::Approx(expect).epsilon(1e-13));
  }

  // Substituting the moment series back into the degree-3 algebraic
  // relation for the two-atom resolvent gives the zero series.
  for (const Rat& cc : std::vector<Rat>{Rat(1), Rat(1, 2)}) {
    const auto R0 =
        r_transform_evolved(two_atom_even_moments(cc, 14), Rat(1), 14);
    const auto M = cumulants_to_moments(R0);
    const PowerSeries<Rat> H = stieltjes_series(M);
    const Rat c2 = cc * cc;
    const Rat one_minus = Rat(1) - c2;
    PowerSeries<Rat> expr = c2 * shift_up(H * H * H, 2, 14) +
                            one_minus * shift_up(H * H, 2, 14) - H;
    expr.c[0] += Rat(1);
    for (int j = 0; j <= 14; ++j) CHECK(expr.c[j] == Rat(0));
  }
}

TEST_CASE("uniform-case spectral density at critical scale") {
  const double edge = 1.5 * std::sqrt(3.0);

  // The computed value satisfies the defining algebraic equation:
  // |x| (4 pi^2 u^2 + 1) sqrt(pi^2 u^2 + 1) = 3 sqrt3 / 2 on the support.
  for (double x : {0.05, 0.3, 0.9, 1.5, 2.2, 2.59}) {
    const double u = density_uniform_case(x);
    CHECK(u > 0.0);
    const double s = kPi * kPi * u * u;
    CHECK(std::fabs(x) * (4.0 * s + 1.0) * std::sqrt(s + 1.0) ==
          doctest::Approx(edge).epsilon(1e-10));
  }

  // Support edges, symmetry, divergence at the origin.
  CHECK(density_uniform_case(edge) == 0.0);
  CHECK(density_uniform_case(-edge) == 0.0);
  CHECK(density_uniform_case(3.0) == 0.0);
  CHECK(density_uniform_case(edge * (1.0 - 1e-10)) < 1e-4);
  CHECK(density_uniform_case(1.25) == density_uniform_case(-1.25));
  CHECK(density_uniform_case(1e-12) > 1e3);
  CHECK(std::isinf(density_uniform_case(0.0)));
  // Decreasing in |x| on the support.
  double last = density_uniform_case(0.01);
  for (double x = 0.11; x < edge; x += 0.1) {
    const double u = density_uniform_case(x);
    CHECK(u < last);
    last = u;
  }

  // Normalization and moments against the cumulant pipeline (all even free
  // cumulants equal 1 for this start).
  const auto R0 = r_transform_evolved(two_atom_even_moments(Rat(1), 12),
                                      Rat(1), 12);
  const auto M = cumulants_to_moments(R0);
  REQUIRE(M[1] == Rat(1));   // second moment
  REQUIRE(M[3] == Rat(3));   // fourth moment
  boost::math::quadrature::tanh_sinh<double> integ;
  const double mass =
      2.0 * integ.integrate([](double x) { return density_uniform_case(x); },
                            0.0, edge);
  const double m2 = 2.0 * integ.integrate(
                              [](double x) {
                                return x * x * density_uniform_case(x);
                              },
                              0.0, edge);
  const double m4 = 2.0 * integ.integrate(
                              [](double x) {
                                return x * x * x * x * density_uniform_case(x);
                              },
                              0.0, edge);
  CHECK(std::fabs(mass - 1.0) <= 1e-6);
  CHECK(std::fabs(m2 - M[1].get_d()) <= 1e-6);
  CHECK(std::fabs(m4 - M[3].get_d()) <= 1e-5);
}

TEST_CASE("shape reconstruction from truncated moments (diagnostic)") {
  // Semicircle: Catalan even moments.  The exact-rational continued
  // fraction has unit weights, and the recovered curve tracks the closed
  // form within 2e-2 in sup norm.
  std::vector<Rat> M = {Rat(0),  Rat(1), Rat(0),   Rat(2), Rat(0),  Rat(5),
                        Rat(0),  Rat(14), Rat(0),  Rat(42), Rat(0), Rat(132),
                        Rat(0),  Rat(429), Rat(0), Rat(1430)};
  const ShapeRecovery rec = shape_from_moments(M, -3.0, 3.0, 241);
  CHECK(rec.depth == 8);
  CHECK(rec.min_offdiag == 1.0);
  double sup = 0.0;
  for (size_t i = 0; i < rec.omega.x.size(); ++i)
    sup = std::max(sup, std::fabs(rec.omega.y[i] - vkls(rec.omega.x[i])));
  CAPTURE(sup);
  CHECK(sup <= 2e-2);
  CHECK(rec.omega.domination_defect() == 0.0);
  CHECK(rec.omega.lipschitz_defect() <= 1e-12);
  CHECK(rec.mass_defect < 2e-2);
  CHECK(rec.edge_defect < 2e-2);

  // Unit atom at the origin: the fraction terminates at depth 1 and the
  // curve collapses to |x| within grid tolerance.
  const ShapeRecovery rec0 =
      shape_from_moments(std::vector<Rat>(12, Rat(0)), -3.0, 3.0, 241);
  CHECK(rec0.depth == 1);
  double sup0 = 0.0;
  for (size_t i = 0; i < rec0.omega.x.size(); ++i)
    sup0 = std::max(sup0,
                    std::fabs(rec0.omega.y[i] - std::fabs(rec0.omega.x[i])));
  CAPTURE(sup0);
  CHECK(sup0 <= 0.1);
  CHECK(rec0.omega.domination_defect() == 0.0);
  CHECK(rec0.omega.lipschitz_defect() <= 1e-12);

  // Stationary-curve moments (from the exact cumulants): diagnostic only —
  // the run must complete with sane invariants, and the sup distance to the
  // closed form is reported, not gated.
  std::vector<Rat> Rv(12, Rat(0));
  for (int k = 1; 2 * k <= 12; ++k) Rv[2 * k - 1] = vershik_cumulant(2 * k);
  const auto Mv = cumulants_to_moments(Rv);
  const ShapeRecovery recv = shape_from_moments(Mv, -4.0, 4.0, 321);
  CHECK(recv.depth >= 4);
  CHECK(recv.min_offdiag > 0.0);
  double supv = 0.0;
  for (size_t i = 0; i < recv.omega.x.size(); ++i) {
    CHECK(std::isfinite(recv.omega.y[i]));
    supv = std::max(supv, std::fabs(recv.omega.y[i] - vershik(recv.omega.x[i])));
  }
  MESSAGE("stationary-curve reconstruction sup distance: "
          << supv << " (diagnostic, no gate); mass defect "
          << recv.mass_defect);
  CHECK(recv.omega.domination_defect() == 0.0);
  CHECK(recv.omega.lipschitz_defect() <= 1e-9);

  // Input validation.
  CHECK_THROWS_AS(shape_from_moments(M, 3.0, -3.0, 241), std::invalid_argument);
  CHECK_THROWS_AS(shape_from_moments(M, -3.0, 3.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(shape_from_moments(std::vector<Rat>{}, -3.0, 3.0, 9),
                  std::invalid_argument);
}
