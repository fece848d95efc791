#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conelab/sogge.hpp"
#include "conelab/quadrature.hpp"

using namespace conelab;

namespace {

SoggeParams params() {
  SoggeParams sp;
  sp.k = 3;
  sp.p = 1.2;  // p' = 6, q = 1.5, q' = 3
  sp.eps = 0.1;
  sp.delta = 0.1;
  return sp;
}

}  // namespace

TEST_CASE("derived exponents and validation") {
  const SoggeParams sp = params();
  CHECK(sp.q() == doctest::Approx(1.5));
  CHECK(sp.q_prime() == doctest::Approx(3.0));
  CHECK(sp.c_value() == doctest::Approx(-1.0 / 6.0));
  SoggeParams bad = sp;
  bad.p = 1.3;  // >= (k+2)/(k+1) = 1.25
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = sp;
  bad.c = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("f(s,t) closed form and integrability") {
  const SoggeParams sp = params();
  // f(s, t) = t^{-1/q'} |log t|^{-1/p'} on the strip
  const double t = 0.05;
  CHECK(sogge_f(sp, 1.05, t) ==
        doctest::Approx(std::pow(t, -1.0 / 3.0) * std::pow(std::abs(std::log(t)), -1.0 / 6.0)));
  CHECK(sogge_f(sp, 1.5, t) == 0.0);   // outside [1, 1+eps]
  CHECK(sogge_f(sp, 1.05, 0.2) == 0.0);  // outside (0, delta)
  // spec anchor: at t -> 1^- the log weight would blow up, but t < delta <= 0.1
  // int_0^delta t^{-1/q'} dt finite since 1/q' < 1
  const double mass = gl_composite(
      [&](double v) {
        const double tt = v * v * v;
        return sogge_f(sp, 1.05, tt) * 3.0 * v * v;
      },
      1e-6, std::cbrt(sp.delta), 64, 16);
  CHECK(std::isfinite(mass));
  CHECK(mass > 0.0);
}

TEST_CASE("T is finite and oscillatory-quadrature converged at desk scale") {
  const SoggeParams sp = params();
  const QuadResultC r = sogge_T(sp, 3.0, -2.0, 1.0);
  CHECK(r.converged);
  CHECK(std::isfinite(std::abs(r.value)));
  CHECK(std::abs(r.value) > 0.0);
  CHECK_THROWS_AS(sogge_T(sp, 1e4, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("I(u, alpha, s) converges to g(alpha, s), monotone in u") {
  const SoggeParams sp = params();
  double prev = 1e300;
  for (double u : {1e3, 1e4, 1e5, 1e6}) {
    double sup = 0.0;
    for (double alpha : {0.02, 0.04}) {
      for (double s : {1.0, 1.05, 1.1}) {
        const Complex i = sogge_I(sp, u, alpha, s);
        const Complex g = oscillatory_g(alpha, s, sp.k, sp.q(), sp.c_value()).value;
        sup = std::max(sup, std::abs(i - g));
      }
    }
    CHECK(sup < prev);
    prev = sup;
  }
  // honest convergence scale at u = 1e4: sup_rel measured ~ 0.09 (the weight
  // factor deviates by ~ (1/p') log t*/log u near the stationary point)
  double suprel = 0.0;
  for (double alpha : {0.02, 0.04})
    for (double s : {1.0, 1.05, 1.1}) {
      const Complex i = sogge_I(sp, 1e4, alpha, s);
      const Complex g = oscillatory_g(alpha, s, sp.k, sp.q(), sp.c_value()).value;
      suprel = std::max(suprel, std::abs(i - g) / std::abs(g));
    }
  CHECK(suprel < 0.12);
}

TEST_CASE("prescan picks a window with a positive g floor") {
  const SoggeParams sp = params();
  const SoggeWindows win = sogge_prescan(sp);
  CHECK(win.alpha1 > 0.0);
  CHECK(win.alpha2 > win.alpha1);
  CHECK(win.r2 > 0.0);
  CHECK(win.g_floor > 0.02);
}

TEST_CASE("harness self-test: J == 1 gives the closed-form loglog mass") {
  SoggeWindows win;
  win.alpha1 = 0.05;
  win.alpha2 = 0.06;
  win.r2 = 0.03;
  const double mass = divergence_mass_selftest(win, 1e3, 1e6);
  const double expect = win.r2 * (win.alpha2 - win.alpha1) *
                        (std::log(std::log(1e6)) - std::log(std::log(1e3)));
  CHECK(mass == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("divergence scan: increasing masses, bounded decade ratios, positive A") {
  const SoggeParams sp = params();
  const SoggeWindows win = sogge_prescan(sp);
  const DivergenceScan scan =
      sogge_divergence_scan(sp, {1e3, 1e4, 1e5, 1e6}, win, 5, 5, 4);
  REQUIRE(scan.rows.size() == 3);
  CHECK(scan.masses_increasing);
  CHECK(scan.a_witness > 0.0);
  for (double r : scan.decade_increment_ratios) {
    CHECK(r >= 0.5);
    CHECK(r <= 1.5);
  }
  // |J| >= 0.5 |int g ds| at the grid alphas
  for (double alpha : {win.alpha1, 0.5 * (win.alpha1 + win.alpha2), win.alpha2}) {
    const double gI = std::abs(sogge_g_integral(sp, alpha));
    double minj = 1e300;
    for (double u : {1e3, 1e4, 1e5, 1e6})
      for (double r : {0.0, 0.5 * win.r2, win.r2})
        minj = std::min(minj, std::abs(sogge_J(sp, u, alpha, r)));
    CHECK(minj >= 0.5 * gI);
  }
}
