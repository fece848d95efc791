#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "conelab/quadrature.hpp"

using namespace conelab;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  // degree 2n-1 exactness
  const auto f = [](double x) { return 5 * x * x * x * x - x + 2; };
  CHECK(gl_integrate(f, -1.0, 1.0, 3) == doctest::Approx(2.0 + 4.0).epsilon(1e-14));
  CHECK(gl_integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 24) ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
}

TEST_CASE("composite rule handles oscillation") {
  const double omega = 37.0;
  const Complex v = gl_composite_c(
      [&](double x) { return std::exp(Complex(0.0, omega * x)); }, 0.0, 2.0 * std::numbers::pi,
      64);
  CHECK(std::abs(v) < 1e-12);  // full periods integrate to zero
}

TEST_CASE("pairwise sum is permutation-stable at machine precision") {
  std::mt19937_64 rng(7);
  std::vector<double> v(1000);
  for (auto& x : v) x = std::ldexp(static_cast<double>(rng() >> 11), -52) - 0.5;
  const double s1 = pairwise_sum(std::span<const double>(v));
  double naive = 0.0;
  for (double x : v) naive += x;
  CHECK(s1 == doctest::Approx(naive).epsilon(1e-12));
}

TEST_CASE("parallel_for result is independent of worker count") {
  std::vector<double> a(257), b(257);
  const auto fill = [](std::vector<double>& dst) {
    return [&dst](int i) { dst[i] = std::sin(0.1 * i) * i; };
  };
  parallel_for(257, 1, fill(a));
  parallel_for(257, 7, fill(b));
  CHECK(a == b);
}

TEST_CASE("wynn epsilon accelerates an alternating tail") {
  // sum (-1)^m / (m+1) = log 2
  std::vector<Complex> partial;
  Complex s{0.0, 0.0};
  for (int m = 0; m < 24; ++m) {
    s += Complex(((m % 2) ? -1.0 : 1.0) / (m + 1.0), 0.0);
    partial.push_back(s);
  }
  const Complex acc = wynn_epsilon(partial);
  CHECK(std::abs(acc - Complex(std::log(2.0), 0.0)) < 1e-12);
}
