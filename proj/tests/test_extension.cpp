#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "conelab/extension.hpp"
#include "conelab/quadrature.hpp"

using namespace conelab;

namespace {

constexpr double kPi = std::numbers::pi;

double uniform(std::mt19937_64& rng, double a, double b) {
  return a + (b - a) * std::ldexp(static_cast<double>(rng() >> 11), -53);
}

WeightedConeMeasure full_cone(const Gauge& g) {
  WeightedConeMeasure mu = WeightedConeMeasure::affine(g);
  mu.support = WeightedConeMeasure::Support::FullCone;
  mu.t_max = 16.0;
  return mu;
}

}  // namespace

TEST_CASE("extension of the zero density is zero") {
  const Gauge circle(GaugeSpec::circle());
  ConeDensity zero;
  zero.value = [](const Vector2d&, double) { return Complex(0.0, 0.0); };
  zero.envelope = [](double) { return 0.0; };
  const QuadResultC r = extension_eval(circle, zero, Vector2d(0.5, 0.2), 1.0, full_cone(circle));
  CHECK(std::abs(r.value) == 0.0);
  const QuadResultC rs =
      extension_eval_sliced(circle, zero, Vector2d(0.5, 0.2), 1.0, full_cone(circle));
  CHECK(std::abs(rs.value) == 0.0);
}

TEST_CASE("closed form: circle, u = e^{-2 pi phi}, x = 0 gives 1/(1 - i t)") {
  const Gauge circle(GaugeSpec::circle());
  const ConeDensity u = ConeDensity::exp_decay(2.0 * kPi);
  const WeightedConeMeasure mu = full_cone(circle);
  for (double t : {0.0, 0.5, 1.0, -2.0}) {
    const Complex expect = 1.0 / Complex(1.0, -t);
    const QuadResultC direct = extension_eval(circle, u, Vector2d(0.0, 0.0), t, mu);
    CHECK(direct.converged);
    CHECK(std::abs(direct.value - expect) < 1e-6);
    const QuadResultC sliced = extension_eval_sliced(circle, u, Vector2d(0.0, 0.0), t, mu);
    CHECK(sliced.converged);
    CHECK(std::abs(sliced.value - expect) < 1e-6);
  }
  // spec anchor: value (1+i)/2 at t = 1
  const QuadResultC at1 = extension_eval(circle, u, Vector2d(0.0, 0.0), 1.0, mu);
  CHECK(at1.value.real() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(at1.value.imag() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("conjugate symmetry for a real density") {
  const Gauge circle(GaugeSpec::circle());
  const ConeDensity u = ConeDensity::exp_decay(2.0);
  const WeightedConeMeasure mu = full_cone(circle);
  const Vector2d x(0.7, -0.4);
  const double t = 1.3;
  const Complex a = extension_eval(circle, u, x, t, mu).value;
  const Complex b = extension_eval(circle, u, -x, -t, mu).value;
  CHECK(std::abs(a - std::conj(b)) <= 1e-10 * std::max(1.0, std::abs(a)));
}

TEST_CASE("slicing identity: direct vs sliced on random (x, t)") {
  std::mt19937_64 rng(2024);
  const Gauge circle(GaugeSpec::circle());
  const ConeDensity u = ConeDensity::exp_decay(2.0 * kPi);
  const WeightedConeMeasure mu = full_cone(circle);
  for (int i = 0; i < 20; ++i) {
    const Vector2d x(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
    const double t = uniform(rng, -2.0, 2.0);
    const QuadResultC direct = extension_eval(circle, u, x, t, mu);
    const QuadResultC sliced = extension_eval_sliced(circle, u, x, t, mu);
    CHECK(direct.converged);
    CHECK(sliced.converged);
    CHECK(std::abs(direct.value - sliced.value) <= 1e-5 * std::abs(direct.value));
  }
}

TEST_CASE("slicing identity on the superellipse cone") {
  std::mt19937_64 rng(7);
  const Gauge se4(GaugeSpec::superellipse(4));
  const ConeDensity u = ConeDensity::exp_decay(2.0 * kPi);
  const WeightedConeMeasure mu = full_cone(se4);
  for (int i = 0; i < 8; ++i) {
    const Vector2d x(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
    const double t = uniform(rng, -2.0, 2.0);
    const QuadResultC direct = extension_eval(se4, u, x, t, mu);
    const QuadResultC sliced = extension_eval_sliced(se4, u, x, t, mu);
    CHECK(direct.converged);
    CHECK(sliced.converged);
    CHECK(std::abs(direct.value - sliced.value) <= 1e-5 * std::abs(direct.value));
  }
}

TEST_CASE("pointwise trivial bound |E(x,t)| <= ||u||_{L^1(mu)}") {
  const Gauge circle(GaugeSpec::circle());
  ConeDensity u;
  u.value = [](const Vector2d& xi, double s) {
    return Complex(std::exp(-s) * (1.0 + 0.3 * xi[0]), 0.0);
  };
  u.envelope = [](double s) { return 3.0 * std::exp(-s); };
  u.s_max = 40.0;
  WeightedConeMeasure mu = WeightedConeMeasure::affine(circle);
  const double l1 =
      cone_norm([&](const Vector2d& xi, double s) { return std::abs(u.value(xi, s)); }, mu, 1.0)
          .value;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const Vector2d x(uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0));
    const double t = uniform(rng, -3.0, 3.0);
    const QuadResultC e = extension_eval(circle, u, x, t, mu);
    CHECK(std::abs(e.value) <= l1 + 1e-6);
  }
}

TEST_CASE("full-cone scaling: lambda E_{u_lambda}(lambda x, lambda t) = E_u(x, t)") {
  const Gauge circle(GaugeSpec::circle());
  const WeightedConeMeasure mu = full_cone(circle);
  const double lambda = 1.7;
  const ConeDensity u = ConeDensity::exp_decay(2.0 * kPi);
  ConeDensity ul;
  ul.value = [lambda](const Vector2d& xi, double s) {
    return Complex(std::exp(-2.0 * kPi * lambda * s), 0.0);
  };
  ul.envelope = [lambda](double s) { return std::exp(-2.0 * kPi * lambda * s); };
  ul.s_max = 40.0 / lambda;
  (void)u;
  const Vector2d x(0.6, -0.2);
  const double t = 0.9;
  const Complex lhs =
      lambda * extension_eval(circle, ul, Vector2d(lambda * x), lambda * t, mu).value;
  const Complex rhs = extension_eval(circle, ConeDensity::exp_decay(2.0 * kPi), x, t, mu).value;
  CHECK(std::abs(lhs - rhs) <= 1e-5 * std::abs(rhs));
}

TEST_CASE("oscillation budget and exponent guards") {
  const Gauge circle(GaugeSpec::circle());
  const ConeDensity u = ConeDensity::exp_decay(1.0);
  WeightedConeMeasure mu = full_cone(circle);
  CHECK_THROWS_AS(extension_eval(circle, u, Vector2d(2000.0, 0.0), 0.0, mu),
                  std::invalid_argument);
  mu.exponent = 0.5;
  CHECK_THROWS_AS(extension_eval_sliced(circle, u, Vector2d(0.0, 0.0), 0.0, mu),
                  std::invalid_argument);
}

TEST_CASE("profile transforms: gaussian closed form, bump by quadrature") {
  Profile1D gauss{Profile1D::Kind::Gaussian};
  CHECK(gauss.inverse_transform_norm(2.0) == doctest::Approx(std::pow(2.0, -0.25)));
  CHECK(gauss(0.0) == doctest::Approx(1.0));
  Profile1D bump{Profile1D::Kind::Bump};
  CHECK(bump(0.0) == doctest::Approx(1.0));
  CHECK(bump(1.0) == 0.0);
  // Plancherel: ||ghat||_2^2 = ||g||_2^2 = int_{-1}^{1} e^{2 - 2/(1-x^2)} dx
  const double l2 = bump.inverse_transform_norm(2.0);
  const double direct = std::sqrt(2.0 * gl_composite(
                                            [&](double x) {
                                              const double b = bump(x);
                                              return b * b;
                                            },
                                            0.0, 1.0, 64, 16));
  CHECK(l2 == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("family ratio: zero family, gaussian stability") {
  const Gauge circle(GaugeSpec::circle());
  SeparableTestFamily fam;
  // an isotropic gaussian family centred on the slice s in [1, 2]
  fam.maps[0] = {Vector3d(1.0, 0.0, 0.0), 0.0};
  fam.maps[1] = {Vector3d(0.0, 1.0, 0.0), 0.0};
  fam.maps[2] = {Vector3d(0.0, 0.0, 2.0), -3.0};  // (s - 1.5)/0.5
  fam.theta_center = 0.0;
  fam.theta_halfwidth = kPi;
  fam.s_center = 1.5;
  fam.s_halfwidth = 0.5;
  const WeightedConeMeasure mu = WeightedConeMeasure::affine(circle);
  const QuadResult r = family_ratio(circle, fam, 2.0, 2.0, mu);
  CHECK(r.converged);
  CHECK(r.value > 0.0);
  // jacobian scale: dilation (1,1,2) => |det| = 2, scale = 1/2
  CHECK(fam.jacobian_scale() == doctest::Approx(0.5));
}
