#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conelab/measure.hpp"

using namespace conelab;

namespace {

constexpr double kPi = std::numbers::pi;

GaugeSpec ellipse_spec() {
  Eigen::Matrix2d x;
  x << 0.5, 0.0, 0.0, 1.0;
  return GaugeSpec::linear_image(GaugeSpec::circle(), x, "ellipse");
}

// shoelace area of the region enclosed by Sigma, from a dense polygon
double shoelace_area(const Gauge& g, int n = 1 << 15) {
  double acc = 0.0;
  Vector2d prev = g.sigma_point(0.0).point;
  for (int i = 1; i <= n; ++i) {
    const Vector2d cur = g.sigma_point(2 * kPi * i / n).point;
    acc += prev[0] * cur[1] - prev[1] * cur[0];
    prev = cur;
  }
  return 0.5 * acc;
}

}  // namespace

TEST_CASE("plane integral: annulus area and gaussian mass") {
  const Gauge circle(GaugeSpec::circle());
  const auto one = [](const Vector2d&) { return 1.0; };
  const QuadResult annulus = plane_integral(one, circle, 1.0, 2.0);
  CHECK(annulus.converged);
  CHECK(annulus.value == doctest::Approx(3.0 * kPi).epsilon(1e-10));

  const auto gauss = [](const Vector2d& xi) { return std::exp(-kPi * xi.squaredNorm()); };
  const QuadResult mass = plane_integral(gauss, circle, 0.0, 6.0);
  CHECK(mass.converged);
  CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(plane_integral(one, circle, 1.0, 2.0, QuadScheme{8, 8, 1e-9}),
                  std::invalid_argument);
}

TEST_CASE("plane integral over a superellipse annulus matches the shoelace oracle") {
  const Gauge se4(GaugeSpec::superellipse(4));
  const auto one = [](const Vector2d&) { return 1.0; };
  const QuadResult r = plane_integral(one, se4, 1.0, 2.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(3.0 * shoelace_area(se4)).epsilon(1e-6));
}

TEST_CASE("coarea integral equals the plane integral and known slices") {
  const Gauge circle(GaugeSpec::circle());
  const auto one = [](const Vector2d&) { return 1.0; };
  const QuadResult r1 = coarea_integral(one, circle, 1.0, 2.0);
  CHECK(r1.converged);
  CHECK(r1.value == doctest::Approx(3.0 * kPi).epsilon(1e-8));

  const auto gauss = [](const Vector2d& xi) { return std::exp(-kPi * xi.squaredNorm()); };
  const QuadResult r2 = coarea_integral(gauss, circle, 0.0, 6.0);
  CHECK(r2.value == doctest::Approx(1.0).epsilon(1e-6));

  // cross-oracle on three gauges, several integrands
  std::vector<Gauge> gauges;
  gauges.emplace_back(GaugeSpec::circle());
  gauges.emplace_back(ellipse_spec());
  gauges.emplace_back(GaugeSpec::superellipse(4));
  const std::vector<PlaneFn> fns = {
      one,
      gauss,
      [](const Vector2d& xi) { return xi[0] * xi[0] + 0.3 * xi[1]; },
      [](const Vector2d& xi) { return std::exp(-xi.squaredNorm() / 3.0) * (1.0 + xi[1] * xi[1]); },
      [](const Vector2d& xi) { return std::cos(xi[0]) + 2.0; },
  };
  for (const Gauge& g : gauges)
    for (const auto& f : fns) {
      const QuadResult a = plane_integral(f, g, 1.0, 2.0);
      const QuadResult b = coarea_integral(f, g, 1.0, 2.0);
      CHECK(a.converged);
      CHECK(b.converged);
      CHECK(std::abs(a.value - b.value) <= 1e-5 * std::abs(a.value));
    }
}

TEST_CASE("cone norms") {
  const Gauge circle(GaugeSpec::circle());
  const WeightedConeMeasure cor1 = WeightedConeMeasure::affine(circle);
  const auto one = [](const Vector2d&, double) { return 1.0; };
  const QuadResult r = cone_norm(one, cor1, 1.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(3.0 * kPi).epsilon(1e-8));

  const auto zero = [](const Vector2d&, double) { return 0.0; };
  CHECK(cone_norm(zero, cor1, 2.0).value == doctest::Approx(0.0));

  WeightedConeMeasure full = WeightedConeMeasure::affine(circle);
  full.support = WeightedConeMeasure::Support::FullCone;
  full.t_max = 60.0;
  const auto expphi = [](const Vector2d&, double t) { return std::exp(-t); };
  const QuadResult r2 = cone_norm(expphi, full, 1.0, QuadScheme{256, 64, 1e-8});
  CHECK(r2.value == doctest::Approx(2.0 * kPi).epsilon(1e-6));

  CHECK_THROWS_AS(cone_norm(one, cor1, 0.5), std::invalid_argument);
}

TEST_CASE("sublevel histogram: circle concentrates in bin 0") {
  const Gauge circle(GaugeSpec::circle());
  const SublevelHistogram h = sublevel_histogram(circle, 1 << 12);
  CHECK(h.sigma_arclength.size() == 1);
  CHECK(h.sigma_arclength.count(0) == 1);
  CHECK(h.sigma_arclength.at(0) == doctest::Approx(2.0 * kPi).epsilon(1e-10));
  CHECK(sublevel_measure(circle, 0) == doctest::Approx(2.0 * kPi).epsilon(1e-10));
  CHECK(sublevel_measure(circle, -3) == doctest::Approx(0.0));
}

TEST_CASE("sublevel histogram sums to the total arclength") {
  const Gauge se4(GaugeSpec::superellipse(4));
  const SublevelHistogram h = sublevel_histogram(se4, 1 << 14);
  double acc = h.flat_arclength;
  for (const auto& [j, v] : h.sigma_arclength) acc += v;
  CHECK(acc == doctest::Approx(h.total_arclength).epsilon(1e-6));
}

TEST_CASE("sublevel slope fits recover 1/(k-2)") {
  const SublevelHistogram h4 = sublevel_histogram(Gauge(GaugeSpec::superellipse(4)));
  const SlopeFit f4 = sublevel_slope_fit(h4);
  CHECK(f4.determined);
  CHECK(std::abs(f4.slope - 0.5) <= 0.05);

  const SublevelHistogram h6 = sublevel_histogram(Gauge(GaugeSpec::superellipse(6)));
  const SlopeFit f6 = sublevel_slope_fit(h6);
  CHECK(f6.determined);
  CHECK(std::abs(f6.slope - 0.25) <= 0.025);
}
