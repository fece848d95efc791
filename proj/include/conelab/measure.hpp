#pragma once

#include <functional>
#include <map>

#include "conelab/gauge.hpp"
#include "conelab/quadrature.hpp"
#include "conelab/weight.hpp"

namespace conelab {

// Measure on the cone generated by a 2D gauge. The density is
// w^exponent dxi/phi on the full cone, w^exponent dxi on the compact slab
// Delta = {1 <= phi <= 2}, or w^exponent sqrt(1+|grad phi|^2) dxi for
// surface measure on S.
struct WeightedConeMeasure {
  enum class Support { FullCone, CompactDelta, SurfaceOnS };

  const Gauge* gauge = nullptr;
  double exponent = 1.0 / 3.0;
  Support support = Support::CompactDelta;
  double t_max = 8.0;  // full-cone truncation
  WeightConvention conv = WeightConvention::PositiveAdjugate;

  static WeightedConeMeasure affine(const Gauge& g, Support s = Support::CompactDelta);
  static WeightedConeMeasure surface(const Gauge& g);
};

struct QuadScheme {
  int radial_nodes = 64;
  int angular_nodes = 128;
  double tol = 1e-9;
};

// Angular quadrature nodes with cubic clustering toward singular angles,
// where densities carrying fractional powers of w or kappa lose smoothness.
struct ThetaGrid {
  std::vector<double> theta;
  std::vector<double> weight;
};

ThetaGrid theta_grid(double lo, double hi, const std::vector<double>& singular, int nodes);
ThetaGrid theta_grid(const Gauge& g, int nodes);  // full circle, split at flat directions

using PlaneFn = std::function<double(const Vector2d&)>;

// Integral of f over {phi_min <= phi <= phi_max} in Euclidean polar
// coordinates; the gauge enters only through the ray bounds.
QuadResult plane_integral(const PlaneFn& f, const Gauge& g, double phi_min, double phi_max,
                          const QuadScheme& scheme = {});

// Same integral through the co-area formula: the slices Sigma_t are
// parametrized and weighted by 1/|grad phi|.
QuadResult coarea_integral(const PlaneFn& f, const Gauge& g, double t_min, double t_max,
                           const QuadScheme& scheme = {});

using ConeFn = std::function<double(const Vector2d&, double)>;  // (xi, t=phi(xi))

// (int |u|^q dmu)^{1/q} by slice quadrature. q >= 1.
QuadResult cone_norm(const ConeFn& u, const WeightedConeMeasure& mu, double q,
                     const QuadScheme& scheme = {});

// Dyadic decomposition of the weight on Sigma (arclength) and on Delta
// (plane measure). Bin j holds {2^j <= w < 2^{j+1}}; points with w below
// 2^-1074 are accounted separately as flat.
struct SublevelHistogram {
  std::map<int, double> sigma_arclength;
  std::map<int, double> delta_area;
  double flat_arclength = 0.0;
  double total_arclength = 0.0;
  double w_max = 0.0;
};

SublevelHistogram sublevel_histogram(const Gauge& g, int nodes = 1 << 16,
                                     WeightConvention conv = WeightConvention::PositiveAdjugate);

double sublevel_measure(const Gauge& g, int j, WeightConvention conv = WeightConvention::PositiveAdjugate);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  int bins_used = 0;
  bool determined = false;
};

// Least-squares fit of log2 sigma(Sigma_j) against j over the asymptotic
// bins: the `nbins` largest nonempty bins after dropping those within two
// dyadic levels of max w (the truncation crossover).
SlopeFit sublevel_slope_fit(const SublevelHistogram& hist, int nbins = 10);

}  // namespace conelab
