#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace conelab {

using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

enum class GaugeKind { Circle, LinearImage, Superellipse, Radial };

// Description of a degree-1 homogeneous convex gauge, the Minkowski
// functional of a centred convex body.
struct GaugeSpec {
  GaugeKind kind = GaugeKind::Circle;
  std::string label;
  int dim = 2;

  // linear-image
  MatrixXd matrix;
  std::shared_ptr<GaugeSpec> base;

  // superellipse
  int k = 4;

  // radial: r(theta) = cos_coef[0] + sum_m cos_coef[m] cos(m theta)
  //                              + sum_m sin_coef[m-1] sin(m theta)
  VectorXd cos_coef;
  VectorXd sin_coef;

  static GaugeSpec circle(int dim = 2, std::string label = "circle");
  static GaugeSpec linear_image(GaugeSpec base_spec, MatrixXd X, std::string label = "");
  static GaugeSpec superellipse(int k, std::string label = "");
  static GaugeSpec radial(VectorXd cos_coef, VectorXd sin_coef, std::string label = "radial");

  std::string to_json() const;
  static GaugeSpec from_json(const std::string& text);
};

struct GaugeJet {
  double value = 0.0;
  VectorXd gradient;
  MatrixXd hessian;
};

// One sample of the generated curve Sigma = {phi = 1}, parametrized by the
// ray angle theta.
struct SigmaSample {
  double theta = 0.0;
  Vector2d point;
  Vector2d tangent;
  double arc_element = 0.0;  // d sigma / d theta
  double curvature = 0.0;
};

struct FlatArc {
  double theta_begin = 0.0;
  double theta_end = 0.0;
  double arclength = 0.0;
};

struct ContactOrderFit {
  double theta_flat = 0.0;
  double k_estimate = 0.0;
  double fit_residual = 0.0;
  bool determined = false;
};

struct ConvexityReport {
  double min_curvature = 0.0;
  double max_curvature = 0.0;
  std::vector<FlatArc> flat_arcs;
  std::vector<ContactOrderFit> contact_fits;
  // Largest determined contact order; 2 when the curvature never vanishes.
  double k_estimate = 2.0;
};

class Gauge {
 public:
  explicit Gauge(GaugeSpec spec);

  int dimension() const { return dim_; }
  const GaugeSpec& spec() const { return spec_; }

  double value(const VectorXd& xi) const;
  // Value, gradient and Hessian at xi != 0. Throws for |xi| < 1e-8.
  GaugeJet jet(const VectorXd& xi) const;

  // 2D only: the Sigma point on the ray at angle theta, with tangent,
  // arclength element and curvature of the parametrization.
  SigmaSample sigma_point(double theta) const;

  // Radius of Sigma along the ray at angle theta together with its first two
  // theta-derivatives (2D only).
  void boundary_radius(double theta, double& R, double& Rp, double& Rpp) const;

 private:
  GaugeSpec spec_;
  int dim_;
  std::shared_ptr<const Gauge> base_;  // linear-image only
};

Gauge make_gauge(const GaugeSpec& spec);

// Samples the curvature of Sigma at m angles, reports flat arcs and fits the
// contact order k near each curvature zero (2D only, m >= 64).
ConvexityReport convexity_audit(const Gauge& g, int m);

// Angles of the curvature zeros of Sigma, located by a scan plus golden
// section refinement. Quantities like w^{1/3} lose smoothness exactly there.
std::vector<double> flat_angles(const Gauge& g, int scan = 2048);

}  // namespace conelab
