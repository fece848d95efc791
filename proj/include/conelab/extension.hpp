#pragma once

#include <array>
#include <complex>
#include <functional>

#include "conelab/measure.hpp"

namespace conelab {

using Eigen::Vector3d;

// Density u(xi, phi(xi)) on the cone, with a radial decay envelope that
// dominates |u| and controls quadrature truncation.
struct ConeDensity {
  std::function<Complex(const Vector2d&, double)> value;
  std::function<double(double)> envelope;  // envelope(s) >= sup_theta |u(s . , s)|
  double s_max = 8.0;                      // truncation: envelope negligible beyond

  static ConeDensity exp_decay(double rate);  // u = exp(-rate * phi)
};

// (u dmu)^(x, t): direct two-dimensional oscillatory quadrature of
// int e^{2pi i (x.xi + t phi(xi))} u w^{1/3} dxi / phi in polar coordinates.
QuadResultC extension_eval(const Gauge& g, const ConeDensity& u, const Vector2d& x, double t,
                           const WeightedConeMeasure& mu, double tol = 1e-6);

// Sliced form: outer integral over s of e^{2pi i t s} times the curve
// integral int_Sigma e^{2pi i s x.xi'} u(s xi', s) kappa^{1/3} dsigma.
QuadResultC extension_eval_sliced(const Gauge& g, const ConeDensity& u, const Vector2d& x, double t,
                                  const WeightedConeMeasure& mu, double tol = 1e-6);

// 1D profile with closed-form or quadrature-certified inverse-transform norms.
struct Profile1D {
  enum class Kind { Gaussian, Bump };
  Kind kind = Kind::Gaussian;

  double operator()(double x) const;
  // || (profile)^vee ||_{L^p(R)}
  double inverse_transform_norm(double p) const;
};

struct AffineFunctional3 {
  Vector3d a;
  double b = 0.0;
  double operator()(const Vector3d& z) const { return a.dot(z) + b; }
};

// Frequency-side product g1(A1 z) g2(A2 z) g3(A3 z) with affine functionals
// A_i. The physical-space L^p norm factorizes through the inverse transform
// of each profile and the Jacobian of the row map.
struct SeparableTestFamily {
  std::array<AffineFunctional3, 3> maps;
  std::array<Profile1D, 3> profiles;

  // quadrature support hints on the cone (set by the cap builder)
  double theta_center = 0.0;
  double theta_halfwidth = 3.2;  // full circle when no hint applies
  double s_center = 1.5;
  double s_halfwidth = 0.75;

  double fhat(const Vector3d& z) const;
  double fhat_on_cone(const Vector2d& xi, double s) const;
  double jacobian_scale() const;       // 1/|det of the three rows|
  double physical_norm(double p) const;  // ||F||_{L^p(R^3)}
};

// || Fhat restricted to the cone ||_{L^q(mu)} / ||F||_{L^p(R^3)}.
// A lower bound on the restriction operator norm, never an upper bound.
QuadResult family_ratio(const Gauge& g, const SeparableTestFamily& fam, double p, double q,
                        const WeightedConeMeasure& mu, double tol = 1e-6);

}  // namespace conelab
