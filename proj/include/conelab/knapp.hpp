#pragma once

#include <vector>

#include "conelab/extension.hpp"

namespace conelab {

// A Knapp cap on a 2D cone: a frequency box fitted to the tangent line of
// Sigma at theta0, with transverse thickness governed by G(delta).
struct KnappCap {
  const Gauge* gauge = nullptr;
  double theta0 = 0.0;
  double delta = 0.0;
  double G = 0.0;          // sup |Gamma(v)| over |v| <= delta
  double gamma0 = 0.0;     // graph height at the cap point
  double gamma_p0 = 0.0;   // graph slope at the cap point
  Eigen::Matrix2d rotation;  // maps the cap direction to the +y axis
  double h3 = 0.125;       // slice-profile width
  double s_center = 1.5;
  SeparableTestFamily family;

  // Gamma(v) = gamma(v) - gamma(0) - v gamma'(0) for the graph of Sigma
  double Gamma(double v) const;
  // predicted ||F_delta||_p from the factorized norm identity
  double predicted_norm(double p) const;
};

KnappCap knapp_cap(const Gauge& g, double theta0, double delta,
                   Profile1D::Kind profile_kind = Profile1D::Kind::Gaussian, double h3 = 0.125);

struct KnappScanRow {
  double delta = 0.0;
  double ratio = 0.0;
  double log_ratio = 0.0;
  bool converged = false;
};

struct KnappScanResult {
  std::vector<KnappScanRow> rows;
  double slope = 0.0;
  double intercept = 0.0;
  bool determined = false;
};

// family_ratio per delta and least-squares fit of log(ratio) vs log(delta).
// For a type-k cap with surface measure the predicted slope is
// 1/q - (k+1)/p'; with the affine-weighted measure it is (k+1)(1/(3q) - 1/p').
KnappScanResult knapp_scan(const Gauge& g, double p, double q, const std::vector<double>& deltas,
                           double theta0, const WeightedConeMeasure& mu,
                           Profile1D::Kind profile_kind = Profile1D::Kind::Gaussian);

// Scans q at fixed p and locates the zero crossing of the fitted slope by
// linear interpolation. Returns NaN until the slope changes sign.
double critical_q_crossing(const Gauge& g, double p, const std::vector<double>& q_grid,
                           const std::vector<double>& deltas, double theta0,
                           const WeightedConeMeasure& mu);

// Anisotropic dilation data for an n=3 cap at a Sigma point: G(delta_) with
// delta_ u = (delta^{3/2} u1, delta u2), plus the scaling-contradiction ratio
// delta^{(3n-4)/2} / G^{(n-1)/2}.
struct KnappAnisotropic3 {
  double delta = 0.0;
  double G = 0.0;
  double contradiction_ratio = 0.0;
  double predicted_norm_scale = 0.0;  // (delta^{(3n-4)/2} G)^{1/p'} at p' = 2(n+1)/(n-1)... supplied p
};

KnappAnisotropic3 knapp_anisotropic3(const Gauge& g3, const Eigen::Vector3d& xi_on_sigma,
                                     double delta, double p);

}  // namespace conelab
