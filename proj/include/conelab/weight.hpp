#pragma once

#include "conelab/gauge.hpp"

namespace conelab {

// Sign convention for M(phi). Positive-adjugate normalizes w to 1 on the
// circle and keeps w >= 0 on convex gauges; both options stay selectable.
enum class WeightConvention { PositiveAdjugate, NegativeAdjugate };

// Classical adjugate (transpose of the cofactor matrix) for n <= 4. Computed
// from minors, so it is well defined on the singular Hessians of degree-1
// homogeneous functions.
MatrixXd adjugate(const MatrixXd& a);

MatrixXd weight_matrix(const Gauge& g, const VectorXd& xi,
                       WeightConvention conv = WeightConvention::PositiveAdjugate);

// w(xi) = <M(phi) grad phi, grad phi> phi(xi). Vanishes in flat directions.
double weight(const Gauge& g, const VectorXd& xi,
              WeightConvention conv = WeightConvention::PositiveAdjugate);

// |kappa_param(theta) - w/|grad phi|^3| / max(kappa_param, 1e-12) with the
// parametric curvature from sigma_point (2D).
double curvature_identity_residual(const Gauge& g, double theta,
                                   WeightConvention conv = WeightConvention::PositiveAdjugate);

// Gaussian curvature at a Sigma point from a finite-difference graph
// parametrization over the tangent plane (any dimension 2..4). Serves as the
// independent route for the identity kappa = w/|grad phi|^{n+1}.
double gaussian_curvature_graph(const Gauge& g, const VectorXd& xi_on_sigma, double step = 5e-3);

double curvature_identity_residual_nd(const Gauge& g, const VectorXd& xi_on_sigma,
                                      WeightConvention conv = WeightConvention::PositiveAdjugate);

// |w_{phi o X}(xi) - (det X)^2 w_phi(X xi)| relative to the right-hand side.
double affine_covariance_residual(const Gauge& g, const MatrixXd& X, const VectorXd& xi,
                                  WeightConvention conv = WeightConvention::PositiveAdjugate);

}  // namespace conelab
