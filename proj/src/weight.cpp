#include "conelab/weight.hpp"

#include <cmath>
#include <stdexcept>

namespace conelab {

namespace {

double minor_det(const MatrixXd& a, int row, int col) {
  const int n = static_cast<int>(a.rows());
  MatrixXd m(n - 1, n - 1);
  for (int i = 0, mi = 0; i < n; ++i) {
    if (i == row) continue;
    for (int j = 0, mj = 0; j < n; ++j) {
      if (j == col) continue;
      m(mi, mj) = a(i, j);
      ++mj;
    }
    ++mi;
  }
  return m.determinant();
}

}  // namespace

MatrixXd adjugate(const MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || n < 1 || n > 4) throw std::invalid_argument("adjugate: need square n<=4");
  if (n == 1) return MatrixXd::Ones(1, 1);
  MatrixXd adj(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      adj(j, i) = sign * minor_det(a, i, j);  // transpose of the cofactor matrix
    }
  return adj;
}

MatrixXd weight_matrix(const Gauge& g, const VectorXd& xi, WeightConvention conv) {
  const GaugeJet j = g.jet(xi);
  const double sign = (conv == WeightConvention::PositiveAdjugate) ? 1.0 : -1.0;
  return sign * adjugate(j.hessian);
}

double weight(const Gauge& g, const VectorXd& xi, WeightConvention conv) {
  const GaugeJet j = g.jet(xi);
  const double sign = (conv == WeightConvention::PositiveAdjugate) ? 1.0 : -1.0;
  const MatrixXd m = sign * adjugate(j.hessian);
  return j.gradient.dot(m * j.gradient) * j.value;
}

double curvature_identity_residual(const Gauge& g, double theta, WeightConvention conv) {
  if (g.dimension() != 2) throw std::invalid_argument("curvature identity: 2D variant");
  const SigmaSample s = g.sigma_point(theta);
  const GaugeJet j = g.jet(VectorXd(s.point));
  const double sign = (conv == WeightConvention::PositiveAdjugate) ? 1.0 : -1.0;
  const double w = sign * j.gradient.dot(adjugate(j.hessian) * j.gradient) * j.value;
  const double rhs = w / std::pow(j.gradient.norm(), 3);
  return std::abs(s.curvature - rhs) / std::max(s.curvature, 1e-12);
}

double gaussian_curvature_graph(const Gauge& g, const VectorXd& xi_on_sigma, double step) {
  const int n = g.dimension();
  const GaugeJet j0 = g.jet(xi_on_sigma);
  if (std::abs(j0.value - 1.0) > 1e-6)
    throw std::invalid_argument("gaussian_curvature_graph: point must lie on Sigma");
  const VectorXd normal = j0.gradient.normalized();

  // orthonormal tangent basis via Householder-style completion
  Eigen::HouseholderQR<MatrixXd> qr(normal);
  const MatrixXd q = qr.householderQ();
  MatrixXd tang = q.rightCols(n - 1);  // columns orthogonal to the normal

  // h(u): offset along the normal solving phi(x0 + T u + h nu) = 1
  const auto solve_h = [&](const VectorXd& u) {
    double h = 0.0;
    for (int it = 0; it < 60; ++it) {
      const VectorXd p = xi_on_sigma + tang * u + h * normal;
      const GaugeJet jp = g.jet(p);
      const double f = jp.value - 1.0;
      const double df = jp.gradient.dot(normal);
      const double dh = f / df;
      h -= dh;
      if (std::abs(dh) < 1e-15) break;
    }
    return h;
  };

  // Hessian of h at 0 by 4th-order finite differences
  const int m = n - 1;
  const double h = step;
  MatrixXd hess(m, m);
  const auto eval = [&](int i, double a, int jdx, double b) {
    VectorXd u = VectorXd::Zero(m);
    u[i] += a;
    u[jdx] += b;
    return solve_h(u);
  };
  for (int i = 0; i < m; ++i) {
    const double f0 = solve_h(VectorXd::Zero(m));
    const double fp1 = eval(i, h, i, 0), fm1 = eval(i, -h, i, 0);
    const double fp2 = eval(i, 2 * h, i, 0), fm2 = eval(i, -2 * h, i, 0);
    hess(i, i) = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
  }
  const double c1 = 8.0, c2 = -1.0;  // 4th-order first-derivative stencil /12h
  for (int i = 0; i < m; ++i)
    for (int jdx = i + 1; jdx < m; ++jdx) {
      // nested 4th-order first derivatives
      const auto dfi = [&](double b) {
        const double g1 = eval(i, h, jdx, b), gm1 = eval(i, -h, jdx, b);
        const double g2 = eval(i, 2 * h, jdx, b), gm2 = eval(i, -2 * h, jdx, b);
        return (c1 * (g1 - gm1) + c2 * (g2 - gm2)) / (12 * h);
      };
      const double v = (c1 * (dfi(h) - dfi(-h)) + c2 * (dfi(2 * h) - dfi(-2 * h))) / (12 * h);
      hess(i, jdx) = hess(jdx, i) = v;
    }
  return std::abs(hess.determinant());
}

double curvature_identity_residual_nd(const Gauge& g, const VectorXd& xi_on_sigma,
                                      WeightConvention conv) {
  const int n = g.dimension();
  const GaugeJet j = g.jet(xi_on_sigma);
  const double sign = (conv == WeightConvention::PositiveAdjugate) ? 1.0 : -1.0;
  const double w = sign * j.gradient.dot(adjugate(j.hessian) * j.gradient) * j.value;
  const double rhs = w / std::pow(j.gradient.norm(), n + 1);
  const double kappa = gaussian_curvature_graph(g, xi_on_sigma);
  return std::abs(kappa - rhs) / std::max(kappa, 1e-12);
}

double affine_covariance_residual(const Gauge& g, const MatrixXd& X, const VectorXd& xi,
                                  WeightConvention conv) {
  if (std::abs(X.determinant()) < 1e-6)
    throw std::invalid_argument("affine covariance: matrix too close to singular");
  const Gauge composed(GaugeSpec::linear_image(g.spec(), X));
  const double lhs = weight(composed, xi, conv);
  const double det2 = X.determinant() * X.determinant();
  const double rhs = det2 * weight(g, X * xi, conv);
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-12);
}

}  // namespace conelab
