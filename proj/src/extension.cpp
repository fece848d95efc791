#include "conelab/extension.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace conelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

struct CurveNode {
  double theta, gl_weight;
  Vector2d point;
  double radius, speed, grad_norm, w13, kappa13;
};

std::vector<CurveNode> curve_nodes(const Gauge& g, const ThetaGrid& grid,
                                   const WeightedConeMeasure& mu) {
  std::vector<CurveNode> out(grid.theta.size());
  const double sign = (mu.conv == WeightConvention::PositiveAdjugate) ? 1.0 : -1.0;
  for (size_t i = 0; i < grid.theta.size(); ++i) {
    const double th = grid.theta[i];
    CurveNode nd;
    nd.theta = th;
    nd.gl_weight = grid.weight[i];
    double R, Rp, Rpp;
    g.boundary_radius(th, R, Rp, Rpp);
    nd.point = R * Vector2d(std::cos(th), std::sin(th));
    nd.radius = R;
    nd.speed = std::hypot(R, Rp);
    const GaugeJet j = g.jet(VectorXd(nd.point));
    nd.grad_norm = j.gradient.norm();
    const double w =
        std::max(0.0, sign * j.gradient.dot(adjugate(j.hessian) * j.gradient) * j.value);
    nd.w13 = std::pow(w, mu.exponent);
    const double sp2 = R * R + Rp * Rp;
    const double kappa =
        std::max(0.0, (R * R + 2.0 * Rp * Rp - R * Rpp) / (sp2 * std::sqrt(sp2)));
    nd.kappa13 = std::pow(kappa, mu.exponent);
    out[i] = nd;
  }
  return out;
}

double max_boundary_radius(const Gauge& g) {
  double m = 0.0;
  for (int i = 0; i < 256; ++i) {
    double R, Rp, Rpp;
    g.boundary_radius(2.0 * kPi * i / 256.0, R, Rp, Rpp);
    m = std::max(m, std::hypot(R, Rp));
  }
  return m;
}

}  // namespace

ConeDensity ConeDensity::exp_decay(double rate) {
  ConeDensity d;
  d.value = [rate](const Vector2d&, double s) { return Complex(std::exp(-rate * s), 0.0); };
  d.envelope = [rate](double s) { return std::exp(-rate * s); };
  d.s_max = std::max(4.0, 40.0 / rate);
  return d;
}

QuadResultC extension_eval(const Gauge& g, const ConeDensity& u, const Vector2d& x, double t,
                           const WeightedConeMeasure& mu, double tol) {
  if (g.dimension() != 2) throw std::invalid_argument("extension_eval: 2D gauges only");
  if (x.norm() > 1e3 || std::abs(t) > 1e3)
    throw std::invalid_argument("extension_eval: oscillation budget exceeded (|x|,|t| <= 1e3)");
  const double s_max = (mu.support == WeightedConeMeasure::Support::FullCone)
                           ? std::min(u.s_max, mu.t_max)
                           : 2.0;
  const double s_min = (mu.support == WeightedConeMeasure::Support::FullCone) ? 0.0 : 1.0;
  const double rmax_unit = max_boundary_radius(g);
  const double sign = (mu.conv == WeightConvention::PositiveAdjugate) ? 1.0 : -1.0;

  const auto run = [&](double refine) {
    // polar coordinates: xi = rho * unit(theta)
    const double rho_budget = s_max * rmax_unit;
    const double cyc_rho = rho_budget * (x.norm() + std::abs(t) + 1.0);
    const double cyc_th = rho_budget * (x.norm() + std::abs(t) + 1.0) * 2.0;
    const int nr = std::min(40000, static_cast<int>(refine * (48 + 8.0 * cyc_rho)));
    const int nth = std::min(40000, static_cast<int>(refine * (64 + 4.0 * cyc_th)));
    const ThetaGrid grid = theta_grid(g, nth);
    std::vector<Complex> rays(grid.theta.size());
    for (size_t i = 0; i < grid.theta.size(); ++i) {
      const double th = grid.theta[i];
      const Vector2d unit(std::cos(th), std::sin(th));
      const double p = g.value(VectorXd(unit));
      const double r0 = s_min / p, r1 = s_max / p;
      const auto integrand = [&](double rho) {
        const Vector2d xi = rho * unit;
        // near the apex fall back to the unit ray; w and grad phi are
        // degree-0 there and phi scales linearly
        const bool tiny = rho < 1e-7;
        const GaugeJet j = g.jet(VectorXd(tiny ? Vector2d(unit) : xi));
        const double phi = tiny ? rho * j.value : j.value;
        const double w =
            std::max(0.0, sign * j.gradient.dot(adjugate(j.hessian) * j.gradient) * j.value);
        double dens = std::pow(w, mu.exponent) * rho;
        switch (mu.support) {
          case WeightedConeMeasure::Support::FullCone:
            dens /= phi;
            break;
          case WeightedConeMeasure::Support::CompactDelta:
            break;
          case WeightedConeMeasure::Support::SurfaceOnS:
            dens *= std::sqrt(1.0 + j.gradient.squaredNorm());
            break;
        }
        const double phase = 2.0 * kPi * (x.dot(xi) + t * phi);
        return std::exp(kI * phase) * u.value(xi, phi) * dens;
      };
      rays[i] = grid.weight[i] * gl_integrate_c(integrand, r0, r1, nr);
    }
    return pairwise_sum(rays);
  };

  QuadResultC res;
  const Complex coarse = run(1.0);
  const Complex fine = run(2.0);
  res.value = fine;
  res.err_est = std::abs(fine - coarse);
  res.converged = res.err_est <= tol * std::max(1.0, std::abs(fine));
  return res;
}

QuadResultC extension_eval_sliced(const Gauge& g, const ConeDensity& u, const Vector2d& x, double t,
                                  const WeightedConeMeasure& mu, double tol) {
  if (g.dimension() != 2) throw std::invalid_argument("extension_eval_sliced: 2D gauges only");
  if (x.norm() > 1e3 || std::abs(t) > 1e3)
    throw std::invalid_argument("extension_eval_sliced: oscillation budget exceeded");
  // the kappa^{1/3} slice representation is tied to the 1/3 weight power
  if (std::abs(mu.exponent - 1.0 / 3.0) > 1e-15)
    throw std::invalid_argument("extension_eval_sliced: measure exponent must be 1/3");
  const double s_max = (mu.support == WeightedConeMeasure::Support::FullCone)
                           ? std::min(u.s_max, mu.t_max)
                           : 2.0;
  const double s_min = (mu.support == WeightedConeMeasure::Support::FullCone) ? 0.0 : 1.0;
  const double rmax_unit = max_boundary_radius(g);

  const auto run = [&](double refine) {
    const double cyc_th = s_max * x.norm() * rmax_unit;
    const int nth = std::min(40000, static_cast<int>(refine * (96 + 10.0 * cyc_th)));
    const auto nodes = curve_nodes(g, theta_grid(g, nth), mu);
    // inner curve integral at fixed s
    const auto inner = [&](double s) {
      std::vector<Complex> terms(nodes.size());
      for (size_t i = 0; i < nodes.size(); ++i) {
        const CurveNode& nd = nodes[i];
        // w^{1/3} dsigma_s/(|grad phi| s) = kappa^{1/3} dsigma per slice; the
        // compact/surface variants keep the extra s of dxi = s R^2 ds dtheta
        double dens = nd.kappa13 * nd.speed;
        switch (mu.support) {
          case WeightedConeMeasure::Support::FullCone:
            break;
          case WeightedConeMeasure::Support::CompactDelta:
            dens *= s;
            break;
          case WeightedConeMeasure::Support::SurfaceOnS:
            dens *= s * std::sqrt(1.0 + nd.grad_norm * nd.grad_norm);
            break;
        }
        const double phase = 2.0 * kPi * s * x.dot(nd.point);
        terms[i] = nd.gl_weight * std::exp(kI * phase) * u.value(s * nd.point, s) * dens;
      }
      return pairwise_sum(terms);
    };
    const double cyc_s = s_max * (std::abs(t) + x.norm() * rmax_unit + 1.0);
    const int ns = std::min(40000, static_cast<int>(refine * (96 + 10.0 * cyc_s)));
    const GLRule& rs = gl_rule(ns);
    std::vector<Complex> terms(ns);
    const double mid = 0.5 * (s_min + s_max), half = 0.5 * (s_max - s_min);
    for (int a = 0; a < ns; ++a) {
      const double s = mid + half * rs.x[a];
      terms[a] = rs.w[a] * std::exp(kI * (2.0 * kPi * t * s)) * inner(s);
    }
    return half * pairwise_sum(terms);
  };

  QuadResultC res;
  const Complex coarse = run(1.0);
  const Complex fine = run(2.0);
  res.value = fine;
  res.err_est = std::abs(fine - coarse);
  res.converged = res.err_est <= tol * std::max(1.0, std::abs(fine));
  return res;
}

double Profile1D::operator()(double x) const {
  switch (kind) {
    case Kind::Gaussian:
      return std::exp(-kPi * x * x);
    case Kind::Bump:
      if (std::abs(x) >= 1.0) return 0.0;
      return std::exp(1.0 - 1.0 / (1.0 - x * x));
  }
  return 0.0;
}

double Profile1D::inverse_transform_norm(double p) const {
  if (p < 1.0) throw std::invalid_argument("profile norm: p >= 1 required");
  if (kind == Kind::Gaussian) {
    // Gaussian is its own transform: ||e^{-pi y^2}||_p = p^{-1/(2p)}
    return std::pow(p, -0.5 / p);
  }
  static std::mutex mu;
  static std::map<double, double> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(p); it != cache.end()) return it->second;
  }
  // transform of the bump by per-period panels, then |.|^p over y
  const auto ghat = [&](double y) {
    const int panels = 8 + static_cast<int>(2.0 * std::abs(y));
    return 2.0 * gl_composite(
                     [&](double x) { return (*this)(x) * std::cos(2.0 * kPi * x * y); }, 0.0,
                     1.0, panels, 16);
  };
  const double ymax = 120.0;
  const double val = std::pow(
      2.0 * gl_composite([&](double y) { return std::pow(std::abs(ghat(y)), p); }, 0.0, ymax,
                         600, 16),
      1.0 / p);
  std::lock_guard lock(mu);
  cache[p] = val;
  return val;
}

double SeparableTestFamily::fhat(const Vector3d& z) const {
  return profiles[0](maps[0](z)) * profiles[1](maps[1](z)) * profiles[2](maps[2](z));
}

double SeparableTestFamily::fhat_on_cone(const Vector2d& xi, double s) const {
  return fhat(Vector3d(xi[0], xi[1], s));
}

double SeparableTestFamily::jacobian_scale() const {
  Eigen::Matrix3d rows;
  rows.row(0) = maps[0].a;
  rows.row(1) = maps[1].a;
  rows.row(2) = maps[2].a;
  const double det = rows.determinant();
  if (std::abs(det) < 1e-300) throw std::invalid_argument("family: degenerate affine rows");
  return 1.0 / std::abs(det);
}

double SeparableTestFamily::physical_norm(double p) const {
  const double pprime = p / (p - 1.0);
  double out = std::pow(jacobian_scale(), 1.0 / pprime);
  for (const auto& prof : profiles) out *= prof.inverse_transform_norm(p);
  return out;
}

QuadResult family_ratio(const Gauge& g, const SeparableTestFamily& fam, double p, double q,
                        const WeightedConeMeasure& mu, double tol) {
  if (p < 1.0 || q < 1.0) throw std::invalid_argument("family_ratio: p, q >= 1 required");
  double s0 = fam.s_center - fam.s_halfwidth;
  double s1 = fam.s_center + fam.s_halfwidth;
  if (mu.support == WeightedConeMeasure::Support::FullCone) {
    s0 = std::max(s0, 0.0);
    s1 = std::min(s1, mu.t_max);
  } else {
    s0 = std::max(s0, 1.0);
    s1 = std::min(s1, 2.0);
  }
  const double th0 = fam.theta_center - fam.theta_halfwidth;
  const double th1 = fam.theta_center + fam.theta_halfwidth;
  const double sign = (mu.conv == WeightConvention::PositiveAdjugate) ? 1.0 : -1.0;

  std::vector<double> kinks;
  if (mu.exponent > 0.0) {
    for (double a : flat_angles(g)) {
      kinks.push_back(a);
      kinks.push_back(a + 2.0 * kPi);
      kinks.push_back(a - 2.0 * kPi);
    }
  }
  const auto run = [&](int nth, int ns) {
    const ThetaGrid grid = theta_grid(th0, th1, kinks, nth);
    const GLRule& rs = gl_rule(ns);
    std::vector<double> cols(grid.theta.size());
    for (size_t i = 0; i < grid.theta.size(); ++i) {
      const double th = grid.theta[i];
      double R, Rp, Rpp;
      g.boundary_radius(th, R, Rp, Rpp);
      const Vector2d pt = R * Vector2d(std::cos(th), std::sin(th));
      const GaugeJet j = g.jet(VectorXd(pt));
      const double w =
          std::max(0.0, sign * j.gradient.dot(adjugate(j.hessian) * j.gradient) * j.value);
      const double wfac = std::pow(w, mu.exponent);
      const double gn2 = j.gradient.squaredNorm();
      std::vector<double> col(ns);
      for (int a = 0; a < ns; ++a) {
        const double s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * rs.x[a];
        double dens = wfac * s * R * R;
        if (mu.support == WeightedConeMeasure::Support::FullCone) dens /= s;
        if (mu.support == WeightedConeMeasure::Support::SurfaceOnS)
          dens *= std::sqrt(1.0 + gn2);
        const double val = fam.fhat_on_cone(s * pt, s);
        col[a] = rs.w[a] * std::pow(val, q) * dens;
      }
      cols[i] = grid.weight[i] * pairwise_sum(col);
    }
    return 0.5 * (s1 - s0) * pairwise_sum(cols);
  };

  QuadResult res;
  const double coarse = run(128, 48);
  const double fine = run(256, 96);
  const double num = std::pow(fine, 1.0 / q);
  res.value = num / fam.physical_norm(p);
  res.err_est = std::abs(std::pow(std::max(coarse, 0.0), 1.0 / q) - num) /
                fam.physical_norm(p);
  res.converged = res.err_est <= tol * std::max(std::abs(res.value), 1e-300);
  return res;
}

}  // namespace conelab
