#include "conelab/knapp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conelab {

namespace {

constexpr double kPi = std::numbers::pi;

Vector2d sigma_pt(const Gauge& g, double th) {
  double R, Rp, Rpp;
  g.boundary_radius(th, R, Rp, Rpp);
  return R * Vector2d(std::cos(th), std::sin(th));
}

// theta with Q1(theta) = target, where Q = rotation * Sigma(theta); bisection
// from theta0 in the direction where Q1 moves toward the target.
double solve_q1(const Gauge& g, const Eigen::Matrix2d& rot, double theta0, double target) {
  const auto q1 = [&](double th) { return (rot * sigma_pt(g, th))[0]; };
  const double dir = (q1(theta0 + 1e-5) > q1(theta0)) ? 1.0 : -1.0;
  double step = dir * ((target > 0) ? 1e-3 : -1e-3);
  double a = theta0, b = theta0 + step;
  const double fa0 = q1(a) - target;
  while ((q1(b) - target) * fa0 > 0.0) {
    step *= 1.5;
    b = theta0 + step;
    if (std::abs(step) > 2.5) throw std::invalid_argument("knapp: cap window not bracketed");
  }
  for (int i = 0; i < 90; ++i) {
    const double m = 0.5 * (a + b);
    if ((q1(m) - target) * (q1(a) - target) <= 0.0)
      b = m;
    else
      a = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

double KnappCap::Gamma(double v) const {
  const double th = solve_q1(*gauge, rotation, theta0, v);
  const Vector2d q = rotation * sigma_pt(*gauge, th);
  return q[1] - gamma0 - q[0] * gamma_p0;
}

double KnappCap::predicted_norm(double p) const { return family.physical_norm(p); }

KnappCap knapp_cap(const Gauge& g, double theta0, double delta, Profile1D::Kind profile_kind,
                   double h3) {
  if (g.dimension() != 2) throw std::invalid_argument("knapp_cap: 2D gauges only");
  if (!(delta > 0.0) || delta > 0.25)
    throw std::invalid_argument("knapp_cap: delta must lie in (0, 1/4]");
  KnappCap cap;
  cap.gauge = &g;
  cap.theta0 = theta0;
  cap.delta = delta;
  cap.h3 = h3;

  const Vector2d p0 = sigma_pt(g, theta0);
  const double ang = std::atan2(p0[1], p0[0]);
  const double rotang = kPi / 2.0 - ang;
  cap.rotation << std::cos(rotang), -std::sin(rotang), std::sin(rotang), std::cos(rotang);
  cap.gamma0 = p0.norm();

  const SigmaSample samp = g.sigma_point(theta0);
  const Vector2d tr = cap.rotation * samp.tangent;
  if (std::abs(tr[0]) < 1e-12) throw std::invalid_argument("knapp_cap: degenerate tangent frame");
  cap.gamma_p0 = tr[1] / tr[0];

  cap.G = std::max(std::abs(cap.Gamma(delta)), std::abs(cap.Gamma(-delta)));
  if (!(cap.G > 0.0)) throw std::invalid_argument("knapp_cap: flat cap has G = 0");

  // frequency-side family in unrotated coordinates
  const Eigen::Matrix2d& rm = cap.rotation;
  SeparableTestFamily fam;
  fam.profiles = {Profile1D{profile_kind}, Profile1D{profile_kind}, Profile1D{profile_kind}};
  fam.maps[0].a = Vector3d(rm(0, 0), rm(0, 1), 0.0) / delta;
  fam.maps[0].b = 0.0;
  fam.maps[1].a = Vector3d(rm(1, 0) - cap.gamma_p0 * rm(0, 0), rm(1, 1) - cap.gamma_p0 * rm(0, 1),
                           -cap.gamma0) /
                  cap.G;
  fam.maps[1].b = 0.0;
  fam.maps[2].a = Vector3d(0.0, 0.0, 1.0 / h3);
  fam.maps[2].b = -cap.s_center / h3;

  // cone-quadrature window: |Q1| up to 6 delta (clipped on small curves)
  const double reach = std::min(6.0 * delta, 0.4);
  const double t1 = solve_q1(g, cap.rotation, theta0, reach);
  const double t2 = solve_q1(g, cap.rotation, theta0, -reach);
  fam.theta_center = theta0;
  fam.theta_halfwidth = std::max(std::abs(t1 - theta0), std::abs(t2 - theta0));
  fam.s_center = cap.s_center;
  fam.s_halfwidth = 5.0 * h3;
  cap.family = fam;
  return cap;
}

KnappScanResult knapp_scan(const Gauge& g, double p, double q, const std::vector<double>& deltas,
                           double theta0, const WeightedConeMeasure& mu,
                           Profile1D::Kind profile_kind) {
  if (deltas.size() < 5)
    throw std::invalid_argument("knapp_scan: need a geometric grid of >= 5 deltas");
  KnappScanResult out;
  // the compact bump's edge derivatives limit plain quadrature; the slope
  // fit only needs a fraction of the gaussian tolerance
  const double tol = (profile_kind == Profile1D::Kind::Bump) ? 5e-3 : 1e-6;
  for (const double de : deltas) {
    const KnappCap cap = knapp_cap(g, theta0, de, profile_kind);
    const QuadResult r = family_ratio(g, cap.family, p, q, mu, tol);
    KnappScanRow row;
    row.delta = de;
    row.ratio = r.value;
    row.log_ratio = std::log(r.value);
    row.converged = r.converged && r.value > 0.0;
    out.rows.push_back(row);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& row : out.rows) {
    if (!row.converged) continue;
    const double x = std::log(row.delta);
    sx += x;
    sy += row.log_ratio;
    sxx += x * x;
    sxy += x * row.log_ratio;
    ++n;
  }
  if (n >= 4) {
    const double det = n * sxx - sx * sx;
    out.slope = (n * sxy - sx * sy) / det;
    out.intercept = (sy - out.slope * sx) / n;
    out.determined = true;
  }
  return out;
}

double critical_q_crossing(const Gauge& g, double p, const std::vector<double>& q_grid,
                           const std::vector<double>& deltas, double theta0,
                           const WeightedConeMeasure& mu) {
  std::vector<std::pair<double, double>> pts;
  for (const double q : q_grid) {
    const KnappScanResult r = knapp_scan(g, p, q, deltas, theta0, mu);
    if (r.determined) pts.emplace_back(q, r.slope);
  }
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto [q0, s0] = pts[i];
    const auto [q1, s1] = pts[i + 1];
    if (s0 == 0.0) return q0;
    if (s0 * s1 < 0.0) return q0 - s0 * (q1 - q0) / (s1 - s0);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

KnappAnisotropic3 knapp_anisotropic3(const Gauge& g3, const Eigen::Vector3d& xi_on_sigma,
                                     double delta, double p) {
  if (g3.dimension() != 3) throw std::invalid_argument("knapp_anisotropic3: 3D gauges only");
  if (!(delta > 0.0) || delta > 0.25)
    throw std::invalid_argument("knapp_anisotropic3: delta must lie in (0, 1/4]");
  const VectorXd x0 = xi_on_sigma;
  const GaugeJet j0 = g3.jet(x0);
  if (std::abs(j0.value - 1.0) > 1e-8)
    throw std::invalid_argument("knapp_anisotropic3: point must lie on Sigma");
  const VectorXd normal = j0.gradient.normalized();
  Eigen::HouseholderQR<MatrixXd> qr{MatrixXd{normal}};
  const MatrixXd tang = MatrixXd(qr.householderQ()).rightCols(2);

  const auto graph_offset = [&](const Eigen::Vector2d& u) {
    double h = 0.0;
    for (int it = 0; it < 60; ++it) {
      const VectorXd pt = x0 + tang * u + h * normal;
      const GaugeJet jp = g3.jet(pt);
      const double dh = (jp.value - 1.0) / jp.gradient.dot(normal);
      h -= dh;
      if (std::abs(dh) < 1e-15) break;
    }
    return h;
  };

  // Gamma(u) = h(u) (the graph is centred: h(0)=0, grad h(0)=0)
  KnappAnisotropic3 out;
  out.delta = delta;
  const double d32 = std::pow(delta, 1.5);
  double G = 0.0;
  const int nr = 24, na = 48;
  for (int ir = 1; ir <= nr; ++ir)
    for (int ia = 0; ia < na; ++ia) {
      const double r = static_cast<double>(ir) / nr;
      const double a = 2.0 * kPi * ia / na;
      const Eigen::Vector2d u(d32 * r * std::cos(a), delta * r * std::sin(a));
      G = std::max(G, std::abs(graph_offset(u)));
    }
  out.G = G;
  const int n = 3;
  out.contradiction_ratio = std::pow(delta, (3.0 * n - 4.0) / 2.0) / std::pow(G, (n - 1.0) / 2.0);
  const double pprime = p / (p - 1.0);
  out.predicted_norm_scale = std::pow(std::pow(delta, (3.0 * n - 4.0) / 2.0) * G, 1.0 / pprime);
  return out;
}

}  // namespace conelab
