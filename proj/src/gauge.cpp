#include "conelab/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace conelab {

namespace {

constexpr double kPi = std::numbers::pi;

double ipow(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

// r(theta) and derivatives for a truncated trigonometric series.
void radial_series(const GaugeSpec& s, double theta, double& r, double& rp, double& rpp) {
  r = s.cos_coef.size() > 0 ? s.cos_coef[0] : 0.0;
  rp = 0.0;
  rpp = 0.0;
  for (int m = 1; m < s.cos_coef.size(); ++m) {
    const double c = s.cos_coef[m], cm = std::cos(m * theta), sm = std::sin(m * theta);
    r += c * cm;
    rp += -c * m * sm;
    rpp += -c * m * m * cm;
  }
  for (int m = 1; m <= s.sin_coef.size(); ++m) {
    const double c = s.sin_coef[m - 1], cm = std::cos(m * theta), sm = std::sin(m * theta);
    r += c * sm;
    rp += c * m * cm;
    rpp += -c * m * m * sm;
  }
}

}  // namespace

GaugeSpec GaugeSpec::circle(int dim, std::string label) {
  GaugeSpec s;
  s.kind = GaugeKind::Circle;
  s.dim = dim;
  s.label = std::move(label);
  return s;
}

GaugeSpec GaugeSpec::linear_image(GaugeSpec base_spec, MatrixXd X, std::string label) {
  GaugeSpec s;
  s.kind = GaugeKind::LinearImage;
  s.dim = base_spec.dim;
  s.matrix = std::move(X);
  s.base = std::make_shared<GaugeSpec>(std::move(base_spec));
  s.label = label.empty() ? "linear-image(" + s.base->label + ")" : std::move(label);
  return s;
}

GaugeSpec GaugeSpec::superellipse(int k, std::string label) {
  GaugeSpec s;
  s.kind = GaugeKind::Superellipse;
  s.dim = 2;
  s.k = k;
  s.label = label.empty() ? "superellipse(" + std::to_string(k) + ")" : std::move(label);
  return s;
}

GaugeSpec GaugeSpec::radial(VectorXd cos_coef, VectorXd sin_coef, std::string label) {
  GaugeSpec s;
  s.kind = GaugeKind::Radial;
  s.dim = 2;
  s.cos_coef = std::move(cos_coef);
  s.sin_coef = std::move(sin_coef);
  s.label = std::move(label);
  return s;
}

Gauge::Gauge(GaugeSpec spec) : spec_(std::move(spec)), dim_(spec_.dim) {
  switch (spec_.kind) {
    case GaugeKind::Circle:
      if (dim_ < 2 || dim_ > 4) throw std::invalid_argument("gauge: circle dimension must be 2..4");
      break;
    case GaugeKind::LinearImage: {
      if (!spec_.base) throw std::invalid_argument("gauge: linear-image needs a base");
      base_ = std::make_shared<const Gauge>(*spec_.base);  // validates recursively
      dim_ = base_->dimension();
      if (spec_.matrix.rows() != dim_ || spec_.matrix.cols() != dim_)
        throw std::invalid_argument("gauge: linear-image matrix shape mismatch");
      if (std::abs(spec_.matrix.determinant()) <= 1e-12)
        throw std::invalid_argument("gauge: linear-image matrix is singular");
      spec_.dim = dim_;
      break;
    }
    case GaugeKind::Superellipse:
      if (spec_.k < 2 || spec_.k % 2 != 0)
        throw std::invalid_argument("gauge: superellipse exponent must be an even integer >= 2");
      dim_ = 2;
      break;
    case GaugeKind::Radial: {
      if (spec_.cos_coef.size() < 1) throw std::invalid_argument("gauge: radial series empty");
      dim_ = 2;
      // positivity and convexity audit on a fixed grid
      const int naudit = 4096;
      for (int i = 0; i < naudit; ++i) {
        const double th = 2.0 * kPi * i / naudit;
        double r, rp, rpp;
        radial_series(spec_, th, r, rp, rpp);
        if (r <= 0.0) throw std::invalid_argument("gauge: radial series not positive");
        if (r * r + 2.0 * rp * rp - r * rpp <= -1e-12)
          throw std::invalid_argument("gauge: radial series not convex");
      }
      break;
    }
  }
}

Gauge make_gauge(const GaugeSpec& spec) { return Gauge(spec); }

double Gauge::value(const VectorXd& xi) const {
  switch (spec_.kind) {
    case GaugeKind::Circle:
      return xi.norm();
    case GaugeKind::LinearImage:
      return base_->value(spec_.matrix * xi);
    case GaugeKind::Superellipse: {
      const int k = spec_.k;
      const double s = ipow(xi[0], k) + ipow(xi[1], k);
      return std::pow(s, 1.0 / k);
    }
    case GaugeKind::Radial: {
      const double rho = xi.norm();
      if (rho == 0.0) return 0.0;
      const double th = std::atan2(xi[1], xi[0]);
      double r, rp, rpp;
      radial_series(spec_, th, r, rp, rpp);
      return rho / r;
    }
  }
  return 0.0;
}

GaugeJet Gauge::jet(const VectorXd& xi) const {
  if (xi.norm() < 1e-8) throw std::invalid_argument("gauge_jet: point too close to the origin");
  GaugeJet j;
  switch (spec_.kind) {
    case GaugeKind::Circle: {
      const double rho = xi.norm();
      j.value = rho;
      j.gradient = xi / rho;
      j.hessian = (MatrixXd::Identity(dim_, dim_) - j.gradient * j.gradient.transpose()) / rho;
      break;
    }
    case GaugeKind::LinearImage: {
      const GaugeJet bj = base_->jet(spec_.matrix * xi);
      j.value = bj.value;
      j.gradient = spec_.matrix.transpose() * bj.gradient;
      j.hessian = spec_.matrix.transpose() * bj.hessian * spec_.matrix;
      break;
    }
    case GaugeKind::Superellipse: {
      const int k = spec_.k;
      const double x = xi[0], y = xi[1];
      const double s = ipow(x, k) + ipow(y, k);
      const double s1 = std::pow(s, 1.0 / k - 1.0);   // S^{1/k-1}
      const double s2 = std::pow(s, 1.0 / k - 2.0);   // S^{1/k-2}
      j.value = std::pow(s, 1.0 / k);
      j.gradient.resize(2);
      j.gradient << s1 * ipow(x, k - 1), s1 * ipow(y, k - 1);
      j.hessian.resize(2, 2);
      const double km1 = k - 1.0;
      j.hessian(0, 0) = km1 * (s1 * ipow(x, k - 2) - s2 * ipow(x, k - 1) * ipow(x, k - 1));
      j.hessian(1, 1) = km1 * (s1 * ipow(y, k - 2) - s2 * ipow(y, k - 1) * ipow(y, k - 1));
      j.hessian(0, 1) = j.hessian(1, 0) = -km1 * s2 * ipow(x, k - 1) * ipow(y, k - 1);
      break;
    }
    case GaugeKind::Radial: {
      // phi(rho, theta) = rho * g(theta) with g = 1/r. Degree-1 homogeneity
      // makes the Hessian a rank-one multiple of the tangential projector.
      const double rho = xi.norm();
      const double th = std::atan2(xi[1], xi[0]);
      double r, rp, rpp;
      radial_series(spec_, th, r, rp, rpp);
      const double g = 1.0 / r;
      const double gp = -rp / (r * r);
      const double gpp = -rpp / (r * r) + 2.0 * rp * rp / (r * r * r);
      const Vector2d e_rho(std::cos(th), std::sin(th));
      const Vector2d e_th(-std::sin(th), std::cos(th));
      j.value = rho * g;
      j.gradient = g * e_rho + gp * e_th;
      j.hessian = ((g + gpp) / rho) * (e_th * e_th.transpose());
      break;
    }
  }
  return j;
}

void Gauge::boundary_radius(double theta, double& R, double& Rp, double& Rpp) const {
  if (dim_ != 2) throw std::invalid_argument("boundary_radius: gauge must be two-dimensional");
  const Vector2d u(std::cos(theta), std::sin(theta));
  const Vector2d up(-u[1], u[0]);
  const GaugeJet j = jet(u);
  const double p = j.value;
  const double pp = j.gradient.dot(up);
  const double ppp = up.dot(j.hessian * up) - j.gradient.dot(u);
  R = 1.0 / p;
  Rp = -pp * R * R;
  Rpp = (-ppp + 2.0 * pp * pp * R) * R * R;
}

SigmaSample Gauge::sigma_point(double theta) const {
  double R, Rp, Rpp;
  boundary_radius(theta, R, Rp, Rpp);
  const Vector2d u(std::cos(theta), std::sin(theta));
  const Vector2d up(-u[1], u[0]);
  SigmaSample s;
  s.theta = theta;
  s.point = R * u;
  const double speed2 = R * R + Rp * Rp;
  s.arc_element = std::sqrt(speed2);
  s.tangent = (Rp * u + R * up) / s.arc_element;
  s.curvature = (R * R + 2.0 * Rp * Rp - R * Rpp) / (speed2 * std::sqrt(speed2));
  return s;
}

ConvexityReport convexity_audit(const Gauge& g, int m) {
  if (g.dimension() != 2) throw std::invalid_argument("convexity_audit: 2D gauges only");
  if (m < 64) throw std::invalid_argument("convexity_audit: need m >= 64");
  const double dth = 2.0 * kPi / m;
  std::vector<double> kappa(m), arc(m);
  ConvexityReport rep;
  rep.min_curvature = std::numeric_limits<double>::infinity();
  rep.max_curvature = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    const SigmaSample s = g.sigma_point(i * dth);
    kappa[i] = s.curvature;
    arc[i] = s.arc_element;
    rep.min_curvature = std::min(rep.min_curvature, s.curvature);
    rep.max_curvature = std::max(rep.max_curvature, s.curvature);
  }

  // completely flat arcs: maximal runs with kappa < 1e-12 longer than one cell
  int i = 0;
  while (i < m) {
    if (kappa[i] < 1e-12) {
      int jend = i;
      double len = 0.0;
      while (jend < m && kappa[jend] < 1e-12) {
        len += arc[jend] * dth;
        ++jend;
      }
      if (len > 2.0 * kPi / m) rep.flat_arcs.push_back({i * dth, jend * dth, len});
      i = jend;
    } else {
      ++i;
    }
  }

  // contact order fits near curvature zeros: log kappa ~ (k-2) log|theta - theta0|
  const double zero_thr = std::max(1e-3 * rep.max_curvature, 1e-300);
  const double wmin = std::max(8.0 * dth, 1e-3), wmax = 0.25;
  for (int c = 0; c < m; ++c) {
    const int prev = (c + m - 1) % m, next = (c + 1) % m;
    if (!(kappa[c] <= kappa[prev] && kappa[c] <= kappa[next] && kappa[c] < zero_thr)) continue;
    // parabolic refinement of the zero location
    double th0 = c * dth;
    const double denom = kappa[prev] - 2.0 * kappa[c] + kappa[next];
    if (denom > 0.0) {
      double shift = 0.5 * (kappa[prev] - kappa[next]) / denom;
      shift = std::clamp(shift, -0.5, 0.5);
      th0 += shift * dth;
    }
    ContactOrderFit fit;
    fit.theta_flat = th0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npts = 0;
    std::vector<std::pair<double, double>> pts;
    for (int o = 0; o < m; ++o) {
      double d = std::abs(std::remainder(o * dth - th0, 2.0 * kPi));
      if (d < wmin || d > wmax) continue;
      if (kappa[o] <= 0.0) continue;
      const double x = std::log(d), y = std::log(kappa[o]);
      pts.emplace_back(x, y);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++npts;
    }
    if (npts >= 6 && npts * sxx - sx * sx > 1e-12) {
      const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
      const double icpt = (sy - slope * sx) / npts;
      double maxres = 0.0;
      for (auto& [x, y] : pts) maxres = std::max(maxres, std::abs(y - slope * x - icpt));
      fit.k_estimate = 2.0 + slope;
      fit.fit_residual = maxres;
      fit.determined = maxres < 1.0;
    }
    rep.contact_fits.push_back(fit);
  }
  rep.k_estimate = 2.0;
  for (const auto& f : rep.contact_fits)
    if (f.determined) rep.k_estimate = std::max(rep.k_estimate, f.k_estimate);
  return rep;
}

std::vector<double> flat_angles(const Gauge& g, int scan) {
  std::vector<double> kappa(scan);
  const double dth = 2.0 * kPi / scan;
  double kmax = 0.0;
  for (int i = 0; i < scan; ++i) {
    kappa[i] = g.sigma_point(i * dth).curvature;
    kmax = std::max(kmax, kappa[i]);
  }
  std::vector<double> out;
  for (int i = 0; i < scan; ++i) {
    const double prev = kappa[(i + scan - 1) % scan], next = kappa[(i + 1) % scan];
    if (!(kappa[i] <= prev && kappa[i] <= next && kappa[i] < 1e-3 * kmax)) continue;
    // golden-section refinement of the minimum
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = i * dth - dth, b = i * dth + dth;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = g.sigma_point(c).curvature, fd = g.sigma_point(d).curvature;
    for (int it = 0; it < 60; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = g.sigma_point(c).curvature;
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = g.sigma_point(d).curvature;
      }
    }
    const double th0 = 0.5 * (a + b);
    if (g.sigma_point(th0).curvature < 1e-8 * kmax)
      out.push_back(std::remainder(th0, 2.0 * kPi) < 0 ? std::remainder(th0, 2.0 * kPi) + 2.0 * kPi
                                                       : std::remainder(th0, 2.0 * kPi));
  }
  std::sort(out.begin(), out.end());
  // drop duplicates from adjacent grid minima
  std::vector<double> dedup;
  for (double th : out)
    if (dedup.empty() || th - dedup.back() > 4.0 * dth) dedup.push_back(th);
  return dedup;
}

namespace {

using nlohmann::json;

json spec_to_json(const GaugeSpec& s) {
  json out;
  out["label"] = s.label;
  json params = json::object();
  switch (s.kind) {
    case GaugeKind::Circle:
      out["kind"] = "circle";
      params["dim"] = s.dim;
      break;
    case GaugeKind::LinearImage: {
      out["kind"] = "linear-image";
      json rows = json::array();
      for (int i = 0; i < s.matrix.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < s.matrix.cols(); ++j) row.push_back(s.matrix(i, j));
        rows.push_back(row);
      }
      params["X"] = rows;
      params["base"] = spec_to_json(*s.base);
      break;
    }
    case GaugeKind::Superellipse:
      out["kind"] = "superellipse";
      params["k"] = s.k;
      break;
    case GaugeKind::Radial: {
      out["kind"] = "radial";
      params["cos"] = std::vector<double>(s.cos_coef.data(), s.cos_coef.data() + s.cos_coef.size());
      params["sin"] = std::vector<double>(s.sin_coef.data(), s.sin_coef.data() + s.sin_coef.size());
      break;
    }
  }
  out["params"] = params;
  return out;
}

GaugeSpec spec_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const json params = j.value("params", json::object());
  GaugeSpec s;
  if (kind == "circle") {
    s = GaugeSpec::circle(params.value("dim", 2));
  } else if (kind == "linear-image") {
    GaugeSpec base = spec_from_json(params.at("base"));
    const auto rows = params.at("X");
    const int n = static_cast<int>(rows.size());
    MatrixXd X(n, n);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < n; ++c) X(i, c) = rows.at(i).at(c).get<double>();
    s = GaugeSpec::linear_image(std::move(base), std::move(X));
  } else if (kind == "superellipse") {
    s = GaugeSpec::superellipse(params.at("k").get<int>());
  } else if (kind == "radial") {
    const auto cv = params.at("cos").get<std::vector<double>>();
    std::vector<double> sv;
    if (params.contains("sin")) sv = params.at("sin").get<std::vector<double>>();
    VectorXd c = Eigen::Map<const VectorXd>(cv.data(), cv.size());
    VectorXd ss = Eigen::Map<const VectorXd>(sv.data(), sv.size());
    s = GaugeSpec::radial(std::move(c), std::move(ss));
  } else {
    throw std::invalid_argument("gauge spec: unknown kind '" + kind + "'");
  }
  if (j.contains("label")) s.label = j.at("label").get<std::string>();
  return s;
}

}  // namespace

std::string GaugeSpec::to_json() const { return spec_to_json(*this).dump(); }

GaugeSpec GaugeSpec::from_json(const std::string& text) {
  return spec_from_json(nlohmann::json::parse(text));
}

}  // namespace conelab
