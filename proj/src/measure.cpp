#include "conelab/measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conelab {

namespace {

constexpr double kPi = std::numbers::pi;

// Cached per-angle slice data shared by the quadrature drivers.
struct SliceNode {
  double theta, gl_weight;
  Vector2d unit;     // ray direction
  Vector2d point;    // Sigma point R*unit
  double radius;     // R(theta)
  double speed;      // |P'(theta)|
  double grad_norm;  // |grad phi| on the ray
  double weight;     // w on the ray (degree-0)
  double kappa;
};

std::vector<SliceNode> slice_nodes(const Gauge& g, const ThetaGrid& grid, WeightConvention conv,
                                   bool need_weight) {
  std::vector<SliceNode> out(grid.theta.size());
  for (size_t i = 0; i < grid.theta.size(); ++i) {
    const double th = grid.theta[i];
    SliceNode nd;
    nd.theta = th;
    nd.gl_weight = grid.weight[i];
    double R, Rp, Rpp;
    g.boundary_radius(th, R, Rp, Rpp);
    nd.unit = Vector2d(std::cos(th), std::sin(th));
    nd.point = R * nd.unit;
    nd.radius = R;
    nd.speed = std::hypot(R, Rp);
    const GaugeJet j = g.jet(VectorXd(nd.point));
    nd.grad_norm = j.gradient.norm();
    if (need_weight) {
      const double sign = (conv == WeightConvention::PositiveAdjugate) ? 1.0 : -1.0;
      nd.weight = std::max(0.0, sign * j.gradient.dot(adjugate(j.hessian) * j.gradient) * j.value);
    } else {
      nd.weight = 0.0;
    }
    const double sp2 = R * R + Rp * Rp;
    nd.kappa = (R * R + 2.0 * Rp * Rp - R * Rpp) / (sp2 * std::sqrt(sp2));
    out[i] = nd;
  }
  return out;
}

}  // namespace

ThetaGrid theta_grid(double lo, double hi, const std::vector<double>& singular, int nodes) {
  // panel edges: interval ends plus interior singular angles; each panel end
  // that sits on a singular angle gets the cubic substitution
  std::vector<double> edges{lo};
  for (double s : singular)
    if (s > lo + 1e-13 && s < hi - 1e-13) edges.push_back(s);
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());

  const auto is_singular = [&](double th) {
    for (double s : singular)
      if (std::abs(th - s) < 1e-12) return true;
    return false;
  };

  ThetaGrid out;
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    double a = edges[p], b = edges[p + 1];
    const bool sing_a = is_singular(a), sing_b = is_singular(b);
    struct Half {
      double from, to;  // integration runs from `from` (regular) toward `to`
      bool cluster;     // cluster nodes toward `to`
    };
    std::vector<Half> halves;
    if (sing_a && sing_b) {
      const double mid = 0.5 * (a + b);
      halves.push_back({mid, a, true});
      halves.push_back({mid, b, true});
    } else if (sing_a) {
      halves.push_back({b, a, true});
    } else if (sing_b) {
      halves.push_back({a, b, true});
    } else {
      halves.push_back({a, b, false});
    }
    for (const Half& h : halves) {
      const double span = std::abs(h.to - h.from);
      const int n = std::max(12, static_cast<int>(nodes * span / std::max(hi - lo, 1e-12)));
      const GLRule& rule = gl_rule(n);
      for (int i = 0; i < n; ++i) {
        const double v = 0.5 * (rule.x[i] + 1.0);  // in (0, 1)
        const double wv = 0.5 * rule.w[i];
        if (h.cluster) {
          // theta = to - (to - from) v^3 clusters nodes at the singular end
          const double dir = h.to - h.from;
          out.theta.push_back(h.to - dir * v * v * v);
          out.weight.push_back(wv * 3.0 * v * v * std::abs(dir));
        } else {
          out.theta.push_back(h.from + (h.to - h.from) * v);
          out.weight.push_back(wv * span);
        }
      }
    }
  }
  return out;
}

ThetaGrid theta_grid(const Gauge& g, int nodes) {
  // duplicate the flat angles by one period so an angle at 0 also marks the
  // 2 pi endpoint
  std::vector<double> sing = flat_angles(g);
  const size_t n = sing.size();
  for (size_t i = 0; i < n; ++i) {
    sing.push_back(sing[i] + 2.0 * kPi);
    sing.push_back(sing[i] - 2.0 * kPi);
  }
  return theta_grid(0.0, 2.0 * kPi, sing, nodes);
}

WeightedConeMeasure WeightedConeMeasure::affine(const Gauge& g, Support s) {
  WeightedConeMeasure m;
  m.gauge = &g;
  m.exponent = 1.0 / 3.0;
  m.support = s;
  return m;
}

WeightedConeMeasure WeightedConeMeasure::surface(const Gauge& g) {
  WeightedConeMeasure m;
  m.gauge = &g;
  m.exponent = 0.0;
  m.support = Support::SurfaceOnS;
  return m;
}

QuadResult plane_integral(const PlaneFn& f, const Gauge& g, double phi_min, double phi_max,
                          const QuadScheme& scheme) {
  if (g.dimension() != 2) throw std::invalid_argument("plane_integral: 2D gauges only");
  if (scheme.radial_nodes < 16 || scheme.angular_nodes < 16)
    throw std::invalid_argument("plane_integral: need >= 16 nodes per direction");
  const auto run = [&](int nr, int nth) {
    const GLRule& rth = gl_rule(nth);
    std::vector<double> rays(nth);
    for (int i = 0; i < nth; ++i) {
      const double th = kPi * (rth.x[i] + 1.0);
      const Vector2d u(std::cos(th), std::sin(th));
      const double p = g.value(VectorXd(u));  // phi on the unit ray
      const double r0 = phi_min / p, r1 = phi_max / p;
      rays[i] = rth.w[i] * kPi *
                gl_integrate([&](double rho) { return f(rho * u) * rho; }, r0, r1, nr);
    }
    return pairwise_sum(rays);
  };
  QuadResult res;
  const double coarse = run(scheme.radial_nodes, scheme.angular_nodes);
  const double fine = run(2 * scheme.radial_nodes, 2 * scheme.angular_nodes);
  res.value = fine;
  res.err_est = std::abs(fine - coarse);
  res.converged = res.err_est <= scheme.tol * std::max(1.0, std::abs(fine));
  return res;
}

QuadResult coarea_integral(const PlaneFn& f, const Gauge& g, double t_min, double t_max,
                           const QuadScheme& scheme) {
  if (g.dimension() != 2) throw std::invalid_argument("coarea_integral: 2D gauges only");
  if (scheme.radial_nodes < 16 || scheme.angular_nodes < 16)
    throw std::invalid_argument("coarea_integral: need >= 16 nodes per direction");
  const auto run = [&](int nt, int nth) {
    const auto nodes = slice_nodes(g, theta_grid(0.0, 2.0 * kPi, {}, nth),
                                   WeightConvention::PositiveAdjugate, false);
    // int_t int_{Sigma_t} f dsigma_t/|grad phi| dt ; dsigma_t = t * speed dtheta
    std::vector<double> terms(nt);
    const GLRule& rt = gl_rule(nt);
    for (int a = 0; a < nt; ++a) {
      const double t = 0.5 * (t_min + t_max) + 0.5 * (t_max - t_min) * rt.x[a];
      std::vector<double> ring(nodes.size());
      for (size_t i = 0; i < nodes.size(); ++i) {
        const SliceNode& nd = nodes[i];
        ring[i] = nd.gl_weight * f(t * nd.point) * t * nd.speed / nd.grad_norm;
      }
      terms[a] = rt.w[a] * pairwise_sum(ring);
    }
    return 0.5 * (t_max - t_min) * pairwise_sum(terms);
  };
  QuadResult res;
  const double coarse = run(scheme.radial_nodes, scheme.angular_nodes);
  const double fine = run(2 * scheme.radial_nodes, 2 * scheme.angular_nodes);
  res.value = fine;
  res.err_est = std::abs(fine - coarse);
  res.converged = res.err_est <= scheme.tol * std::max(1.0, std::abs(fine));
  return res;
}

QuadResult cone_norm(const ConeFn& u, const WeightedConeMeasure& mu, double q,
                     const QuadScheme& scheme) {
  if (q < 1.0) throw std::invalid_argument("cone_norm: q >= 1 required");
  const Gauge& g = *mu.gauge;
  if (g.dimension() != 2) throw std::invalid_argument("cone_norm: 2D gauges only");
  double t0 = 1.0, t1 = 2.0;
  if (mu.support == WeightedConeMeasure::Support::FullCone) {
    t0 = 0.0;
    t1 = mu.t_max;
  }
  const auto run = [&](int nt, int nth) {
    const auto nodes = slice_nodes(g, theta_grid(g, nth), mu.conv, true);
    const GLRule& rt = gl_rule(nt);
    std::vector<double> terms(nt);
    for (int a = 0; a < nt; ++a) {
      const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * rt.x[a];
      std::vector<double> ring(nodes.size());
      for (size_t i = 0; i < nodes.size(); ++i) {
        const SliceNode& nd = nodes[i];
        // dxi = t R^2 dt dtheta along the slice parametrization
        double dens = std::pow(nd.weight, mu.exponent) * t * nd.radius * nd.radius;
        if (mu.support == WeightedConeMeasure::Support::FullCone) dens /= t;
        if (mu.support == WeightedConeMeasure::Support::SurfaceOnS)
          dens *= std::sqrt(1.0 + nd.grad_norm * nd.grad_norm);
        const double val = std::abs(u(t * nd.point, t));
        ring[i] = nd.gl_weight * std::pow(val, q) * dens;
      }
      terms[a] = rt.w[a] * pairwise_sum(ring);
    }
    return 0.5 * (t1 - t0) * pairwise_sum(terms);
  };
  QuadResult res;
  const double coarse = run(scheme.radial_nodes, scheme.angular_nodes);
  const double fine = run(2 * scheme.radial_nodes, 2 * scheme.angular_nodes);
  res.value = std::pow(fine, 1.0 / q);
  res.err_est = std::abs(std::pow(std::max(coarse, 0.0), 1.0 / q) - res.value);
  res.converged = res.err_est <= scheme.tol * std::max(1.0, std::abs(res.value));
  return res;
}

SublevelHistogram sublevel_histogram(const Gauge& g, int nodes, WeightConvention conv) {
  if (g.dimension() != 2) throw std::invalid_argument("sublevel_histogram: 2D gauges only");
  SublevelHistogram h;
  const double dth = 2.0 * kPi / nodes;
  const double sign = (conv == WeightConvention::PositiveAdjugate) ? 1.0 : -1.0;
  for (int i = 0; i < nodes; ++i) {
    const double th = (i + 0.5) * dth;
    double R, Rp, Rpp;
    g.boundary_radius(th, R, Rp, Rpp);
    const Vector2d point(R * std::cos(th), R * std::sin(th));
    const GaugeJet j = g.jet(VectorXd(point));
    const double w =
        std::max(0.0, sign * j.gradient.dot(adjugate(j.hessian) * j.gradient) * j.value);
    const double arc = std::hypot(R, Rp) * dth;
    const double area = 1.5 * R * R * dth;  // int_1^2 t dt = 3/2 per unit angle
    h.total_arclength += arc;
    if (w < 1e-300) {
      h.flat_arclength += arc;
      continue;
    }
    h.w_max = std::max(h.w_max, w);
    // nudge guards against roundoff exactly at dyadic boundaries
    const int bin = static_cast<int>(std::floor(std::log2(w) + 1e-12));
    h.sigma_arclength[bin] += arc;
    h.delta_area[bin] += area;
  }
  return h;
}

double sublevel_measure(const Gauge& g, int j, WeightConvention conv) {
  const SublevelHistogram h = sublevel_histogram(g, 1 << 16, conv);
  const auto it = h.sigma_arclength.find(j);
  return it == h.sigma_arclength.end() ? 0.0 : it->second;
}

SlopeFit sublevel_slope_fit(const SublevelHistogram& hist, int nbins) {
  SlopeFit fit;
  if (hist.sigma_arclength.empty() || hist.w_max <= 0.0) return fit;
  const int j_top = static_cast<int>(std::floor(std::log2(hist.w_max)));
  std::vector<std::pair<double, double>> pts;
  for (auto it = hist.sigma_arclength.rbegin(); it != hist.sigma_arclength.rend(); ++it) {
    if (it->first > j_top - 3) continue;  // crossover bins near max w
    if (it->second <= 0.0) continue;
    pts.emplace_back(static_cast<double>(it->first), std::log2(it->second));
    if (static_cast<int>(pts.size()) >= nbins) break;
  }
  if (pts.size() < 4) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double det = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (auto& [x, y] : pts)
    fit.max_residual = std::max(fit.max_residual, std::abs(y - fit.slope * x - fit.intercept));
  fit.bins_used = static_cast<int>(pts.size());
  fit.determined = true;
  return fit;
}

}  // namespace conelab
