#include "conelab/sogge.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Complex cipow(Complex z, int n) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < n; ++i) out *= z;
  return out;
}

}  // namespace

double SoggeParams::q() const { return p_prime() / (k + 1.0); }
double SoggeParams::p_prime() const { return p / (p - 1.0); }
double SoggeParams::q_prime() const {
  const double qq = q();
  return qq / (qq - 1.0);
}
double SoggeParams::c_value() const { return c == 0.0 ? -1.0 / factorial(k) : c; }

void SoggeParams::validate() const {
  if (k < 3) throw std::invalid_argument("sogge: k >= 3 required");
  if (!(p > 1.0) || !(p < (k + 2.0) / (k + 1.0)))
    throw std::invalid_argument("sogge: need 1 < p < (k+2)/(k+1)");
  if (!(eps > 0.0 && eps <= 0.1) || !(delta > 0.0 && delta <= 0.1))
    throw std::invalid_argument("sogge: need eps, delta in (0, 0.1]");
  if (!(c_value() < 0.0)) throw std::invalid_argument("sogge: gamma^{(k)}(0) must be negative");
  if (q() <= 1.0) throw std::invalid_argument("sogge: derived q must exceed 1");
}

double sogge_f(const SoggeParams& sp, double s, double t) {
  if (s < 1.0 || s > 1.0 + sp.eps) return 0.0;
  if (!(t > 0.0) || t >= sp.delta) return 0.0;
  return std::pow(t, -1.0 / sp.q_prime()) * std::pow(std::abs(std::log(t)), -1.0 / sp.p_prime());
}

QuadResultC sogge_T(const SoggeParams& sp, double x, double y, double r) {
  sp.validate();
  if (std::abs(x) > 1e3 || std::abs(y) > 1e3 || std::abs(r) > 1e3)
    throw std::invalid_argument("sogge_T: oscillation budget exceeded");
  const double mq = 1.0 / sp.q_prime();
  const double mp = 1.0 / sp.p_prime();
  const double cc = sp.c_value();
  const auto gamma = [&](double t) { return sp.gamma0 + t + cc * std::pow(t, sp.k); };
  // t-integral with the endpoint singularity removed by t = v^3; log weight
  // stays integrable since |log t|^{-1/p'} -> 0
  const auto run = [&](double refine) {
    const double budget = std::abs(x) + std::abs(y) + std::abs(r) + 8.0;
    const int ns = static_cast<int>(refine * (24 + 2.0 * budget));
    const int panels = static_cast<int>(refine * (12 + budget * sp.delta));
    const GLRule& rs = gl_rule(ns);
    std::vector<Complex> terms(ns);
    for (int i = 0; i < ns; ++i) {
      const double s = 1.0 + 0.5 * sp.eps * (rs.x[i] + 1.0);
      const auto ft = [&](double v) {
        const double t = v * v * v;
        const double phase = 2.0 * kPi * s * (x * t + y * gamma(t) + r);
        const double amp =
            std::pow(t, -mq) * std::pow(std::abs(std::log(t)), -mp) * 3.0 * v * v;
        return std::exp(kI * phase) * amp;
      };
      terms[i] = rs.w[i] * gl_composite_c(ft, 0.0, std::cbrt(sp.delta), panels);
    }
    return 0.5 * sp.eps * pairwise_sum(terms);
  };
  QuadResultC res;
  const Complex coarse = run(1.0);
  const Complex fine = run(1.7);
  res.value = fine;
  res.err_est = std::abs(fine - coarse);
  res.converged = res.err_est <= 1e-7 * std::max(1.0, std::abs(fine));
  return res;
}

Complex sogge_I(const SoggeParams& sp, double u, double alpha, double s) {
  const double mq = 1.0 / sp.q_prime();
  const double mp = 1.0 / sp.p_prime();
  const double cc = sp.c_value();
  const int k = sp.k;
  const double lnu = std::log(u);
  const double tend = u * sp.delta;
  // weight (1 - log t / log u)^{-1/p'}; real-positive on the contour
  const auto wfac = [&](Complex t) { return std::pow(1.0 - std::log(t) / lnu, -mp); };
  const auto phase = [&](Complex t) { return 2.0 * kPi * s * (t + cc * alpha * cipow(t, k)); };

  double tstar = std::pow(-1.0 / (cc * k * alpha), 1.0 / (k - 1));
  double t0 = std::min(4.0 * tstar, 0.5 * tend);
  const double pv =
      std::abs(phase(tstar).real()) + std::abs((phase(t0) - phase(tstar)).real()) + 20.0;
  const int panels = std::max(8, static_cast<int>(1.5 * pv / (2.0 * kPi)));
  const auto fc = [&](double v) {
    const double t = v * v * v;
    return std::exp(kI * phase(t)) * std::pow(t, -mq) * wfac(t) * 3.0 * v * v;
  };
  const Complex compact = gl_composite_c(fc, 0.0, std::cbrt(t0), panels);

  // tail over [t0, tend]: difference of two rays rotated into the sector
  // where Im(phase) grows
  const double beta = kPi / (2.0 * k);
  const Complex e = std::exp(-kI * beta);
  const auto ray = [&](double tanchor) {
    const double dphi =
        std::abs(2.0 * kPi * s * (1.0 + cc * alpha * k * std::pow(tanchor, k - 1)));
    Complex total{0.0, 0.0};
    double a0 = 0.0, panel = 8.0 / (dphi * std::sin(beta));
    for (int i = 0; i < 140; ++i) {
      const double b0 = a0 + panel;
      const auto fr = [&](double rho) {
        const Complex t = tanchor + rho * e;
        return std::exp(kI * phase(t)) * std::pow(t, -mq) * wfac(t);
      };
      total += gl_integrate_c(fr, a0, b0, 32);
      a0 = b0;
      panel *= 1.4;
      const double imph = -phase(tanchor + a0 * e).imag();
      if (imph > 70.0) break;
    }
    return e * total;
  };
  return compact + ray(t0) - ray(tend);
}

Complex sogge_J(const SoggeParams& sp, double u, double alpha, double r) {
  const int ns = 24;
  const GLRule& rs = gl_rule(ns);
  std::vector<Complex> terms(ns);
  for (int i = 0; i < ns; ++i) {
    const double s = 1.0 + 0.5 * sp.eps * (rs.x[i] + 1.0);
    terms[i] = rs.w[i] * sogge_I(sp, u, alpha, s) * std::exp(kI * (2.0 * kPi * s * r));
  }
  return 0.5 * sp.eps * pairwise_sum(terms);
}

Complex sogge_g_integral(const SoggeParams& sp, double alpha) {
  const int ns = 24;
  const GLRule& rs = gl_rule(ns);
  std::vector<Complex> terms(ns);
  for (int i = 0; i < ns; ++i) {
    const double s = 1.0 + 0.5 * sp.eps * (rs.x[i] + 1.0);
    const OscillatoryG g = oscillatory_g(alpha, s, sp.k, sp.q(), sp.c_value());
    terms[i] = rs.w[i] * g.value;
  }
  return 0.5 * sp.eps * pairwise_sum(terms);
}

SoggeWindows sogge_prescan(const SoggeParams& sp, double alpha_lo, double alpha_hi) {
  sp.validate();
  // |int g ds| on a geometric grid; slide a window of ratio 1.25 and keep the
  // one with the best worst case
  const int n = 33;
  std::vector<double> alphas(n), m(n);
  for (int i = 0; i < n; ++i) {
    alphas[i] = alpha_lo * std::pow(alpha_hi / alpha_lo, static_cast<double>(i) / (n - 1));
    m[i] = std::abs(sogge_g_integral(sp, alphas[i]));
  }
  SoggeWindows win;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    double floor_val = m[i];
    int j = i;
    while (j + 1 < n && alphas[j + 1] <= 1.25 * alphas[i]) {
      ++j;
      floor_val = std::min(floor_val, m[j]);
    }
    if (j > i && floor_val > best) {
      best = floor_val;
      win.alpha1 = alphas[i];
      win.alpha2 = alphas[j];
      win.g_floor = floor_val;
    }
  }
  // r2 small enough that the modulation |1 - e^{2 pi i s r}| stays under
  // half the floor: 2 pi (1+eps) r2 * mean|g| * eps <= floor/2
  double gbar = 0.0;
  for (int i = 0; i < n; ++i)
    if (alphas[i] >= win.alpha1 && alphas[i] <= win.alpha2) {
      double acc = 0.0;
      const int ms = 8;
      for (int a = 0; a < ms; ++a) {
        const double s = 1.0 + sp.eps * (a + 0.5) / ms;
        acc += std::abs(oscillatory_g(alphas[i], s, sp.k, sp.q(), sp.c_value()).value);
      }
      gbar = std::max(gbar, acc / ms * sp.eps);
    }
  win.r2 = win.g_floor / (4.0 * kPi * (1.0 + sp.eps) * std::max(gbar, 1e-12));
  return win;
}

namespace {

double loglog(double u) { return std::log(std::log(u)); }

// nodes of the (u, alpha, r) box quadrature in the loglog(u) variable
struct BoxQuad {
  std::vector<double> uv, uw;  // loglog-u nodes and weights on [llR, llU]
  std::vector<double> av, aw;
  std::vector<double> rv, rw;
};

BoxQuad box_quad(const SoggeWindows& win, double u_min, double u_max, int u_nodes_per_decade,
                 int alpha_nodes, int r_nodes) {
  BoxQuad b;
  const double l0 = loglog(u_min), l1 = loglog(u_max);
  const int nu = std::max(4, static_cast<int>(u_nodes_per_decade *
                                              (std::log10(u_max) - std::log10(u_min))));
  const GLRule& ru = gl_rule(nu);
  for (int i = 0; i < nu; ++i) {
    b.uv.push_back(0.5 * (l0 + l1) + 0.5 * (l1 - l0) * ru.x[i]);
    b.uw.push_back(0.5 * (l1 - l0) * ru.w[i]);
  }
  const GLRule& ra = gl_rule(alpha_nodes);
  for (int i = 0; i < alpha_nodes; ++i) {
    b.av.push_back(0.5 * (win.alpha1 + win.alpha2) + 0.5 * (win.alpha2 - win.alpha1) * ra.x[i]);
    b.aw.push_back(0.5 * (win.alpha2 - win.alpha1) * ra.w[i]);
  }
  const GLRule& rr = gl_rule(r_nodes);
  for (int i = 0; i < r_nodes; ++i) {
    b.rv.push_back(0.5 * win.r2 + 0.5 * win.r2 * rr.x[i]);
    b.rw.push_back(0.5 * win.r2 * rr.w[i]);
  }
  return b;
}

}  // namespace

DivergenceScan sogge_divergence_scan(const SoggeParams& sp, const std::vector<double>& u_max_grid,
                                     const SoggeWindows& win, int u_nodes_per_decade,
                                     int alpha_nodes, int r_nodes) {
  sp.validate();
  if (u_max_grid.size() < 2) throw std::invalid_argument("divergence scan: need >= 2 grid points");
  const double pprime = sp.p_prime();
  DivergenceScan out;
  out.min_abs_j = std::numeric_limits<double>::infinity();
  const double u_min = u_max_grid.front();
  double prev_mass = 0.0;
  std::vector<double> masses;
  for (size_t gi = 1; gi < u_max_grid.size(); ++gi) {
    const BoxQuad b = box_quad(win, u_max_grid[gi - 1], u_max_grid[gi], u_nodes_per_decade,
                               alpha_nodes, r_nodes);
    double mass = prev_mass;
    for (size_t iu = 0; iu < b.uv.size(); ++iu) {
      const double u = std::exp(std::exp(b.uv[iu]));
      for (size_t ia = 0; ia < b.av.size(); ++ia)
        for (size_t ir = 0; ir < b.rv.size(); ++ir) {
          const double aj = std::abs(sogge_J(sp, u, b.av[ia], b.rv[ir]));
          out.min_abs_j = std::min(out.min_abs_j, aj);
          mass += b.uw[iu] * b.aw[ia] * b.rw[ir] * std::pow(aj, pprime);
        }
    }
    out.rows.push_back({u_max_grid[gi], mass, out.min_abs_j});
    masses.push_back(mass);
    prev_mass = mass;
  }
  out.a_witness = out.min_abs_j;
  out.masses_increasing = true;
  double last = 0.0;
  for (const double m : masses) {
    if (m <= last) out.masses_increasing = false;
    last = m;
  }
  // decade increments: consecutive differences when the grid is in decades
  std::vector<double> inc;
  inc.push_back(masses[0]);
  for (size_t i = 1; i < masses.size(); ++i) inc.push_back(masses[i] - masses[i - 1]);
  for (size_t i = 1; i < inc.size(); ++i)
    out.decade_increment_ratios.push_back(inc[i] / inc[i - 1]);
  (void)u_min;
  return out;
}

double divergence_mass_selftest(const SoggeWindows& win, double u_min, double u_max,
                                int u_nodes_per_decade, int alpha_nodes, int r_nodes) {
  const BoxQuad b = box_quad(win, u_min, u_max, u_nodes_per_decade, alpha_nodes, r_nodes);
  double mass = 0.0;
  for (size_t iu = 0; iu < b.uv.size(); ++iu)
    for (size_t ia = 0; ia < b.av.size(); ++ia)
      for (size_t ir = 0; ir < b.rv.size(); ++ir) mass += b.uw[iu] * b.aw[ia] * b.rw[ir];
  return mass;
}

}  // namespace conelab
