#include "conelab/oscillatory.hpp"

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


// int_0^hi e^{i phase(w)} w^{-mq} extra(w) dw with the origin singularity
// removed by w = v^3 on [0, min(1/2, hi)] and phase-density-budgeted panels
// on the rest. `dmax` bounds |phase'| on [1/2, hi].
template <class Phase, class Extra>
Complex singular_compact(Phase&& phase, Extra&& extra, double mq, double hi, double lam,
                         double dmax) {
  const double cut = std::min(0.5, hi);
  const int p1 = std::max(12, static_cast<int>(2.0 * lam * cut / (2.0 * kPi)));
  Complex out = gl_composite_c(
      [&](double v) {
        const double w = v * v * v;
        return std::exp(kI * phase(w)) * std::pow(w, -mq) * extra(w) * 3.0 * v * v;
      },
      0.0, std::cbrt(cut), p1);
  if (hi > cut) {
    const int p2 = std::max(12, static_cast<int>(12 + 2.0 * dmax * (hi - cut) / (2.0 * kPi)));
    out += gl_composite_c(
        [&](double w) { return std::exp(kI * phase(w)) * std::pow(w, -mq) * extra(w); }, cut, hi,
        p2);
  }
  return out;
}

void check_args(double alpha, double s, int k, double q, double c) {
  if (k < 3) throw std::invalid_argument("oscillatory_g: k >= 3 required");
  if (!(c < 0.0)) throw std::invalid_argument("oscillatory_g: c < 0 required");
  if (!(alpha >= 1e-3 && alpha <= 1.0))
    throw std::invalid_argument("oscillatory_g: alpha in [1e-3, 1] required");
  if (!(s >= 1.0 && s <= 1.2)) throw std::invalid_argument("oscillatory_g: s in [1, 1.2] required");
  if (!(q > 1.0)) throw std::invalid_argument("oscillatory_g: q > 1 required");
}

// route (b): original variable, compact part [0, T0] with the singular
// endpoint removed by t = v^3, then a ray rotated into the decaying sector.
Complex g_original_route(double alpha, double s, int k, double mq, double c) {
  const double tstar = std::pow(-1.0 / (c * k * alpha), 1.0 / (k - 1));
  const double t0 = 4.0 * tstar;
  const auto phase = [&](double t) { return 2.0 * kPi * s * (t + c * alpha * std::pow(t, k)); };
  const double dmax = 2.0 * kPi * s * (1.0 + std::abs(c) * alpha * k * std::pow(t0, k - 1));
  const Complex compact = singular_compact(phase, [](double) { return 1.0; }, mq, t0,
                                           2.0 * kPi * s, dmax);

  const double beta = kPi / (2.0 * k);
  const Complex e = std::exp(-kI * beta);
  const double dphi = std::abs(2.0 * kPi * s * (1.0 + c * alpha * k * std::pow(t0, k - 1)));
  Complex total{0.0, 0.0};
  double a0 = 0.0, panel = 8.0 / (dphi * std::sin(beta));
  for (int i = 0; i < 120; ++i) {
    const double b0 = a0 + panel;
    const auto fr = [&](double rho) {
      const Complex t = t0 + rho * e;
      const Complex ph = 2.0 * kPi * s * (t + c * alpha * cipow(t, k));
      return std::exp(kI * ph) * std::pow(t, -mq);
    };
    total += gl_integrate_c(fr, a0, b0, 32);
    a0 = b0;
    panel *= 1.4;
    const Complex tend = t0 + a0 * e;
    const double imph = -2.0 * kPi * s * (tend + c * alpha * cipow(tend, k)).imag();
    if (imph > 70.0) break;
  }
  return compact + e * total;
}

// route (a): compact-phase form a^{1-mq} int_0^inf e^{i lam Phi(w)} w^{-mq} dw
// with Phi(w) = w - w^k/k; tail split at half-period phase decrements and
// accelerated with Wynn epsilon.
Complex g_compact_phase_route(double alpha, double s, int k, double mq, double c) {
  const double a = std::pow(-1.0 / (c * k * alpha), 1.0 / (k - 1));
  const double lam = 2.0 * kPi * s * a;
  const double w0 = 3.0;
  const auto phi = [&](double w) { return w - std::pow(w, k) / k; };
  const auto dphi = [&](double w) { return 1.0 - std::pow(w, k - 1); };
  const double dmax = lam * (1.0 + std::pow(w0, k - 1));
  const Complex compact = singular_compact([&](double w) { return lam * phi(w); },
                                           [](double) { return 1.0; }, mq, w0, lam, dmax);

  std::vector<Complex> partial;
  Complex sum{0.0, 0.0};
  double wc = w0;
  for (int cell = 0; cell < 36; ++cell) {
    const double target = phi(wc) - kPi / lam;
    double wn = wc;
    for (int it = 0; it < 80; ++it) {
      const double step = (phi(wn) - target) / dphi(wn);
      wn -= step;
      if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(wn))) break;
    }
    sum += gl_integrate_c(
        [&](double w) { return std::exp(kI * (lam * phi(w))) * std::pow(w, -mq); }, wc, wn, 16);
    partial.push_back(sum);
    wc = wn;
  }
  const Complex tail = wynn_epsilon(partial);
  return std::pow(a, 1.0 - mq) * (compact + tail);
}

}  // namespace

OscillatoryG oscillatory_g(double alpha, double s, int k, double q, double c, double tol) {
  if (c == 0.0) c = -1.0 / factorial(k);
  check_args(alpha, s, k, q, c);
  const double qprime = q / (q - 1.0);
  const double mq = 1.0 / qprime;
  OscillatoryG out;
  out.route_a = g_compact_phase_route(alpha, s, k, mq, c);
  out.route_b = g_original_route(alpha, s, k, mq, c);
  out.disagreement = std::abs(out.route_a - out.route_b) / std::abs(out.route_b);
  out.converged = out.disagreement <= tol;
  out.value = out.route_b;
  return out;
}

GPieces oscillatory_g_pieces(double alpha, double s, int k, double q, double c, double eta) {
  if (c == 0.0) c = -1.0 / factorial(k);
  check_args(alpha, s, k, q, c);
  if (!(eta > 0.0 && eta < 0.5)) throw std::invalid_argument("pieces: eta in (0, 1/2)");
  const double qprime = q / (q - 1.0);
  const double mq = 1.0 / qprime;
  const double a = std::pow(-1.0 / (c * k * alpha), 1.0 / (k - 1));
  const double lam = 2.0 * kPi * s * a;
  const auto phi = [&](double w) { return w - std::pow(w, k) / k; };
  const auto dphi = [&](double w) { return 1.0 - std::pow(w, k - 1); };
  // cosine-taper bump: 1 on [-eta, eta], 0 outside [-2 eta, 2 eta]
  const auto bump = [&](double v) {
    const double av = std::abs(v);
    if (av <= eta) return 1.0;
    if (av >= 2.0 * eta) return 0.0;
    const double x = (av - eta) / eta;
    return 0.5 * (1.0 + std::cos(kPi * x));
  };

  GPieces out;
  out.lambda = lam;
  out.prefactor = std::pow(a, 1.0 - mq);

  const double d1 = lam * std::max(std::abs(dphi(1.0 - 2.0 * eta)), std::abs(dphi(1.0 + 2.0 * eta)));
  out.near_critical =
      out.prefactor * gl_composite_c(
                          [&](double w) {
                            return std::exp(kI * (lam * phi(w))) * bump(w - 1.0) * std::pow(w, -mq);
                          },
                          1.0 - 2.0 * eta, 1.0 + 2.0 * eta,
                          std::max(16, static_cast<int>(12 + 2.0 * d1 * 4.0 * eta / (2.0 * kPi))));

  out.cut_origin = out.prefactor *
                   singular_compact([&](double w) { return lam * phi(w); },
                                    [&](double w) { return 1.0 - bump(w - 1.0); }, mq, 1.0 - eta,
                                    lam, lam * (1.0 + std::pow(1.0 - eta, k - 1)));

  const double w0 = 3.0;
  const double d3 = lam * std::abs(dphi(w0));
  Complex piece3 = gl_composite_c(
      [&](double w) {
        return std::exp(kI * (lam * phi(w))) * (1.0 - bump(w - 1.0)) * std::pow(w, -mq);
      },
      1.0 + eta, w0,
      std::max(16, static_cast<int>(12 + 2.0 * d3 * (w0 - 1.0 - eta) / (2.0 * kPi))));
  std::vector<Complex> partial;
  Complex sum{0.0, 0.0};
  double wc = w0;
  for (int cell = 0; cell < 36; ++cell) {
    const double target = phi(wc) - kPi / lam;
    double wn = wc;
    for (int it = 0; it < 80; ++it) {
      const double step = (phi(wn) - target) / dphi(wn);
      wn -= step;
      if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(wn))) break;
    }
    sum += gl_integrate_c(
        [&](double w) { return std::exp(kI * (lam * phi(w))) * std::pow(w, -mq); }, wc, wn, 16);
    partial.push_back(sum);
    wc = wn;
  }
  piece3 += wynn_epsilon(partial);
  out.cut_infinity = out.prefactor * piece3;
  return out;
}

StationaryPhaseFit stationary_phase_check(int k, double q, const std::vector<double>& alpha_grid,
                                          const std::vector<double>& s_grid, double c) {
  if (alpha_grid.size() < 4) throw std::invalid_argument("stationary_phase_check: need >= 4 alphas");
  if (s_grid.empty()) throw std::invalid_argument("stationary_phase_check: need an s grid");
  for (double a : alpha_grid)
    if (a < 0.01 - 1e-15 || a > 0.05 + 1e-15)
      throw std::invalid_argument("stationary_phase_check: alpha grid must lie in [0.01, 0.05]");
  for (double s : s_grid)
    if (s < 1.0 || s > 1.1)
      throw std::invalid_argument("stationary_phase_check: s grid must lie in [1, 1.1]");
  if (c == 0.0) c = -1.0 / factorial(k);
  const double qprime = q / (q - 1.0);

  StationaryPhaseFit out;
  out.oracle_slope = -(1.0 / (k - 1.0)) * (0.5 - 1.0 / qprime);
  std::vector<double> xs, ys;
  for (const double alpha : alpha_grid) {
    double acc = 0.0;
    int n = 0;
    for (const double s : s_grid) {
      const OscillatoryG g = oscillatory_g(alpha, s, k, q, c);
      out.rows.push_back({alpha, s, g.value, g.converged});
      if (!g.converged) continue;
      acc += std::log(std::abs(g.value) * std::sqrt(s));
      ++n;
    }
    if (n == 0) continue;
    xs.push_back(std::log(alpha));
    ys.push_back(acc / n);
  }
  if (xs.size() < 4) return out;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double n = static_cast<double>(xs.size());
  const double det = n * sxx - sx * sx;
  out.fitted_slope = (n * sxy - sx * sy) / det;
  const double icpt = (sy - out.fitted_slope * sx) / n;
  for (size_t i = 0; i < xs.size(); ++i)
    out.fit_residual = std::max(out.fit_residual, std::abs(ys[i] - out.fitted_slope * xs[i] - icpt));
  out.fit_accepted = out.fit_residual <= 0.15;
  return out;
}

}  // namespace conelab
