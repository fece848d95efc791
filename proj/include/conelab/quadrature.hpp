#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace conelab {

using Complex = std::complex<double>;

// Gauss-Legendre rule on [-1, 1]. Rules are cached per node count.
struct GLRule {
  Eigen::ArrayXd x;
  Eigen::ArrayXd w;
};

const GLRule& gl_rule(int n);

// Sums in a fixed pairwise order, independent of how the values were produced.
double pairwise_sum(std::span<const double> v);
Complex pairwise_sum(std::span<const Complex> v);

template <class F>
double gl_integrate(F&& f, double a, double b, int n) {
  const GLRule& r = gl_rule(n);
  std::vector<double> terms(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) terms[i] = r.w[i] * f(mid + half * r.x[i]);
  return half * pairwise_sum(terms);
}

template <class F>
Complex gl_integrate_c(F&& f, double a, double b, int n) {
  const GLRule& r = gl_rule(n);
  std::vector<Complex> terms(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) terms[i] = r.w[i] * f(mid + half * r.x[i]);
  return half * pairwise_sum(terms);
}

// Composite rule: `panels` equal panels of an n-point rule.
template <class F>
double gl_composite(F&& f, double a, double b, int panels, int n = 24) {
  std::vector<double> vals(panels);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    vals[p] = gl_integrate(f, a + p * h, a + (p + 1) * h, n);
  return pairwise_sum(vals);
}

template <class F>
Complex gl_composite_c(F&& f, double a, double b, int panels, int n = 24) {
  std::vector<Complex> vals(panels);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    vals[p] = gl_integrate_c(f, a + p * h, a + (p + 1) * h, n);
  return pairwise_sum(vals);
}

// Result of a self-validating quadrature: two consecutive refinements must
// agree within the requested tolerance, otherwise `converged` is false.
struct QuadResult {
  double value = 0.0;
  bool converged = false;
  double err_est = 0.0;
};

struct QuadResultC {
  Complex value{0.0, 0.0};
  bool converged = false;
  double err_est = 0.0;
};

// Wynn epsilon extrapolation of a sequence of partial sums.
Complex wynn_epsilon(std::span<const Complex> partial);

// Deterministic parallel map: fn(i) is evaluated for i in [0, n) on up to
// `workers` threads, each result written to its own slot. The output never
// depends on the worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace conelab
