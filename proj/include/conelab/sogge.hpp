#pragma once

#include <vector>

#include "conelab/oscillatory.hpp"

namespace conelab {

// Parameters of the appendix counterexample: f(s,t) = t^{-1/q'} |log t|^{-1/p'}
// on [1, 1+eps] x (0, delta), generating curve gamma with
// gamma''(0) = ... = gamma^{(k-1)}(0) = 0 and gamma^{(k)}(0) < 0.
struct SoggeParams {
  int k = 3;
  double p = 1.2;          // q = p'/(k+1)
  double eps = 0.1;
  double delta = 0.1;
  double gamma0 = 1.0;     // gamma(0)
  double c = 0.0;          // gamma^{(k)}(0)/k!; defaults to -1/k!

  double q() const;
  double q_prime() const;
  double p_prime() const;
  double c_value() const;  // resolved c
  void validate() const;
};

// f(s, t) itself.
double sogge_f(const SoggeParams& sp, double s, double t);

// T f(x, y, r) by direct oscillatory quadrature (desk-scale arguments only).
QuadResultC sogge_T(const SoggeParams& sp, double x, double y, double r);

// I(u, alpha, s): the rescaled inner integral over (0, u delta); converges to
// g(alpha, s) as u -> infinity.
Complex sogge_I(const SoggeParams& sp, double u, double alpha, double s);

// J(u, alpha, r) = int_1^{1+eps} I(u, alpha, s) e^{2 pi i s r} ds.
Complex sogge_J(const SoggeParams& sp, double u, double alpha, double r);

// int_1^{1+eps} g(alpha, s) ds.
Complex sogge_g_integral(const SoggeParams& sp, double alpha);

// Windows for the divergence scan, chosen by a pre-scan that maximizes the
// minimum of |int g ds| over the alpha window subject to smallness.
struct SoggeWindows {
  double alpha1 = 0.0, alpha2 = 0.0;
  double r2 = 0.0;
  double g_floor = 0.0;  // min |int g ds| over the window
};

SoggeWindows sogge_prescan(const SoggeParams& sp, double alpha_lo = 0.02, double alpha_hi = 0.12);

struct DivergenceRow {
  double u_max = 0.0;
  double partial_mass = 0.0;  // M(U)
  double min_abs_j = 0.0;     // over the scanned box up to U
};

struct DivergenceScan {
  std::vector<DivergenceRow> rows;
  double min_abs_j = 0.0;      // over the whole box
  double a_witness = 0.0;      // reported lower bound A
  bool masses_increasing = false;
  std::vector<double> decade_increment_ratios;
  int unconverged = 0;
};

// Partial masses M(U) = int_0^{r2} int_{a1}^{a2} int_R^U |J|^{p'} dloglog(u)
// over the pre-scanned box, with R = u_grid.front().
DivergenceScan sogge_divergence_scan(const SoggeParams& sp, const std::vector<double>& u_max_grid,
                                     const SoggeWindows& win, int u_nodes_per_decade = 6,
                                     int alpha_nodes = 6, int r_nodes = 5);

// Same quadrature with |J| replaced by 1; must equal
// r2 (a2 - a1) (loglog U - loglog R) exactly (harness self-test).
double divergence_mass_selftest(const SoggeWindows& win, double u_min, double u_max,
                                int u_nodes_per_decade = 6, int alpha_nodes = 6, int r_nodes = 5);

}  // namespace conelab
