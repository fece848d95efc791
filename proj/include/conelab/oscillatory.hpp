#pragma once

#include <complex>
#include <vector>

#include "conelab/quadrature.hpp"

namespace conelab {

// g(alpha, s) = int_0^inf e^{2 pi i s (t + c alpha t^k)} t^{-1/q'} dt with
// c < 0, evaluated two independent ways:
//   (a) substitution to the compact phase Phi(w) = w - w^k/k plus an
//       oscillation-adapted tail summed with Wynn epsilon acceleration;
//   (b) original variable with the far tail rotated into the complex plane
//       where the phase is monotone.
// A disagreement beyond `tol` is flagged as unconverged.
struct OscillatoryG {
  Complex value{0.0, 0.0};
  Complex route_a{0.0, 0.0};
  Complex route_b{0.0, 0.0};
  double disagreement = 0.0;
  bool converged = false;
};

OscillatoryG oscillatory_g(double alpha, double s, int k, double q, double c, double tol = 1e-5);

// The three pieces of the compact-phase integral split by a bump with
// beta = 1 on [-eta, eta] around the critical point: near-critical piece and
// the two cut pieces. Pieces sum to g exactly (partition of unity).
struct GPieces {
  Complex near_critical{0.0, 0.0};
  Complex cut_origin{0.0, 0.0};
  Complex cut_infinity{0.0, 0.0};
  double lambda = 0.0;   // |phase scale| 2 pi s a
  double prefactor = 0.0;  // a^{1 - 1/q'}
};

GPieces oscillatory_g_pieces(double alpha, double s, int k, double q, double c, double eta = 0.25);

struct StationaryPhaseRow {
  double alpha = 0.0;
  double s = 0.0;
  Complex g{0.0, 0.0};
  bool converged = false;
};

struct StationaryPhaseFit {
  double fitted_slope = 0.0;
  double oracle_slope = 0.0;   // -(1/(k-1)) (1/2 - 1/q')
  double fit_residual = 0.0;   // max |data - fit| in log coordinates
  bool fit_accepted = false;   // residual <= 15%
  std::vector<StationaryPhaseRow> rows;
};

// Fits log|g| (s^{1/2}-normalized, averaged over the s grid) against
// log(alpha).
StationaryPhaseFit stationary_phase_check(int k, double q, const std::vector<double>& alpha_grid,
                                          const std::vector<double>& s_grid, double c = 0.0);

}  // namespace conelab
