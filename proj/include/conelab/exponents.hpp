#pragma once

#include <cstdint>

namespace conelab {

// Holder-dual bookkeeping for an L^p -> L^q restriction pair.
struct ExponentPair {
  double p = 2.0;
  double q = 2.0;

  double p_prime() const;  // p/(p-1), infinity at p = 1
  double q_prime() const;

  bool on_cone_critical_line() const;            // q = p'/3
  bool on_type_k_critical_line(int k) const;     // q = p'/(k+1)
  bool in_sharp_type_k_range(int k) const;       // q <= p'/(k+1) and p' >= k+2
};

// The restricted weak-type exponents of the dyadic argument:
//   rho = (k-2-p(k-3)) / (k-1-p(k-2)),  tau = (q(k+1)-(k-2))/3,
// with the closing identities recorded as residuals.
struct SubcriticalExponents {
  double rho = 0.0;
  double tau = 0.0;
  double tau_identity_residual = 0.0;     // |tau - rho'/3|
  double alpha_exponent_residual = 0.0;   // |3(tau-1)/(k+1)+1 - q|
  double mass_exponent_residual = 0.0;    // |3(tau/rho-1)/(k+1)+1 - q/p|
};

// Requires 1 < p < (k+2)/(k+1), q = p'/(k+1), k >= 3.
SubcriticalExponents subcritical_exponents(double p, double q, int k);

struct DyadicOptimum {
  std::int64_t j_star = 0;
  double bound = 0.0;       // min_J of the two-term majorant
  double brute_sum = 0.0;   // sum_j min{term1(j), term2(j)} over j in [-60, 60]
  double envelope = 0.0;    // alpha^{-(3(tau-1)/(k+1)+1)} E^{3(tau/rho-1)/(k+1)+1}
};

// Minimizes S(J) = (2^{-J/(3 tau)} alpha^{-1} E^{1/rho})^tau + 2^{J/(k-2)} alpha^{-1} E
// over integer J and reports the brute-force dyadic sum and the closed-form
// envelope for comparison.
DyadicOptimum dyadic_min_optimize(double alpha, double e_measure, int k, double tau, double rho);

}  // namespace conelab
