#include "conelab/exponents.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace conelab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double ExponentPair::p_prime() const {
  if (p < 1.0) throw std::invalid_argument("exponent pair: p >= 1 required");
  return p == 1.0 ? kInf : p / (p - 1.0);
}

double ExponentPair::q_prime() const {
  if (q < 1.0) throw std::invalid_argument("exponent pair: q >= 1 required");
  return q == 1.0 ? kInf : q / (q - 1.0);
}

bool ExponentPair::on_cone_critical_line() const {
  return std::abs(q - p_prime() / 3.0) < 1e-12;
}

bool ExponentPair::on_type_k_critical_line(int k) const {
  return std::abs(q - p_prime() / (k + 1.0)) < 1e-12;
}

bool ExponentPair::in_sharp_type_k_range(int k) const {
  return q <= p_prime() / (k + 1.0) + 1e-12 && p_prime() >= k + 2.0 - 1e-12;
}

SubcriticalExponents subcritical_exponents(double p, double q, int k) {
  if (k < 3) throw std::invalid_argument("subcritical_exponents: k >= 3 required");
  if (!(p > 1.0) || !(p < (k + 2.0) / (k + 1.0)))
    throw std::invalid_argument("subcritical_exponents: need 1 < p < (k+2)/(k+1)");
  const double pprime = p / (p - 1.0);
  if (std::abs(q - pprime / (k + 1.0)) > 1e-12)
    throw std::invalid_argument("subcritical_exponents: q must equal p'/(k+1)");
  SubcriticalExponents out;
  out.rho = (k - 2.0 - p * (k - 3.0)) / (k - 1.0 - p * (k - 2.0));
  out.tau = (q * (k + 1.0) - (k - 2.0)) / 3.0;
  const double rho_prime = out.rho / (out.rho - 1.0);
  out.tau_identity_residual = std::abs(out.tau - rho_prime / 3.0);
  out.alpha_exponent_residual = std::abs(3.0 * (out.tau - 1.0) / (k + 1.0) + 1.0 - q);
  out.mass_exponent_residual = std::abs(3.0 * (out.tau / out.rho - 1.0) / (k + 1.0) + 1.0 - q / p);
  return out;
}

DyadicOptimum dyadic_min_optimize(double alpha, double e_measure, int k, double tau, double rho) {
  if (!(alpha > 0.0) || !(e_measure > 0.0))
    throw std::invalid_argument("dyadic_min_optimize: alpha, E > 0 required");
  const auto term1 = [&](double j) {
    return std::pow(std::exp2(-j / (3.0 * tau)) * std::pow(e_measure, 1.0 / rho) / alpha, tau);
  };
  const auto term2 = [&](double j) { return std::exp2(j / (k - 2.0)) * e_measure / alpha; };

  DyadicOptimum out;
  out.bound = kInf;
  for (std::int64_t j = -200; j <= 200; ++j) {
    const double s = term1(static_cast<double>(j)) + term2(static_cast<double>(j));
    if (s < out.bound) {
      out.bound = s;
      out.j_star = j;
    }
  }
  double sum = 0.0;
  for (int j = -60; j <= 60; ++j)
    sum += std::min(term1(static_cast<double>(j)), term2(static_cast<double>(j)));
  out.brute_sum = sum;
  out.envelope = std::pow(alpha, -(3.0 * (tau - 1.0) / (k + 1.0) + 1.0)) *
                 std::pow(e_measure, 3.0 * (tau / rho - 1.0) / (k + 1.0) + 1.0);
  return out;
}

}  // namespace conelab
