#pragma once

#include <vector>

namespace conelab {

// Function on a discretized measure space: (value, measure weight) pairs.
struct SampledFunction {
  std::vector<double> values;   // |f| samples, >= 0
  std::vector<double> weights;  // cell measures, > 0

  void add(double value, double weight);
  double total_measure() const;
};

// Lorentz norm under the rearrangement convention
//   ||f||_{q,r} = ( int_0^inf (t^{1/q} f*(t))^r dt/t )^{1/r},
// with f* the decreasing rearrangement of the samples; r = inf gives
// sup t^{1/q} f*(t). No (q/r) prefactor normalization.
double lorentz_norm(const SampledFunction& f, double q, double r);

}  // namespace conelab
