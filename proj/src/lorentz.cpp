#include "conelab/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "conelab/quadrature.hpp"

namespace conelab {

void SampledFunction::add(double value, double weight) {
  if (!(value >= 0.0)) throw std::invalid_argument("SampledFunction: values must be >= 0");
  if (!(weight > 0.0) || !std::isfinite(weight))
    throw std::invalid_argument("SampledFunction: weights must be positive and finite");
  values.push_back(value);
  weights.push_back(weight);
}

double SampledFunction::total_measure() const {
  return pairwise_sum(std::span<const double>(weights));
}

double lorentz_norm(const SampledFunction& f, double q, double r) {
  if (q < 1.0) throw std::invalid_argument("lorentz_norm: q >= 1 required");
  if (r < 1.0) throw std::invalid_argument("lorentz_norm: r >= 1 required");
  const size_t n = f.values.size();
  if (n == 0) return 0.0;
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return f.values[a] > f.values[b]; });

  const bool weak = std::isinf(r);
  double t = 0.0;
  double sup = 0.0;
  std::vector<double> terms;
  terms.reserve(n);
  for (size_t idx : order) {
    const double v = f.values[idx];
    const double m = f.weights[idx];
    const double t1 = t + m;
    if (v > 0.0) {
      if (weak) {
        // sup of t^{1/q} f*(t) over the cell sits at its right endpoint
        sup = std::max(sup, std::pow(t1, 1.0 / q) * v);
      } else {
        // int_{t}^{t1} t^{r/q - 1} dt = (q/r) (t1^{r/q} - t^{r/q})
        const double e = r / q;
        terms.push_back(std::pow(v, r) * (std::pow(t1, e) - std::pow(t, e)) / e);
      }
    }
    t = t1;
  }
  if (weak) return sup;
  return std::pow(pairwise_sum(std::span<const double>(terms)), 1.0 / r);
}

}  // namespace conelab
