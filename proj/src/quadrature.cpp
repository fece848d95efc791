#include "conelab/quadrature.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace conelab {

namespace {

GLRule compute_gl_rule(int n) {
  // Newton iteration on Legendre polynomials, nodes seeded by the Chebyshev
  // approximation. Symmetric pairs share the computation.
  GLRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GLRule& gl_rule(int n) {
  if (n < 1) throw std::invalid_argument("gl_rule: need n >= 1");
  static std::mutex mu;
  static std::map<int, GLRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl_rule(n)).first;
  return it->second;
}

namespace {

template <class T>
T pairwise_sum_impl(std::span<const T> v) {
  if (v.size() <= 8) {
    T s{};
    for (const T& x : v) s += x;
    return s;
  }
  const size_t half = v.size() / 2;
  return pairwise_sum_impl(v.subspan(0, half)) + pairwise_sum_impl(v.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_sum_impl(v); }
Complex pairwise_sum(std::span<const Complex> v) { return pairwise_sum_impl(v); }

Complex wynn_epsilon(std::span<const Complex> partial) {
  const int n = static_cast<int>(partial.size());
  if (n == 0) return {0.0, 0.0};
  std::vector<Complex> prev2(n + 1, Complex{0.0, 0.0});
  std::vector<Complex> prev(partial.begin(), partial.end());
  Complex best = partial[n - 1];
  for (int k = 1; k < n; ++k) {
    const int m = n - k;
    std::vector<Complex> cur(m);
    for (int i = 0; i < m; ++i) {
      const Complex d = prev[i + 1] - prev[i];
      cur[i] = (d == Complex{0.0, 0.0}) ? prev2[i + 1] : prev2[i + 1] + 1.0 / d;
    }
    prev2.assign(prev.begin(), prev.begin() + m + 1);
    prev = std::move(cur);
    if (k % 2 == 0 && !prev.empty()) best = prev.back();
  }
  return best;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace conelab
